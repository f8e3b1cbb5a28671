"""Flat de Bruijn encoding of terms.

A *code* is a ``bytes`` object holding native ``int32`` words, one word per
symbol of the term in pre-order, so ``len(code) // 4 == cxty(term)``.  Each
word is ``payload << 3 | tag``:

======  ========  ===========================================
tag     node      payload
======  ========  ===========================================
0       LAM       unused
1       MU        unused
2       APP       unused
3       BVAR      lambda de Bruijn index
4       FVAR      interned free lambda-name
5       BNAMED    mu de Bruijn index (node has one child)
6       FNAMED    interned free mu-name (node has one child)
======  ========  ===========================================

lambda- and mu-binders are counted separately.  Two terms are alpha-equivalent
iff their codes are equal, which makes codes the canonical representatives of
reduction-graph nodes.  Free-name ids come from a process-wide interner, so
codes are only meaningful inside one process.
"""
from __future__ import annotations

import struct
import threading
from array import array

from .terms import App, Lam, Mu, Named, Term, Var, fresh

LAM, MU, APP, BVAR, FVAR, BNAMED, FNAMED = range(7)
TAG_BITS = 3
TAG_MASK = 7
ARITY = (1, 1, 2, 0, 0, 1, 1)

_lock = threading.Lock()
_ids: dict[tuple[str, str], int] = {}
_names: list[tuple[str, str]] = []


def intern(sort: str, name: str) -> int:
    """Id of a free name; ``sort`` is ``"l"`` or ``"m"``."""
    key = (sort, name)
    i = _ids.get(key)
    if i is None:
        with _lock:
            i = _ids.get(key)
            if i is None:
                i = len(_names)
                _names.append(key)
                _ids[key] = i
    return i


def name_of(i: int) -> str:
    return _names[i][1]


def word(tag: int, payload: int = 0) -> int:
    return payload << TAG_BITS | tag


def to_words(code: bytes) -> list[int]:
    a = array("i")
    a.frombytes(code)
    return a.tolist()


def from_words(words: list[int]) -> bytes:
    return array("i", words).tobytes()


def size(code: bytes) -> int:
    return len(code) >> 2


def root_tag(code: bytes) -> int:
    return struct.unpack_from("i", code)[0] & TAG_MASK


def encode(m: Term) -> bytes:
    return from_words(encode_words(m))


def encode_words(m: Term) -> list[int]:
    out: list[int] = []
    # (term, lambda scope, mu scope); scopes are tuples innermost-last
    stack: list[tuple[Term, tuple[str, ...], tuple[str, ...]]] = [(m, (), ())]
    while stack:
        t, ls, ms = stack.pop()
        if isinstance(t, Var):
            out.append(_ref(t.name, ls, BVAR, FVAR, "l"))
        elif isinstance(t, App):
            out.append(APP)
            stack.append((t.arg, ls, ms))
            stack.append((t.fun, ls, ms))
        elif isinstance(t, Lam):
            out.append(LAM)
            stack.append((t.body, ls + (t.binder,), ms))
        elif isinstance(t, Mu):
            out.append(MU)
            stack.append((t.body, ls, ms + (t.binder,)))
        else:
            out.append(_ref(t.muvar, ms, BNAMED, FNAMED, "m"))
            stack.append((t.body, ls, ms))
    return out


def _ref(name: str, scope: tuple[str, ...], btag: int, ftag: int, sort: str) -> int:
    for k in range(len(scope) - 1, -1, -1):
        if scope[k] == name:
            return word(btag, len(scope) - 1 - k)
    return word(ftag, intern(sort, name))


def subtree_ends(words: list[int]) -> list[int]:
    """``ends[i]`` is one past the last word of the sub-tree rooted at ``i``."""
    n = len(words)
    ends = [0] * n
    for i in range(n - 1, -1, -1):
        tag = words[i] & TAG_MASK
        if tag == APP:
            ends[i] = ends[ends[i + 1]]
        elif tag == BVAR or tag == FVAR:
            ends[i] = i + 1
        else:
            ends[i] = ends[i + 1]
    return ends


def free_names(words: list[int]) -> tuple[set[str], set[str]]:
    lam: set[str] = set()
    mu: set[str] = set()
    for w in words:
        tag = w & TAG_MASK
        if tag == FVAR:
            lam.add(name_of(w >> TAG_BITS))
        elif tag == FNAMED:
            mu.add(name_of(w >> TAG_BITS))
    return lam, mu


def decode(code: bytes | list[int], lam_base: str = "x", mu_base: str = "a") -> Term:
    """Canonical named term for a code.

    Binders are named by depth (``x``, ``x1``, ... and ``a``, ``a1``, ...),
    skipping free names, so no binder shadows another.  Dangling bound indices
    (a code for an open sub-term) decode to reserved names ``_l<k>``/``_m<k>``.
    """
    words = code if isinstance(code, list) else to_words(code)
    n = len(words)
    if n == 0:
        raise ValueError("empty code")
    free_l, free_m = free_names(words)
    lam_names: list[str] = []
    mu_names: list[str] = []

    def binder_name(names: list[str], depth: int, base: str, avoid: set[str]) -> str:
        while len(names) <= depth:
            taken = avoid | set(names)
            names.append(fresh(base, taken))
        return names[depth]

    ends = subtree_ends(words)
    # depth of each node, computed left to right
    dl = [0] * n
    dm = [0] * n
    lam_stack: list[int] = []
    mu_stack: list[int] = []
    for i in range(n):
        while lam_stack and lam_stack[-1] <= i:
            lam_stack.pop()
        while mu_stack and mu_stack[-1] <= i:
            mu_stack.pop()
        dl[i] = len(lam_stack)
        dm[i] = len(mu_stack)
        tag = words[i] & TAG_MASK
        if tag == LAM:
            lam_stack.append(ends[i])
        elif tag == MU:
            mu_stack.append(ends[i])

    vals: list[Term] = []
    for i in range(n - 1, -1, -1):
        w = words[i]
        tag = w & TAG_MASK
        p = w >> TAG_BITS
        if tag == BVAR:
            k = dl[i] - 1 - p
            vals.append(Var(binder_name(lam_names, k, lam_base, free_l) if k >= 0 else f"_l{-k - 1}"))
        elif tag == FVAR:
            vals.append(Var(name_of(p)))
        elif tag == APP:
            f = vals.pop()
            a = vals.pop()
            vals.append(App(f, a))
        elif tag == LAM:
            vals.append(Lam(binder_name(lam_names, dl[i], lam_base, free_l), vals.pop()))
        elif tag == MU:
            vals.append(Mu(binder_name(mu_names, dm[i], mu_base, free_m), vals.pop()))
        elif tag == BNAMED:
            k = dm[i] - 1 - p
            nm = binder_name(mu_names, k, mu_base, free_m) if k >= 0 else f"_m{-k - 1}"
            vals.append(Named(nm, vals.pop()))
        else:
            vals.append(Named(name_of(p), vals.pop()))
    (t,) = vals
    return t
