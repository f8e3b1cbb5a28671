"""Pure-Python reduction kernel over flat codes (see ``lambdamu.codec``).

Same interface as the compiled ``_ckernel``; used when the extension is not
built or when ``LAMBDAMU_PURE=1``.
"""
from __future__ import annotations

from array import array

BETA = 1
MU = 2
MU_PRIME = 4

_LAM, _MU, _APP, _BVAR, _FVAR, _BNAMED, _FNAMED = range(7)


def _words(code: bytes) -> list[int]:
    a = array("i")
    a.frombytes(code)
    return a.tolist()


def _ends(c: list[int]) -> list[int]:
    n = len(c)
    ends = [0] * n
    for i in range(n - 1, -1, -1):
        tag = c[i] & 7
        if tag == _APP:
            ends[i] = ends[ends[i + 1]]
        elif tag == _BVAR or tag == _FVAR:
            ends[i] = i + 1
        else:
            ends[i] = ends[i + 1]
    return ends


def _shift(c: list[int], ends: list[int], start: int, stop: int, dl: int, dm: int) -> list[int]:
    """Copy of ``c[start:stop]`` with its dangling indices raised by ``dl``/``dm``."""
    if dl == 0 and dm == 0:
        return c[start:stop]
    out = []
    ls: list[int] = []
    ms: list[int] = []
    for i in range(start, stop):
        while ls and ls[-1] <= i:
            ls.pop()
        while ms and ms[-1] <= i:
            ms.pop()
        w = c[i]
        tag = w & 7
        if tag == _BVAR:
            k = w >> 3
            if k >= len(ls):
                w = (k + dl) << 3 | _BVAR
        elif tag == _BNAMED:
            k = w >> 3
            if k >= len(ms):
                w = (k + dm) << 3 | _BNAMED
        elif tag == _LAM:
            ls.append(ends[i])
        elif tag == _MU:
            ms.append(ends[i])
        out.append(w)
    return out


def _beta(c: list[int], ends: list[int], p: int) -> list[int]:
    b0 = p + 2
    b1 = ends[p + 1]
    a0, a1 = b1, ends[p]
    out: list[int] = []
    cache: dict[tuple[int, int], list[int]] = {}
    ls: list[int] = []
    ms: list[int] = []
    for i in range(b0, b1):
        while ls and ls[-1] <= i:
            ls.pop()
        while ms and ms[-1] <= i:
            ms.pop()
        w = c[i]
        tag = w & 7
        if tag == _BVAR:
            k = w >> 3
            dl = len(ls)
            if k == dl:
                key = (dl, len(ms))
                seg = cache.get(key)
                if seg is None:
                    seg = cache[key] = _shift(c, ends, a0, a1, dl, len(ms))
                out.extend(seg)
                continue
            if k > dl:
                w = (k - 1) << 3 | _BVAR
        elif tag == _LAM:
            ls.append(ends[i])
        elif tag == _MU:
            ms.append(ends[i])
        out.append(w)
    return out


def _mu(c: list[int], ends: list[int], p: int) -> list[int]:
    b0 = p + 2
    b1 = ends[p + 1]
    a0, a1 = b1, ends[p]
    out = [_MU]
    cache: dict[tuple[int, int], list[int]] = {}
    ls: list[int] = []
    ms: list[int] = []
    pending: list[tuple[int, list[int]]] = []
    for i in range(b0, b1):
        while pending and pending[-1][0] <= i:
            out.extend(pending.pop()[1])
        while ls and ls[-1] <= i:
            ls.pop()
        while ms and ms[-1] <= i:
            ms.pop()
        w = c[i]
        tag = w & 7
        if tag == _BNAMED and (w >> 3) == len(ms):
            key = (len(ls), len(ms))
            seg = cache.get(key)
            if seg is None:
                seg = cache[key] = _shift(c, ends, a0, a1, len(ls), len(ms) + 1)
            out.append(w)
            out.append(_APP)
            pending.append((ends[i], seg))
            continue
        if tag == _LAM:
            ls.append(ends[i])
        elif tag == _MU:
            ms.append(ends[i])
        out.append(w)
    while pending:
        out.extend(pending.pop()[1])
    return out


def _mu_prime(c: list[int], ends: list[int], p: int) -> list[int]:
    f0 = p + 1
    f1 = ends[f0]
    b0, b1 = f1 + 1, ends[p]
    out = [_MU]
    cache: dict[tuple[int, int], list[int]] = {}
    ls: list[int] = []
    ms: list[int] = []
    for i in range(b0, b1):
        while ls and ls[-1] <= i:
            ls.pop()
        while ms and ms[-1] <= i:
            ms.pop()
        w = c[i]
        tag = w & 7
        if tag == _BNAMED and (w >> 3) == len(ms):
            key = (len(ls), len(ms))
            seg = cache.get(key)
            if seg is None:
                seg = cache[key] = _shift(c, ends, f0, f1, len(ls), len(ms) + 1)
            out.append(w)
            out.append(_APP)
            out.extend(seg)
            continue
        if tag == _LAM:
            ls.append(ends[i])
        elif tag == _MU:
            ms.append(ends[i])
        out.append(w)
    return out


def _redexes(c: list[int], ends: list[int], mask: int) -> list[tuple[int, int]]:
    out = []
    for p, w in enumerate(c):
        if w & 7 != _APP:
            continue
        ft = c[p + 1] & 7
        if ft == _LAM and mask & BETA:
            out.append((p, BETA))
        elif ft == _MU and mask & MU:
            out.append((p, MU))
        if mask & MU_PRIME and c[ends[p + 1]] & 7 == _MU:
            out.append((p, MU_PRIME))
    return out


def _contract(c: list[int], ends: list[int], p: int, rule: int) -> list[int]:
    if rule == BETA:
        seg = _beta(c, ends, p)
    elif rule == MU:
        seg = _mu(c, ends, p)
    else:
        seg = _mu_prime(c, ends, p)
    return c[:p] + seg + c[ends[p]:]


def redexes(code: bytes, mask: int) -> list[tuple[int, int]]:
    """``(offset, rule)`` for every redex enabled by ``mask``, in pre-order."""
    c = _words(code)
    return _redexes(c, _ends(c), mask)


def contract(code: bytes, offset: int, rule: int) -> bytes:
    """Contract the redex ``rule`` at word ``offset``; ``ValueError`` if absent."""
    c = _words(code)
    ends = _ends(c)
    if not (0 <= offset < len(c)) or c[offset] & 7 != _APP:
        raise ValueError("no application at offset")
    f = c[offset + 1] & 7
    a = c[ends[offset + 1]] & 7
    if (rule == BETA and f != _LAM) or (rule == MU and f != _MU) or (rule == MU_PRIME and a != _MU):
        raise ValueError("no such redex at offset")
    if rule not in (BETA, MU, MU_PRIME):
        raise ValueError("unknown rule")
    return array("i", _contract(c, ends, offset, rule)).tobytes()


def successors(code: bytes, mask: int) -> list[tuple[int, int, bytes]]:
    """``(offset, rule, reduct)`` for every one-step reduct, in redex order."""
    c = _words(code)
    ends = _ends(c)
    return [
        (p, r, array("i", _contract(c, ends, p, r)).tobytes())
        for p, r in _redexes(c, ends, mask)
    ]
