"""Terms of the symmetric lambda-mu calculus.

Five constructors: ``Var`` (lambda-variable), ``Lam``, ``App``, ``Mu`` and
``Named`` (the named term ``(alpha M)``, written ``[a] M`` in concrete
syntax).  lambda-names and mu-names live in separate namespaces: the sort of a
name is fixed by the constructor that mentions it.

Positions and addresses
-----------------------
A *position* is a tuple over ``{"l", "r", "b"}`` locating any node: ``l``/``r``
are the function/argument children of an application, ``b`` is the body of a
``Lam``, ``Mu`` or ``Named`` node.  An *address* is a position that only uses
``l`` and ``r``, i.e. it crosses applications only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class _Printable:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import show

        return show(self)


@dataclass(frozen=True, slots=True)
class Var(_Printable):
    name: str


@dataclass(frozen=True, slots=True)
class Lam(_Printable):
    binder: str
    body: Term


@dataclass(frozen=True, slots=True)
class App(_Printable):
    fun: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Mu(_Printable):
    binder: str
    body: Term


@dataclass(frozen=True, slots=True)
class Named(_Printable):
    muvar: str
    body: Term


Term = Union[Var, Lam, App, Mu, Named]
Position = tuple[str, ...]
Address = tuple[str, ...]


class InvalidAddress(ValueError):
    """Raised when a position or address does not exist in a term."""


def apps(head: Term, *args: Term) -> Term:
    """``(head a1 ... an)`` with left-associated applications."""
    for a in args:
        head = App(head, a)
    return head


def spine(m: Term) -> tuple[Term, list[Term]]:
    """Split ``(h a1 ... an)`` into ``h`` and ``[a1, ..., an]``."""
    args: list[Term] = []
    while isinstance(m, App):
        args.append(m.arg)
        m = m.fun
    args.reverse()
    return m, args


def cxty(m: Term) -> int:
    """Number of symbols: every constructor node and variable occurrence counts one."""
    n = 0
    stack = [m]
    while stack:
        t = stack.pop()
        n += 1
        if isinstance(t, App):
            stack.append(t.fun)
            stack.append(t.arg)
        elif not isinstance(t, Var):
            stack.append(t.body)
    return n


def free_vars(m: Term) -> tuple[frozenset[str], frozenset[str]]:
    """Free lambda-names and free mu-names of ``m``."""
    lam: set[str] = set()
    mu: set[str] = set()

    def go(t: Term, bl: frozenset[str], bm: frozenset[str]) -> None:
        while True:
            if isinstance(t, Var):
                if t.name not in bl:
                    lam.add(t.name)
                return
            if isinstance(t, App):
                go(t.fun, bl, bm)
                t = t.arg
            elif isinstance(t, Lam):
                bl = bl | {t.binder}
                t = t.body
            elif isinstance(t, Mu):
                bm = bm | {t.binder}
                t = t.body
            else:
                if t.muvar not in bm:
                    mu.add(t.muvar)
                t = t.body

    go(m, frozenset(), frozenset())
    return frozenset(lam), frozenset(mu)


def all_names(m: Term) -> tuple[set[str], set[str]]:
    """Every lambda-name and mu-name mentioned anywhere in ``m``, bound or free."""
    lam: set[str] = set()
    mu: set[str] = set()
    for t in subterms(m):
        if isinstance(t, Var):
            lam.add(t.name)
        elif isinstance(t, Lam):
            lam.add(t.binder)
        elif isinstance(t, Mu):
            mu.add(t.binder)
        elif isinstance(t, Named):
            mu.add(t.muvar)
    return lam, mu


_SUFFIX = re.compile(r"^(.*?)(\d+)$")


def fresh(base: str, avoid: set[str] | frozenset[str]) -> str:
    """``base`` if unused, else its stem plus the smallest numeric suffix not in ``avoid``."""
    if base not in avoid:
        return base
    match = _SUFFIX.match(base)
    stem = match.group(1) if match and match.group(1) else base
    k = 1
    while f"{stem}{k}" in avoid:
        k += 1
    return f"{stem}{k}"


def alpha_eq(m: Term, n: Term) -> bool:
    """Equality up to consistent renaming of bound lambda- and mu-names."""
    from .codec import encode

    return encode(m) == encode(n)


def subterms(m: Term) -> list[Term]:
    """All sub-term occurrences in pre-order (node, then left/body, then right)."""
    out: list[Term] = []
    stack = [m]
    while stack:
        t = stack.pop()
        out.append(t)
        if isinstance(t, App):
            stack.append(t.arg)
            stack.append(t.fun)
        elif not isinstance(t, Var):
            stack.append(t.body)
    return out


def positions(m: Term) -> Iterator[tuple[Position, Term]]:
    """Pre-order enumeration of ``(position, sub-term)`` pairs."""
    stack: list[tuple[Position, Term]] = [((), m)]
    while stack:
        p, t = stack.pop()
        yield p, t
        if isinstance(t, App):
            stack.append((p + ("r",), t.arg))
            stack.append((p + ("l",), t.fun))
        elif not isinstance(t, Var):
            stack.append((p + ("b",), t.body))


def subterm_at(m: Term, a: Address) -> Term | None:
    """The sub-term at address ``a`` or ``None`` when ``a`` leaves the application spine."""
    for d in a:
        if not isinstance(m, App):
            return None
        if d == "l":
            m = m.fun
        elif d == "r":
            m = m.arg
        else:
            return None
    return m


def subterm_at_position(m: Term, p: Position) -> Term:
    for d in p:
        if isinstance(m, App) and d in "lr":
            m = m.fun if d == "l" else m.arg
        elif d == "b" and isinstance(m, (Lam, Mu, Named)):
            m = m.body
        else:
            raise InvalidAddress(f"position {format_position(p)} not in term")
    return m


def replace_at_position(m: Term, p: Position, n: Term) -> Term:
    if not p:
        return n
    d, rest = p[0], p[1:]
    if isinstance(m, App) and d == "l":
        return App(replace_at_position(m.fun, rest, n), m.arg)
    if isinstance(m, App) and d == "r":
        return App(m.fun, replace_at_position(m.arg, rest, n))
    if d == "b" and isinstance(m, Lam):
        return Lam(m.binder, replace_at_position(m.body, rest, n))
    if d == "b" and isinstance(m, Mu):
        return Mu(m.binder, replace_at_position(m.body, rest, n))
    if d == "b" and isinstance(m, Named):
        return Named(m.muvar, replace_at_position(m.body, rest, n))
    raise InvalidAddress(f"position {format_position(p)} not in term")


def replace_at(m: Term, a: Address, n: Term) -> Term:
    """``m`` with the sub-term at address ``a`` replaced by ``n`` (no renaming)."""
    if any(d not in ("l", "r") for d in a) or subterm_at(m, a) is None:
        raise InvalidAddress(f"address {format_position(a)} not valid")
    return replace_at_position(m, a, n)


def addresses(m: Term) -> list[Address]:
    """Every valid address of ``m``, shortest first along each branch."""
    out: list[Address] = []
    stack: list[tuple[Address, Term]] = [((), m)]
    while stack:
        a, t = stack.pop()
        out.append(a)
        if isinstance(t, App):
            stack.append((a + ("r",), t.arg))
            stack.append((a + ("l",), t.fun))
    return out


def format_position(p: Position) -> str:
    return "".join(p) if p else "root"


def parse_position(s: str) -> Position:
    s = s.strip()
    if s in ("root", ""):
        return ()
    if any(c not in "lrb" for c in s):
        raise ValueError(f"bad position {s!r}")
    return tuple(s)
