"""Capture-avoiding substitutions on named terms.

Every substitution form is an action attached to one variable inside a
:class:`SimulSubst`, and :func:`apply_simul` performs them all in one pass:

* ``Beta(N)`` on a lambda-name ``x``:     ``x``       becomes ``N``
* ``MuRight(N)`` on a mu-name ``a``:     ``(a U)``   becomes ``(a (U N))``
* ``MuLeft(M)``:                         ``(a U)``   becomes ``(a (M U))``
* ``MuAddr(C, h)``:                      ``(a U)``   becomes ``(a C<h = U>)``
* ``MuIndexed((M1..Mn), i, x)``:         ``(a U)``   becomes ``(a (x M1 .. U .. Mn))``

``U`` is rewritten before it is wrapped, images are never re-scanned, and the
mu-name itself stays free in the result.  Binders of the input that would
capture a free name of an image are renamed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .terms import (
    Address,
    App,
    InvalidAddress,
    Lam,
    Mu,
    Named,
    Term,
    Var,
    all_names,
    apps,
    free_vars,
    fresh,
    replace_at,
    subterm_at,
)


@dataclass(frozen=True)
class Beta:
    replacement: Term

    def free(self) -> tuple[frozenset[str], frozenset[str]]:
        return free_vars(self.replacement)


@dataclass(frozen=True)
class MuRight:
    argument: Term

    def named(self, alpha: str, u: Term) -> Term:
        return Named(alpha, App(u, self.argument))

    def free(self) -> tuple[frozenset[str], frozenset[str]]:
        return free_vars(self.argument)


@dataclass(frozen=True)
class MuLeft:
    function: Term

    def named(self, alpha: str, u: Term) -> Term:
        return Named(alpha, App(self.function, u))

    def free(self) -> tuple[frozenset[str], frozenset[str]]:
        return free_vars(self.function)


_HOLE = "\x00hole"


@dataclass(frozen=True)
class MuAddr:
    context: Term
    hole: Address

    def __post_init__(self) -> None:
        if any(d not in ("l", "r") for d in self.hole) or subterm_at(self.context, self.hole) is None:
            raise InvalidAddress(f"hole {''.join(self.hole) or 'root'} is not an address of the context")

    def named(self, alpha: str, u: Term) -> Term:
        return Named(alpha, replace_at(self.context, self.hole, u))

    def free(self) -> tuple[frozenset[str], frozenset[str]]:
        fl, fm = free_vars(replace_at(self.context, self.hole, Var(_HOLE)))
        return fl - {_HOLE}, fm


@dataclass(frozen=True)
class MuIndexed:
    slots: tuple[Term, ...]
    index: int
    head: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", tuple(self.slots))
        if not 1 <= self.index <= len(self.slots):
            raise IndexError(f"slot index {self.index} outside 1..{len(self.slots)}")

    def named(self, alpha: str, u: Term) -> Term:
        s = self.slots
        i = self.index
        return Named(alpha, apps(Var(self.head), *s[: i - 1], u, *s[i:]))

    def free(self) -> tuple[frozenset[str], frozenset[str]]:
        fl: set[str] = {self.head}
        fm: set[str] = set()
        for t in self.slots:
            a, b = free_vars(t)
            fl |= a
            fm |= b
        return frozenset(fl), frozenset(fm)

    def as_addr(self) -> MuAddr:
        """The equivalent address substitution on ``(head M1 ... Mn)``."""
        n = len(self.slots)
        return MuAddr(apps(Var(self.head), *self.slots), ("l",) * (n - self.index) + ("r",))


@dataclass(frozen=True)
class _Rename:
    new: str

    def named(self, alpha: str, u: Term) -> Term:
        return Named(self.new, u)


MuAction = Union[MuRight, MuLeft, MuAddr, MuIndexed]
SubstAction = Union[Beta, MuRight, MuLeft, MuAddr, MuIndexed]


@dataclass(frozen=True)
class SimulSubst:
    """A simultaneous substitution: lambda-names to ``Beta``, mu-names to mu-actions."""

    lam: Mapping[str, Beta] = field(default_factory=dict)
    mu: Mapping[str, MuAction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for x, act in self.lam.items():
            if not isinstance(act, Beta):
                raise TypeError(f"lambda-name {x} must map to Beta, got {type(act).__name__}")
        for a, act in self.mu.items():
            if not isinstance(act, (MuRight, MuLeft, MuAddr, MuIndexed)):
                raise TypeError(f"mu-name {a} must map to a mu-action, got {type(act).__name__}")

    @classmethod
    def of(cls, **bindings: SubstAction) -> SimulSubst:
        lam = {k: v for k, v in bindings.items() if isinstance(v, Beta)}
        mu = {k: v for k, v in bindings.items() if not isinstance(v, Beta)}
        return cls(lam, mu)

    def bindings(self) -> list[tuple[str, str, SubstAction]]:
        """``(sort, name, action)`` sorted by sort then name."""
        out: list[tuple[str, str, SubstAction]] = [("l", k, v) for k, v in sorted(self.lam.items())]
        out += [("m", k, v) for k, v in sorted(self.mu.items())]
        return out

    def images(self) -> list[Term]:
        out: list[Term] = [b.replacement for b in self.lam.values()]
        for act in self.mu.values():
            if isinstance(act, MuRight):
                out.append(act.argument)
            elif isinstance(act, MuLeft):
                out.append(act.function)
            elif isinstance(act, MuAddr):
                out.append(act.context)
            else:
                out.extend(act.slots)
        return out

    def classify(self, mu_types: Mapping[str, object] | None = None) -> set[str]:
        """Families this substitution belongs to.

        ``sigma`` (mixed l/r), ``sigma_l``, ``sigma_r``, ``sigma_A`` (address
        substitutions whose mu-names share one declared type in ``mu_types``),
        ``sigma_x`` (indexed substitutions over one head) and ``beta``.
        """
        acts = list(self.mu.values())
        if not acts:
            return {"beta"} if self.lam else {"beta", "sigma", "sigma_l", "sigma_r", "sigma_A", "sigma_x"}
        out: set[str] = set()
        if self.lam:
            return out
        if all(isinstance(a, (MuLeft, MuRight)) for a in acts):
            out.add("sigma")
            if all(isinstance(a, MuLeft) for a in acts):
                out.add("sigma_l")
            if all(isinstance(a, MuRight) for a in acts):
                out.add("sigma_r")
        if all(isinstance(a, MuAddr) for a in acts) and mu_types is not None:
            declared = {repr(mu_types.get(name)) for name in self.mu}
            if len(declared) == 1 and all(name in mu_types for name in self.mu):
                out.add("sigma_A")
        if all(isinstance(a, MuIndexed) for a in acts):
            heads = {(a.head, len(a.slots)) for a in acts}  # type: ignore[union-attr]
            if len(heads) == 1:
                out.add("sigma_x")
        return out


def apply_simul(m: Term, sigma: SimulSubst) -> Term:
    """Apply every binding of ``sigma`` to ``m`` in a single pass."""
    if not sigma.lam and not sigma.mu:
        return m
    image_l: set[str] = set()
    image_m: set[str] = set()
    for act in list(sigma.lam.values()) + list(sigma.mu.values()):
        a, b = act.free()
        image_l |= a
        image_m |= b
    names_l, names_m = all_names(m)
    avoid_l = names_l | image_l | set(sigma.lam)
    avoid_m = names_m | image_m | set(sigma.mu)

    def go(t: Term, lam_map: dict[str, Term], mu_map: dict[str, object],
           cap_l: set[str], cap_m: set[str]) -> Term:
        if isinstance(t, Var):
            return lam_map.get(t.name, t)
        if isinstance(t, App):
            return App(go(t.fun, lam_map, mu_map, cap_l, cap_m), go(t.arg, lam_map, mu_map, cap_l, cap_m))
        if isinstance(t, Lam):
            x = t.binder
            inner = {k: v for k, v in lam_map.items() if k != x} if x in lam_map else lam_map
            if not inner and not mu_map:
                return t
            if x in cap_l:
                x2 = fresh(x, avoid_l)
                avoid_l.add(x2)
                inner = dict(inner)
                inner[x] = Var(x2)
                return Lam(x2, go(t.body, inner, mu_map, cap_l | {x2}, cap_m))
            return Lam(x, go(t.body, inner, mu_map, cap_l, cap_m))
        if isinstance(t, Mu):
            a = t.binder
            inner_m = {k: v for k, v in mu_map.items() if k != a} if a in mu_map else mu_map
            if not lam_map and not inner_m:
                return t
            if a in cap_m:
                a2 = fresh(a, avoid_m)
                avoid_m.add(a2)
                inner_m = dict(inner_m)
                inner_m[a] = _Rename(a2)
                return Mu(a2, go(t.body, lam_map, inner_m, cap_l, cap_m | {a2}))
            return Mu(a, go(t.body, lam_map, inner_m, cap_l, cap_m))
        body = go(t.body, lam_map, mu_map, cap_l, cap_m)
        act = mu_map.get(t.muvar)
        if act is None:
            return Named(t.muvar, body)
        return act.named(t.muvar, body)  # type: ignore[attr-defined]

    return go(m, {k: v.replacement for k, v in sigma.lam.items()}, dict(sigma.mu), set(image_l), set(image_m))


def rename_mu(m: Term, old: str, new: str) -> Term:
    """Rename free occurrences of the mu-name ``old``; ``new`` must not occur in ``m``."""
    if isinstance(m, Var):
        return m
    if isinstance(m, App):
        return App(rename_mu(m.fun, old, new), rename_mu(m.arg, old, new))
    if isinstance(m, Lam):
        return Lam(m.binder, rename_mu(m.body, old, new))
    if isinstance(m, Mu):
        return m if m.binder == old else Mu(m.binder, rename_mu(m.body, old, new))
    return Named(new if m.muvar == old else m.muvar, rename_mu(m.body, old, new))


def mu_apart(m: Mu, other: Term) -> Mu:
    """An alpha-variant of ``m`` whose binder is not free in ``other``."""
    taken = free_vars(other)[1]
    if m.binder not in taken:
        return m
    b = fresh(m.binder, taken | all_names(m.body)[1])
    return Mu(b, rename_mu(m.body, m.binder, b))


def subst_beta(m: Term, x: str, n: Term) -> Term:
    """``m[x := n]``."""
    return apply_simul(m, SimulSubst({x: Beta(n)}, {}))


def subst_mu_right(m: Term, alpha: str, n: Term) -> Term:
    """``m[alpha =_r n]``: every ``(alpha U)`` becomes ``(alpha (U n))``."""
    return apply_simul(m, SimulSubst({}, {alpha: MuRight(n)}))


def subst_mu_left(m: Term, alpha: str, n: Term) -> Term:
    """``m[alpha =_l n]``: every ``(alpha U)`` becomes ``(alpha (n U))``."""
    return apply_simul(m, SimulSubst({}, {alpha: MuLeft(n)}))


def subst_mu_addr(m: Term, alpha: str, context: Term, hole: Address) -> Term:
    """``m[alpha =_hole context]``; raises ``InvalidAddress`` for a bad hole."""
    return apply_simul(m, SimulSubst({}, {alpha: MuAddr(context, tuple(hole))}))


def subst_mu_indexed(m: Term, alpha: str, head: str, slots: list[Term] | tuple[Term, ...], i: int) -> Term:
    """``m[alpha =_i (slots)]`` with head variable ``head``; ``IndexError`` if ``i`` is out of range."""
    return apply_simul(m, SimulSubst({}, {alpha: MuIndexed(tuple(slots), i, head)}))
