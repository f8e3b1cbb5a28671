"""A second, deliberately plain interpreter used to cross-check the engine.

Everything here is written from the rules directly: its own free-name
computation, its own substitutions (every binder crossed is renamed to a
globally fresh name), its own alpha-canonical form.  Nothing is shared with
``subst``, ``codec`` or the compiled kernel.
"""
from __future__ import annotations

import itertools
from collections import Counter

from .terms import App, Lam, Mu, Named, Term, Var

_counter = itertools.count()


def _fresh(stem: str) -> str:
    return f"{stem}#{next(_counter)}"


def rename_lam(t: Term, old: str, new: str) -> Term:
    return subst_var(t, old, Var(new))


def rename_mu(t: Term, old: str, new: str) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        return App(rename_mu(t.fun, old, new), rename_mu(t.arg, old, new))
    if isinstance(t, Lam):
        return Lam(t.binder, rename_mu(t.body, old, new))
    if isinstance(t, Mu):
        if t.binder == old:
            return t
        return Mu(t.binder, rename_mu(t.body, old, new))
    return Named(new if t.muvar == old else t.muvar, rename_mu(t.body, old, new))


def subst_var(t: Term, x: str, n: Term) -> Term:
    """``t[x := n]``; every binder on the way is renamed apart first."""
    if isinstance(t, Var):
        return n if t.name == x else t
    if isinstance(t, App):
        return App(subst_var(t.fun, x, n), subst_var(t.arg, x, n))
    if isinstance(t, Lam):
        if t.binder == x:
            return t
        y = _fresh(t.binder.split("#")[0])
        return Lam(y, subst_var(rename_lam(t.body, t.binder, y), x, n))
    if isinstance(t, Mu):
        b = _fresh(t.binder.split("#")[0])
        return Mu(b, subst_var(rename_mu(t.body, t.binder, b), x, n))
    return Named(t.muvar, subst_var(t.body, x, n))


def subst_named(t: Term, alpha: str, wrap) -> Term:  # type: ignore[no-untyped-def]
    """Replace every free ``(alpha U)`` by ``(alpha wrap(U'))`` where ``U'`` is ``U`` already rewritten."""
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        return App(subst_named(t.fun, alpha, wrap), subst_named(t.arg, alpha, wrap))
    if isinstance(t, Lam):
        y = _fresh(t.binder.split("#")[0])
        return Lam(y, subst_named(rename_lam(t.body, t.binder, y), alpha, wrap))
    if isinstance(t, Mu):
        if t.binder == alpha:
            return t
        b = _fresh(t.binder.split("#")[0])
        return Mu(b, subst_named(rename_mu(t.body, t.binder, b), alpha, wrap))
    body = subst_named(t.body, alpha, wrap)
    if t.muvar == alpha:
        return Named(alpha, wrap(body))
    return Named(t.muvar, body)


def naive_successors(m: Term, rules) -> list[Term]:  # type: ignore[no-untyped-def]
    """Every one-step reduct of ``m``, one per redex (a multiset)."""
    names = {getattr(r, "label", str(r)) for r in getattr(rules, "rules", rules)}
    beta, mu, mu2 = "beta" in names, "mu" in names, "mu'" in names
    return _succ(m, beta, mu, mu2)


def _succ(t: Term, beta: bool, mu: bool, mu2: bool) -> list[Term]:
    out: list[Term] = []
    if isinstance(t, App):
        f, a = t.fun, t.arg
        if beta and isinstance(f, Lam):
            out.append(subst_var(f.body, f.binder, a))
        if mu and isinstance(f, Mu):
            # keep the binder apart from the free names of the argument
            b = _fresh(f.binder.split("#")[0])
            body = rename_mu(f.body, f.binder, b)
            out.append(Mu(b, subst_named(body, b, lambda u, a=a: App(u, a))))
        if mu2 and isinstance(a, Mu):
            b = _fresh(a.binder.split("#")[0])
            body = rename_mu(a.body, a.binder, b)
            out.append(Mu(b, subst_named(body, b, lambda u, f=f: App(f, u))))
        out += [App(g, a) for g in _succ(f, beta, mu, mu2)]
        out += [App(f, b) for b in _succ(a, beta, mu, mu2)]
    elif isinstance(t, Lam):
        out += [Lam(t.binder, b) for b in _succ(t.body, beta, mu, mu2)]
    elif isinstance(t, Mu):
        out += [Mu(t.binder, b) for b in _succ(t.body, beta, mu, mu2)]
    elif isinstance(t, Named):
        out += [Named(t.muvar, b) for b in _succ(t.body, beta, mu, mu2)]
    return out


def canonical(t: Term) -> str:
    """String naming bound variables by binding order; equal strings iff alpha-equivalent."""
    out: list[str] = []
    count = itertools.count()

    def go(t: Term, env: dict[tuple[str, str], str]) -> None:
        if isinstance(t, Var):
            out.append(env.get(("l", t.name), "free:" + t.name))
        elif isinstance(t, App):
            out.append("(")
            go(t.fun, env)
            out.append(" ")
            go(t.arg, env)
            out.append(")")
        elif isinstance(t, Lam):
            v = f"L{next(count)}"
            out.append(f"\\{v}.")
            go(t.body, {**env, ("l", t.binder): v})
        elif isinstance(t, Mu):
            v = f"M{next(count)}"
            out.append(f"mu {v}.")
            go(t.body, {**env, ("m", t.binder): v})
        else:
            out.append("[" + env.get(("m", t.muvar), "free:" + t.muvar) + "]")
            go(t.body, env)

    go(t, {})
    return "".join(out)


def alpha_equal(a: Term, b: Term) -> bool:
    return canonical(a) == canonical(b)


def agree(m: Term, engine_reducts: list[Term], rules) -> bool:  # type: ignore[no-untyped-def]
    """Same multiset of one-step reducts up to alpha."""
    mine = Counter(canonical(t) for t in naive_successors(m, rules))
    theirs = Counter(canonical(t) for t in engine_reducts)
    return mine == theirs
