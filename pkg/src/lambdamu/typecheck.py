"""Simple types for lambda-mu terms: inference, checking and derivations.

Types are atoms, ``bot`` and arrows; ``~A`` abbreviates ``A -> bot``.  A
context gives each free lambda-name a type ``A`` (``x : A``) and each free
mu-name the ``A`` of ``a : ~A``.  Terms carry no annotations, so checking is
unification-based inference followed by matching against the declared type.

The five rules::

    ax      G, x:A |- x : A
    ->i     G, x:A |- M : B               =>  G |- \\x. M : A -> B
    ->e     G |- M : A -> B,  G |- N : A  =>  G |- M N : B
    bot_e   G, a:~A |- M : bot            =>  G |- mu a. M : A
    bot_i   G, a:~A |- M : A              =>  G, a:~A |- [a] M : bot
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .terms import App, Lam, Mu, Named, Position, Term, Var, format_position, free_vars


# ---------------------------------------------------------------- types


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Bottom:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: Type
    cod: Type

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True, slots=True)
class Meta:
    """Unification variable; printed ``t<id>``."""

    id: int

    def __str__(self) -> str:
        return f"t{self.id}"


Type = Union[Atom, Bottom, Arrow, Meta]
BOT = Bottom()


def neg(a: Type) -> Type:
    return Arrow(a, BOT)


def lg(t: Type) -> int:
    """Number of arrows, including the one inside ``~A``."""
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Arrow):
            n += 1
            stack.append(u.dom)
            stack.append(u.cod)
    return n


def metas(t: Type) -> Iterator[Meta]:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Meta):
            yield u
        elif isinstance(u, Arrow):
            stack.append(u.cod)
            stack.append(u.dom)


def show_type(t: Type) -> str:
    if isinstance(t, Arrow):
        left = show_type(t.dom)
        if isinstance(t.dom, Arrow) and not isinstance(t.dom.cod, Bottom):
            left = f"({left})"
        if isinstance(t.cod, Bottom):
            return f"~{left}"
        return f"{left} -> {show_type(t.cod)}"
    if isinstance(t, Atom):
        return t.name
    return str(t)


_TYPE_TOKEN = re.compile(r"\s*(->|→|~|¬|\(|\)|⊥|[A-Za-z][A-Za-z0-9_']*)")


def parse_type(text: str) -> Type:
    """``P``, ``bot``, ``A -> B`` (right-associative), ``~A`` for ``A -> bot``."""
    toks: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad type syntax at offset {pos}: {text!r}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    i = 0

    def arrow() -> Type:
        nonlocal i
        left = prefix()
        if i < len(toks) and toks[i] in ("->", "→"):
            i += 1
            return Arrow(left, arrow())
        return left

    def prefix() -> Type:
        nonlocal i
        if i >= len(toks):
            raise ValueError(f"unexpected end of type {text!r}")
        tok = toks[i]
        i += 1
        if tok in ("~", "¬"):
            return neg(prefix())
        if tok == "(":
            t = arrow()
            if i >= len(toks) or toks[i] != ")":
                raise ValueError(f"missing ) in type {text!r}")
            i += 1
            return t
        if tok in ("bot", "⊥"):
            return BOT
        if tok in ("->", "→", ")"):
            raise ValueError(f"unexpected {tok!r} in type {text!r}")
        return Atom(tok)

    t = arrow()
    if i != len(toks):
        raise ValueError(f"trailing input in type {text!r}")
    return t


# ---------------------------------------------------------------- contexts


@dataclass(frozen=True)
class Context:
    lam: Mapping[str, Type] = field(default_factory=dict)
    mu: Mapping[str, Type] = field(default_factory=dict)

    def with_lam(self, x: str, a: Type) -> Context:
        d = dict(self.lam)
        d[x] = a
        return Context(d, self.mu)

    def with_mu(self, alpha: str, a: Type) -> Context:
        d = dict(self.mu)
        d[alpha] = a
        return Context(self.lam, d)

    def map(self, f) -> Context:  # type: ignore[no-untyped-def]
        return Context({k: f(v) for k, v in self.lam.items()}, {k: f(v) for k, v in self.mu.items()})

    def __str__(self) -> str:
        parts = [f"{x} : {show_type(a)}" for x, a in sorted(self.lam.items())]
        parts += [f"{a} : {show_type(neg(t))}" for a, t in sorted(self.mu.items())]
        return ", ".join(parts)


def parse_context(text: str, term: Term | None = None) -> Context:
    """Read ``x : A`` / ``a : ~A`` lines (``#`` comments allowed).

    A line declares a mu-name when it is written ``[a] : ~A`` or when ``a``
    occurs free as a mu-name in ``term`` and not as a lambda-name.  A mu
    declaration must have a negated type.
    """
    fl, fm = free_vars(term) if term is not None else (frozenset(), frozenset())
    lam: dict[str, Type] = {}
    mu: dict[str, Type] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'name : type'")
        name, ty = (s.strip() for s in line.split(":", 1))
        explicit_mu = name.startswith("[") and name.endswith("]")
        if explicit_mu:
            name = name[1:-1].strip()
        t = parse_type(ty)
        if explicit_mu or (name in fm and name not in fl):
            if not (isinstance(t, Arrow) and isinstance(t.cod, Bottom)):
                raise ValueError(f"line {lineno}: mu-name {name} needs a type ~A")
            if name in mu:
                raise ValueError(f"line {lineno}: {name} declared twice")
            mu[name] = t.dom
        else:
            if name in lam:
                raise ValueError(f"line {lineno}: {name} declared twice")
            lam[name] = t
    return Context(lam, mu)


# ---------------------------------------------------------------- inference


class TypeCheckError(Exception):
    """Typing failure; ``position`` locates the sub-term where it was detected."""

    def __init__(self, message: str, position: Position = (), constraint: tuple[Type, Type] | None = None):
        super().__init__(f"{message} at {format_position(position)}")
        self.position = position
        self.constraint = constraint


class _Unifier:
    def __init__(self) -> None:
        self.binding: dict[int, Type] = {}
        self.counter = itertools.count()

    def fresh(self) -> Meta:
        return Meta(next(self.counter))

    def walk(self, t: Type) -> Type:
        while isinstance(t, Meta) and t.id in self.binding:
            t = self.binding[t.id]
        return t

    def resolve(self, t: Type) -> Type:
        t = self.walk(t)
        if isinstance(t, Arrow):
            return Arrow(self.resolve(t.dom), self.resolve(t.cod))
        return t

    def occurs(self, m: Meta, t: Type) -> bool:
        t = self.walk(t)
        if isinstance(t, Meta):
            return t.id == m.id
        if isinstance(t, Arrow):
            return self.occurs(m, t.dom) or self.occurs(m, t.cod)
        return False

    def unify(self, a: Type, b: Type, pos: Position) -> None:
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            x = self.walk(x)
            y = self.walk(y)
            if x == y:
                continue
            if isinstance(x, Meta) or isinstance(y, Meta):
                m, t = (x, y) if isinstance(x, Meta) else (y, x)
                assert isinstance(m, Meta)
                if self.occurs(m, t):
                    raise TypeCheckError(
                        f"occurs check: {m} in {show_type(self.resolve(t))}", pos, (self.resolve(a), self.resolve(b))
                    )
                self.binding[m.id] = t
            elif isinstance(x, Arrow) and isinstance(y, Arrow):
                stack.append((x.cod, y.cod))
                stack.append((x.dom, y.dom))
            else:
                raise TypeCheckError(
                    f"cannot unify {show_type(self.resolve(x))} with {show_type(self.resolve(y))}",
                    pos,
                    (self.resolve(a), self.resolve(b)),
                )


@dataclass(frozen=True)
class Derivation:
    rule: str
    context: Context
    term: Term
    type: Type
    premises: tuple[Derivation, ...] = ()

    def nodes(self) -> Iterator[Derivation]:
        stack = [self]
        while stack:
            d = stack.pop()
            yield d
            stack.extend(reversed(d.premises))

    def at_address(self, address: tuple[str, ...]) -> Derivation:
        """Sub-derivation for the sub-term at an application address."""
        d = self
        for step in address:
            if d.rule != "->e":
                raise ValueError("address leaves the application spine")
            d = d.premises[0 if step == "l" else 1]
        return d

    def render(self, indent: int = 0) -> str:
        from .syntax import show

        ctx = str(self.context)
        line = f"{'  ' * indent}{self.rule}: {ctx + ' ' if ctx else ''}|- {show(self.term)} : {show_type(self.type)}"
        return "\n".join([line] + [p.render(indent + 1) for p in self.premises])


def _infer(u: _Unifier, ctx: Context, m: Term, free_l: dict[str, Type] | None = None,
           free_m: dict[str, Type] | None = None) -> tuple[Type, dict[int, Type]]:
    """Raw type of ``m`` and of each sub-term (keyed by ``id``).

    Free names missing from ``ctx`` are an error unless ``free_l``/``free_m``
    are given, in which case they receive fresh metavariables there.
    """
    types: dict[int, Type] = {}

    def go(lam: dict[str, Type], mu: dict[str, Type], t: Term, pos: Position) -> Type:
        if isinstance(t, Var):
            if t.name in lam:
                r = lam[t.name]
            elif free_l is None:
                raise TypeCheckError(f"undeclared variable {t.name}", pos)
            else:
                r = free_l.setdefault(t.name, u.fresh())
        elif isinstance(t, Lam):
            a = u.fresh()
            r = Arrow(a, go({**lam, t.binder: a}, mu, t.body, pos + ("b",)))
        elif isinstance(t, App):
            f = go(lam, mu, t.fun, pos + ("l",))
            a = go(lam, mu, t.arg, pos + ("r",))
            r = u.fresh()
            u.unify(f, Arrow(a, r), pos)
        elif isinstance(t, Mu):
            r = u.fresh()
            b = go(lam, {**mu, t.binder: r}, t.body, pos + ("b",))
            u.unify(b, BOT, pos + ("b",))
        else:
            if t.muvar in mu:
                a = mu[t.muvar]
            elif free_m is None:
                raise TypeCheckError(f"undeclared mu-variable {t.muvar}", pos)
            else:
                a = free_m.setdefault(t.muvar, u.fresh())
            u.unify(go(lam, mu, t.body, pos + ("b",)), a, pos)
            r = BOT
        types[id(t)] = r
        return r

    return go(dict(ctx.lam), dict(ctx.mu), m, ()), types


def _rename_metas(types: list[Type]) -> dict[int, Meta]:
    order: dict[int, Meta] = {}
    for t in types:
        for m in metas(t):
            if m.id not in order:
                order[m.id] = Meta(len(order))
    return order


def _subst_metas(t: Type, ren: Mapping[int, Type]) -> Type:
    if isinstance(t, Meta):
        return ren.get(t.id, t)
    if isinstance(t, Arrow):
        return Arrow(_subst_metas(t.dom, ren), _subst_metas(t.cod, ren))
    return t


def infer(ctx: Context, m: Term) -> Type:
    """Principal type of ``m`` under ``ctx`` (metavariables renumbered ``t0, t1, ...``)."""
    u = _Unifier()
    t = u.resolve(_infer(u, ctx, m)[0])
    return _subst_metas(t, _rename_metas([t]))


def infer_open(m: Term) -> tuple[Context, Type]:
    """Principal typing of ``m`` with every free name assigned a fresh metavariable."""
    u = _Unifier()
    fl: dict[str, Type] = {}
    fm: dict[str, Type] = {}
    t = _infer(u, Context(), m, fl, fm)[0]
    lam = {k: u.resolve(v) for k, v in fl.items()}
    mu = {k: u.resolve(v) for k, v in fm.items()}
    t = u.resolve(t)
    ren = _rename_metas([t] + list(lam.values()) + list(mu.values()))
    ctx = Context({k: _subst_metas(v, ren) for k, v in lam.items()}, {k: _subst_metas(v, ren) for k, v in mu.items()})
    return ctx, _subst_metas(t, ren)


def _derive(u: _Unifier, ctx: Context, t: Term, types: dict[int, Type]) -> Derivation:
    """Rebuild the derivation after unification; ``types`` maps id(subterm) to its raw type."""
    ty = u.resolve(types[id(t)])
    if isinstance(t, Var):
        return Derivation("ax", ctx, t, ty)
    if isinstance(t, Lam):
        assert isinstance(ty, Arrow)
        inner = ctx.with_lam(t.binder, ty.dom)
        return Derivation("->i", ctx, t, ty, (_derive(u, inner, t.body, types),))
    if isinstance(t, App):
        return Derivation("->e", ctx, t, ty, (_derive(u, ctx, t.fun, types), _derive(u, ctx, t.arg, types)))
    if isinstance(t, Mu):
        inner = ctx.with_mu(t.binder, ty)
        return Derivation("bot_e", ctx, t, ty, (_derive(u, inner, t.body, types),))
    return Derivation("bot_i", ctx, t, ty, (_derive(u, ctx, t.body, types),))


def check(ctx: Context, m: Term, a: Type) -> Derivation:
    """A derivation of ``ctx |- m : a``; raises :class:`TypeCheckError` otherwise."""
    m = _unshare(m)
    u = _Unifier()
    t, types = _infer(u, ctx, m)
    u.unify(t, a, ())
    return _derive(u, ctx, m, types)


def _unshare(m: Term) -> Term:
    """Copy ``m`` so no sub-term object occurs twice (derivations key on object identity)."""
    if isinstance(m, Var):
        return Var(m.name)
    if isinstance(m, App):
        return App(_unshare(m.fun), _unshare(m.arg))
    if isinstance(m, Lam):
        return Lam(m.binder, _unshare(m.body))
    if isinstance(m, Mu):
        return Mu(m.binder, _unshare(m.body))
    return Named(m.muvar, _unshare(m.body))


def typable(ctx: Context, m: Term, a: Type) -> bool:
    try:
        check(ctx, m, a)
    except TypeCheckError:
        return False
    return True


def verify_derivation(d: Derivation) -> bool:
    """Every node instantiates its rule exactly."""
    for n in d.nodes():
        t, ty, ctx, ps = n.term, n.type, n.context, n.premises
        if n.rule == "ax":
            ok = isinstance(t, Var) and ctx.lam.get(t.name) == ty and not ps
        elif n.rule == "->i":
            ok = (
                isinstance(t, Lam) and isinstance(ty, Arrow) and len(ps) == 1
                and ps[0].term == t.body and ps[0].type == ty.cod
                and ps[0].context == ctx.with_lam(t.binder, ty.dom)
            )
        elif n.rule == "->e":
            ok = (
                isinstance(t, App) and len(ps) == 2
                and ps[0].term == t.fun and ps[1].term == t.arg
                and ps[0].context == ctx and ps[1].context == ctx
                and ps[0].type == Arrow(ps[1].type, ty)
            )
        elif n.rule == "bot_e":
            ok = (
                isinstance(t, Mu) and len(ps) == 1 and ps[0].term == t.body
                and ps[0].type == BOT and ps[0].context == ctx.with_mu(t.binder, ty)
            )
        elif n.rule == "bot_i":
            ok = (
                isinstance(t, Named) and len(ps) == 1 and ps[0].term == t.body
                and ty == BOT and t.muvar in ctx.mu and ps[0].type == ctx.mu[t.muvar]
                and ps[0].context == ctx
            )
        else:
            ok = False
        if not ok:
            return False
    return True


def ground(t: Type, atom: str = "o") -> Type:
    """Instantiate every metavariable with one atom."""
    if isinstance(t, Meta):
        return Atom(atom)
    if isinstance(t, Arrow):
        return Arrow(ground(t.dom, atom), ground(t.cod, atom))
    return t


# ---------------------------------------------------------------- subject reduction


@dataclass
class SubjectReductionReport:
    nodes_checked: int
    complete: bool
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def subject_reduction_check(ctx: Context, m: Term, a: Type, rules, max_nodes: int = 50_000,
                            max_size: int = 2_000) -> SubjectReductionReport:
    """Recheck ``ctx |- n : a`` for every node ``n`` of the reduction graph of ``m``."""
    from .reduce import build_graph
    from .syntax import show

    check(ctx, m, a)
    g = build_graph(m, rules, max_nodes, max_size)
    report = SubjectReductionReport(len(g.nodes), g.complete)
    parents: dict[int, tuple[int, int]] = {}
    for i in range(g.expanded):
        for e, (_, _, j) in enumerate(g.edges[i]):
            parents.setdefault(j, (i, e))
    for i in range(len(g.nodes)):
        n = g.term(i)
        try:
            check(ctx, n, a)
        except TypeCheckError as exc:
            src = parents.get(i)
            where = ""
            if src is not None:
                r = g.redex(src[0], g.edges[src[0]][src[1]])
                where = f" via {r} from node {src[0]}"
            report.violations.append((i, f"{show(n)} fails{where}: {exc}"))
    return report


def address_types(ctx: Context, m: Term, atom: str = "o") -> dict[tuple[str, ...], Type]:
    """Type of every application-spine sub-term of ``m`` in one derivation under ``ctx``.

    Metavariables left free by unification are instantiated with ``atom``,
    which keeps the derivation valid.  Raises :class:`TypeCheckError`.
    """
    m = _unshare(m)
    u = _Unifier()
    _, types = _infer(u, ctx, m)
    out: dict[tuple[str, ...], Type] = {}
    stack: list[tuple[tuple[str, ...], Term]] = [((), m)]
    while stack:
        a, t = stack.pop()
        out[a] = ground(u.resolve(types[id(t)]), atom)
        if isinstance(t, App):
            stack.append((a + ("l",), t.fun))
            stack.append((a + ("r",), t.arg))
    return out
