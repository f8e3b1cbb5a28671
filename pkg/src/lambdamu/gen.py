"""Term enumeration and seeded random generation.

Enumeration works directly on de Bruijn codes, so each alpha-class is produced
exactly once.  Random untyped terms are grown top-down under a size budget;
typed terms are built goal-directed from the typing rules so that they are
well-typed by construction (see :func:`random_typed`).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import codec
from .codec import APP, BNAMED, BVAR, FNAMED, FVAR, LAM, MU, word
from .terms import App, Lam, Mu, Named, Term, Var
from .typecheck import BOT, Arrow, Atom, Context, Type, check

TYPED_RETRIES = 50


@dataclass(frozen=True)
class GenConfig:
    max_size: int = 5
    free_lambda_pool: tuple[str, ...] = ("x",)
    free_mu_pool: tuple[str, ...] = ()
    seed: int = 0
    typed: bool = False
    type_depth: int = 2
    atoms: tuple[str, ...] = ("P", "Q")

    def __post_init__(self) -> None:
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        object.__setattr__(self, "free_lambda_pool", tuple(self.free_lambda_pool))
        object.__setattr__(self, "free_mu_pool", tuple(self.free_mu_pool))


# ------------------------------------------------------------ enumeration


def enumerate_codes(config: GenConfig) -> Iterator[bytes]:
    """Codes of every term with ``cxty <= max_size``, by size, in a fixed order."""
    fl = tuple(word(FVAR, codec.intern("l", x)) for x in config.free_lambda_pool)
    fm = tuple(word(FNAMED, codec.intern("m", a)) for a in config.free_mu_pool)
    table = _Table(fl, fm)
    for s in range(1, config.max_size + 1):
        for words in table.exact(s, 0, 0):
            yield codec.from_words(list(words))


def enumerate_terms(config: GenConfig) -> Iterator[Term]:
    for c in enumerate_codes(config):
        yield codec.decode(c)


def count_terms(config: GenConfig) -> int:
    fl = tuple(range(len(config.free_lambda_pool)))
    fm = tuple(range(len(config.free_mu_pool)))
    table = _Table(fl, fm)
    return sum(table.count(s, 0, 0) for s in range(1, config.max_size + 1))


class _Table:
    def __init__(self, fl: tuple[int, ...], fm: tuple[int, ...]):
        self.fl = fl
        self.fm = fm
        self.exact = lru_cache(maxsize=None)(self._exact)
        self.count = lru_cache(maxsize=None)(self._count)

    def _exact(self, s: int, dl: int, dm: int) -> tuple[tuple[int, ...], ...]:
        out: list[tuple[int, ...]] = []
        if s == 1:
            out += [(word(BVAR, i),) for i in range(dl)]
            out += [(w,) for w in self.fl]
            return tuple(out)
        for body in self.exact(s - 1, dl + 1, dm):
            out.append((LAM,) + body)
        for body in self.exact(s - 1, dl, dm + 1):
            out.append((MU,) + body)
        named = [word(BNAMED, i) for i in range(dm)] + list(self.fm)
        if named:
            for body in self.exact(s - 1, dl, dm):
                out += [(w,) + body for w in named]
        for left in range(1, s - 1):
            fs = self.exact(left, dl, dm)
            if not fs:
                continue
            args = self.exact(s - 1 - left, dl, dm)
            for f in fs:
                for a in args:
                    out.append((APP,) + f + a)
        return tuple(out)

    def _count(self, s: int, dl: int, dm: int) -> int:
        if s == 1:
            return dl + len(self.fl)
        n = self.count(s - 1, dl + 1, dm) + self.count(s - 1, dl, dm + 1)
        n += (dm + len(self.fm)) * self.count(s - 1, dl, dm)
        for left in range(1, s - 1):
            n += self.count(left, dl, dm) * self.count(s - 1 - left, dl, dm)
        return n


# ------------------------------------------------------------ random untyped


def random_term(config: GenConfig, rng: random.Random | None = None) -> Term:
    """A random term with ``cxty <= max_size``; a fresh ``Random(seed)`` unless ``rng`` is given."""
    if config.typed:
        return random_typed(config, rng).term
    r = rng if rng is not None else random.Random(config.seed)
    size = r.randint(1, config.max_size)
    return _grow(r, size, config, [], [])


def _grow(r: random.Random, size: int, cfg: GenConfig, ls: list[str], ms: list[str], binder: bool = False) -> Term:
    lam_names = list(cfg.free_lambda_pool) + ls
    mu_names = list(cfg.free_mu_pool) + ms
    if not lam_names and size <= 2:
        return Lam("v0", Var("v0"))
    if size == 1:
        return Var(r.choice(lam_names))
    if binder:
        choices = ["lam", "mu"]
    else:
        choices = ["lam", "mu", "app", "app"]
        if mu_names:
            choices.append("named")
        if size == 2:
            choices = [c for c in choices if c != "app"]
    kind = r.choice(choices)
    if kind == "lam":
        x = f"v{len(ls)}"
        return Lam(x, _grow(r, size - 1, cfg, ls + [x], ms))
    if kind == "mu":
        a = f"k{len(ms)}"
        return Mu(a, _grow(r, size - 1, cfg, ls, ms + [a]))
    if kind == "named":
        return Named(r.choice(mu_names), _grow(r, size - 1, cfg, ls, ms))
    left = r.randint(1, size - 2)
    # a binder in function position makes a redex
    f = _grow(r, left, cfg, ls, ms, binder=left >= 2 and r.random() < 0.4)
    return App(f, _grow(r, size - 1 - left, cfg, ls, ms))


def random_terms(config: GenConfig, count: int) -> list[Term]:
    r = random.Random(config.seed)
    return [random_term(config, r) for _ in range(count)]


# ------------------------------------------------------------ random typed


@dataclass(frozen=True)
class TypedSample:
    term: Term
    ctx: Context
    type: Type


class GenerationError(RuntimeError):
    pass


def random_type(r: random.Random, depth: int, atoms: tuple[str, ...]) -> Type:
    if depth <= 0 or r.random() < 0.35:
        return Atom(r.choice(atoms))
    dom = random_type(r, depth - 1, atoms)
    cod = BOT if r.random() < 0.2 else random_type(r, depth - 1, atoms)
    return Arrow(dom, cod)


def random_typed(config: GenConfig, rng: random.Random | None = None) -> TypedSample:
    """A well-typed ``(term, context, type)`` with ``cxty(term) <= max_size``.

    Contexts assign random types to the configured free-name pools; the term
    is built by choosing, at each goal, a typing rule whose conclusion fits.
    Raises :class:`GenerationError` after ``TYPED_RETRIES`` failed attempts.
    """
    r = rng if rng is not None else random.Random(config.seed)
    for _ in range(TYPED_RETRIES):
        lam = {x: random_type(r, config.type_depth, config.atoms) for x in config.free_lambda_pool}
        mu = {a: random_type(r, config.type_depth, config.atoms) for a in config.free_mu_pool}
        goal = random_type(r, config.type_depth, config.atoms)
        b = _TypedBuilder(r, config)
        t = b.build(dict(lam), dict(mu), goal, r.randint(1, config.max_size))
        if t is None:
            continue
        ctx = Context(lam, mu)
        check(ctx, t, goal)
        return TypedSample(t, ctx, goal)
    raise GenerationError(f"no typed term found in {TYPED_RETRIES} attempts")


class _TypedBuilder:
    WORK_LIMIT = 4000
    REDEX_BIAS = 0.5

    def __init__(self, r: random.Random, cfg: GenConfig):
        self.r = r
        self.cfg = cfg
        self.work = 0

    def build(self, lam: dict[str, Type], mu: dict[str, Type], goal: Type, budget: int,
              binder_only: bool = False) -> Term | None:
        self.work += 1
        if self.work > self.WORK_LIMIT or budget < 1:
            return None
        r = self.r
        vars_ = [x for x, t in lam.items() if t == goal]
        options = ["var"] * bool(vars_)
        if binder_only:
            options = ["lam"] * isinstance(goal, Arrow) + ["mu"] if budget >= 2 else []
        elif budget >= 2:
            if isinstance(goal, Arrow):
                options += ["lam", "lam"]
            if goal == BOT and mu:
                options += ["named", "named"]
            options.append("mu")
        if budget >= 3:
            options += ["app"] * 3
        r.shuffle(options)
        for kind in options:
            if kind == "var":
                return Var(r.choice(vars_))
            if kind == "lam":
                assert isinstance(goal, Arrow)
                x = f"v{len(lam)}"
                body = self.build({**lam, x: goal.dom}, mu, goal.cod, budget - 1)
                if body is not None:
                    return Lam(x, body)
            elif kind == "mu":
                a = f"k{len(mu)}"
                body = self.build(lam, {**mu, a: goal}, BOT, budget - 1)
                if body is not None:
                    return Mu(a, body)
            elif kind == "named":
                a = r.choice(sorted(mu))
                body = self.build(lam, mu, mu[a], budget - 1)
                if body is not None:
                    return Named(a, body)
            else:
                dom = self._argument_type(lam, goal)
                left = r.randint(1, budget - 2)
                # a binder in function position makes a redex; without this most samples are normal
                f = self.build(lam, mu, Arrow(dom, goal), left, binder_only=r.random() < self.REDEX_BIAS)
                if f is None:
                    continue
                a = self.build(lam, mu, dom, budget - 1 - left)
                if a is not None:
                    return App(f, a)
        return None

    def _argument_type(self, lam: dict[str, Type], goal: Type) -> Type:
        # prefer argument types that let a context variable be the head
        heads = [t.dom for t in lam.values() if isinstance(t, Arrow) and t.cod == goal]
        if heads and self.r.random() < 0.7:
            return self.r.choice(heads)
        return random_type(self.r, 1, self.cfg.atoms)
