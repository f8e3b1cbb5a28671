"""Decomposition oracles: where can a binder-rooted reduct come from?

Each oracle enumerates instances, computes every lambda- or mu-rooted reduct
of the composite term, and checks that it is reachable from a set of *start*
terms built from reducts of the components (for example the mu-contractum of
``(Y N)`` for every mu-rooted ``Y`` with ``M ->* Y``).  Reachability from a
start is exactly the existential in the statement being tested, so an
unreached rooted reduct is a counter-example.  Instances whose graphs exceed
the budget are counted as inconclusive, never as failures.

The oracles, keyed by the id the ``lemma --id`` command takes:

``5``   ``(M N) ->* mu a.P`` under mu, mu'
``6``   ``M[s] ->* mu a.P`` for mu-substitutions ``s`` (mu, mu')
``11``  ``(M N) ->* \\x.P`` and ``(M N) ->* mu a.P`` under beta, mu, mu'
``12``  ``M[x:=N] ->* \\y.P`` for SN ``M``
``16``  typed ``M[x:=N] ->* mu a.P`` with the address decomposition
``21``  ``(x M1 .. Mn)`` never reaches a lambda-rooted term
``23``  ``(x M1 .. Mn) ->* mu a.P`` comes from some ``Mi``
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import codec, kernel
from .codec import APP, FVAR, LAM, MU
from .gen import GenConfig, enumerate_codes
from .reduce import ALL, DEFAULT_MAX_SIZE, MU_MU_PRIME, RuleSet
from .subst import SimulSubst, Beta, MuLeft, MuRight, apply_simul, subst_mu_addr, subst_mu_indexed
from .syntax import show
from .terms import Mu, Term, Var, addresses, free_vars, subterm_at
from .typecheck import Context, Meta, TypeCheckError, _subst_metas, _Unifier, address_types, ground, infer_open, lg, metas

_APP_WORD = codec.word(APP).to_bytes(4, "little", signed=True)


def _app(*codes: bytes) -> bytes:
    out = codes[0]
    for c in codes[1:]:
        out = _APP_WORD + out + c
    return out


def _tag(code: bytes) -> int:
    return codec.root_tag(code)


class Explorer:
    """Reachability over codes with a successor cache shared by all queries."""

    def __init__(self, rules: RuleSet, max_nodes: int = 20_000, max_size: int = DEFAULT_MAX_SIZE,
                 cache_limit: int = 1_000_000):
        self.rules = rules
        self.mask = rules.mask
        self.max_nodes = max_nodes
        self.max_size = max_size
        self.cache_limit = cache_limit
        self.cache: dict[bytes, tuple[bytes, ...]] = {}
        self.reach_memo: dict[bytes, frozenset[bytes] | None] = {}

    def succ(self, code: bytes) -> tuple[bytes, ...] | None:
        """Distinct one-step reducts; ``None`` when one exceeds the size cap."""
        s = self.cache.get(code)
        if s is None:
            if len(self.cache) > self.cache_limit:
                self.cache.clear()
                self.reach_memo.clear()
            out = {c: None for _, _, c in kernel.successors(code, self.mask)}
            s = tuple(out)
            self.cache[code] = s
        if any(len(c) >> 2 > self.max_size for c in s):
            return None
        return s

    def reach(self, roots: Iterable[bytes]) -> frozenset[bytes] | None:
        """All reducts of ``roots`` (reflexive); ``None`` when the budget is exceeded."""
        roots = list(roots)
        if len(roots) == 1 and roots[0] in self.reach_memo:
            return self.reach_memo[roots[0]]
        seen = set(roots)
        todo = deque(roots)
        while todo:
            c = todo.popleft()
            s = self.succ(c)
            if s is None:
                seen = None
                break
            for d in s:
                if d not in seen:
                    seen.add(d)
                    if len(seen) > self.max_nodes:
                        break
                    todo.append(d)
            if len(seen) > self.max_nodes:
                seen = None
                break
        res = None if seen is None else frozenset(seen)
        if len(roots) == 1:
            self.reach_memo[roots[0]] = res
        return res

    def is_sn(self, code: bytes) -> bool | None:
        """Cycle-free complete graph; ``None`` when inconclusive."""
        r = self.reach([code])
        if r is None:
            return None
        color: dict[bytes, int] = {}
        for root in r:
            if root in color:
                continue
            stack = [(root, iter(self.succ(root) or ()))]
            color[root] = 1
            while stack:
                c, it = stack[-1]
                d = next(it, None)
                if d is None:
                    color[c] = 2
                    stack.pop()
                elif color.get(d) == 1:
                    return False
                elif d not in color:
                    color[d] = 1
                    stack.append((d, iter(self.succ(d) or ())))
        return True


# ---------------------------------------------------------------- reports


@dataclass
class Counterexample:
    instance: str
    target: str
    starts: int

    def __str__(self) -> str:
        return f"{self.instance}: rooted reduct {self.target} not reached from any of {self.starts} start terms"


@dataclass
class OracleReport:
    oracle: str
    domain: str
    instances: int = 0
    vacuous: int = 0
    checked_targets: int = 0
    inconclusive: int = 0
    excluded: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def render(self) -> str:
        status = "holds" if self.ok else f"FAILS ({len(self.counterexamples)} counter-examples)"
        lines = [
            f"oracle {self.oracle} {status}: {self.instances} instances ({self.domain}), "
            f"{self.checked_targets} rooted reducts checked, {self.vacuous} vacuous, "
            f"{self.inconclusive} inconclusive, {self.excluded} excluded by hypothesis"
        ]
        lines += [f"  {c}" for c in self.counterexamples[:20]]
        return "\n".join(lines)


class _Check:
    """Shared bookkeeping: targets must lie in the reach of the starts."""

    def __init__(self, report: OracleReport, ex: Explorer):
        self.report = report
        self.ex = ex

    def run(self, label: Callable[[], str], targets: Iterable[bytes] | None,
            starts: Callable[[], Iterable[bytes] | None], count: bool = True) -> None:
        rep = self.report
        rep.instances += count
        if targets is None:
            rep.inconclusive += 1
            return
        targets = list(targets)
        if not targets:
            rep.vacuous += 1
            return
        st = starts()
        if st is None:
            rep.inconclusive += 1
            return
        st = list(dict.fromkeys(st))
        covered = self.ex.reach(st)
        if covered is None:
            rep.inconclusive += 1
            return
        rep.checked_targets += len(targets)
        for t in targets:
            if t not in covered:
                rep.counterexamples.append(Counterexample(label(), show(codec.decode(t)), len(st)))
                return


def _rooted(codes: Iterable[bytes], tag: int) -> list[bytes]:
    return sorted(c for c in codes if _tag(c) == tag)


def _open_mu(code: bytes) -> tuple[str, Term]:
    """Body of a mu-rooted code with its binder named ``_m0`` (a name no input can use)."""
    return "_m0", codec.decode(code[4:])


# ---------------------------------------------------------------- domains


@dataclass(frozen=True)
class Domain:
    max_size: int = 5
    free_lambda_pool: tuple[str, ...] = ("x",)
    free_mu_pool: tuple[str, ...] = ("a",)

    def codes(self, max_size: int | None = None) -> list[bytes]:
        cfg = GenConfig(max_size=max_size or self.max_size, free_lambda_pool=self.free_lambda_pool,
                        free_mu_pool=self.free_mu_pool)
        return list(enumerate_codes(cfg))

    def __str__(self) -> str:
        pools = ",".join(self.free_lambda_pool) + ";" + ",".join(self.free_mu_pool)
        return f"cxty<={self.max_size} over {{{pools}}}"


DEFAULT_DOMAINS: dict[str, Domain] = {
    "5": Domain(5),
    "6": Domain(5, ("x",), ("a", "b")),
    "11": Domain(5),
    "12": Domain(5, ("x", "y")),
    "16": Domain(5, ("x", "y")),
    "21": Domain(5),
    "23": Domain(5),
}


def _pairs(left: list[bytes], right: list[bytes], total: int | None) -> Iterator[tuple[bytes, bytes]]:
    for m in left:
        for n in right:
            if total is None or (len(m) + len(n)) >> 2 <= total:
                yield m, n


# ---------------------------------------------------------------- applications


def mu_rooted_application(domain: Domain = DEFAULT_DOMAINS["5"], budget: int = 20_000, total: int | None = None) -> OracleReport:
    """Every ``mu a.P`` below ``(M N)`` is reached from a mu- or mu'-contractum at the root."""
    return _application_oracle("5", MU_MU_PRIME, domain, budget, total)


def rooted_application(domain: Domain = DEFAULT_DOMAINS["11"], budget: int = 20_000, total: int | None = None) -> OracleReport:
    """With beta: lambda-rooted reducts come from a beta-contractum, mu-rooted ones from any root contractum."""
    return _application_oracle("11", ALL, domain, budget, total)


def _application_oracle(name: str, rules: RuleSet, domain: Domain, budget: int, total: int | None) -> OracleReport:
    ex = Explorer(rules, budget)
    rep = OracleReport(name, f"pairs from {domain}" + (f", combined cxty<={total}" if total else ""))
    chk = _Check(rep, ex)
    codes = domain.codes()
    beta = "beta" in str(rules)
    for m, n in _pairs(codes, codes, total):
        mn = _app(m, n)
        r = ex.reach([mn])
        rm = ex.reach([m])
        rn = ex.reach([n])
        if r is None or rm is None or rn is None:
            chk.run(lambda: "", None, lambda: None)
            continue
        label = lambda m=m, n=n: f"M = {show(codec.decode(m))}, N = {show(codec.decode(n))}"  # noqa: E731
        beta_starts = [kernel.contract(_app(y, n), 0, kernel.BETA) for y in _rooted(rm, LAM)] if beta else []
        if beta:
            # lambda-rooted reducts: only from M ->* \y.M1 then M1[y:=N]
            chk.run(label, _rooted(r, LAM), lambda: beta_starts, count=False)

        def starts(rm=rm, rn=rn, m=m, n=n, beta_starts=beta_starts) -> list[bytes]:
            out = list(beta_starts)
            out += [kernel.contract(_app(y, n), 0, kernel.MU) for y in _rooted(rm, MU)]
            out += [kernel.contract(_app(m, y), 0, kernel.MU_PRIME) for y in _rooted(rn, MU)]
            return out

        chk.run(label, _rooted(r, MU), starts)
    return rep


# ---------------------------------------------------------------- mu-substitutions


def mu_rooted_under_mu_subst(domain: Domain = DEFAULT_DOMAINS["6"], image_size: int = 4, budget: int = 20_000) -> OracleReport:
    """``M[s] ->* mu a.P`` implies ``M ->* mu a.Q`` with ``Q[s] ->* P``, for ``s = [b =_l/r I]``.

    ``s`` ranges over single bindings of each free mu-name of the pool with
    both directions and every image of size ``<= image_size``.
    """
    ex = Explorer(MU_MU_PRIME, budget)
    rep = OracleReport("6", f"M from {domain}, s = [b =_l/r I] with cxty(I)<={image_size}")
    chk = _Check(rep, ex)
    images = [codec.decode(c) for c in domain.codes(image_size)]
    sigmas: list[SimulSubst] = []
    for b in domain.free_mu_pool:
        for img in images:
            sigmas.append(SimulSubst({}, {b: MuRight(img)}))
            sigmas.append(SimulSubst({}, {b: MuLeft(img)}))
    if len(domain.free_mu_pool) >= 2:
        b1, b2 = domain.free_mu_pool[:2]
        for i1, i2 in itertools.product(images[:5], repeat=2):
            sigmas.append(SimulSubst({}, {b1: MuLeft(i1), b2: MuRight(i2)}))
    for m in domain.codes():
        mt = codec.decode(m)
        rm = ex.reach([m])
        mu_free = free_vars(mt)[1]
        for s in sigmas:
            if not set(s.mu) & mu_free:
                rep.instances += 1
                rep.vacuous += 1  # M[s] = M
                continue
            ms = codec.encode(apply_simul(mt, s))
            r = ex.reach([ms])
            if rm is None:
                r = None

            def starts(rm=rm, s=s) -> list[bytes]:
                return [codec.encode(apply_simul(codec.decode(y), s)) for y in _rooted(rm, MU)]

            chk.run(lambda mt=mt, s=s: f"M = {show(mt)}, s = {_show_sigma(s)}", None if r is None else _rooted(r, MU), starts)
    return rep


def _show_sigma(s: SimulSubst) -> str:
    parts = []
    for sort, k, act in s.bindings():
        if isinstance(act, Beta):
            parts.append(f"{k} := {show(act.replacement)}")
        elif isinstance(act, MuRight):
            parts.append(f"{k} =_r {show(act.argument)}")
        elif isinstance(act, MuLeft):
            parts.append(f"{k} =_l {show(act.function)}")
        else:
            parts.append(f"{k} = {act}")
    return "[" + ", ".join(parts) + "]"


# ---------------------------------------------------------------- beta-substitutions


def _spine_head(code: bytes) -> int | None:
    """Word of the head variable when ``code`` is a (possibly empty) application spine on a free variable."""
    words = codec.to_words(code)
    i = 0
    while words[i] & codec.TAG_MASK == APP:
        i += 1
    return words[i] if words[i] & codec.TAG_MASK == FVAR else None


def rooted_under_beta(domain: Domain = DEFAULT_DOMAINS["12"], image_size: int = 5, budget: int = 20_000) -> OracleReport:
    """For SN ``M``: ``M[x:=N] ->* \\y.P`` comes from a lambda-rooted reduct of ``M`` or from ``M ->* (x Q..)``."""
    ex = Explorer(ALL, budget)
    x = domain.free_lambda_pool[0]
    others = domain.free_lambda_pool[1:]
    rep = OracleReport("12", f"SN M from {domain}, s = [{x} := N] with N over {{{','.join(others)}}}, cxty(N)<={image_size}")
    chk = _Check(rep, ex)
    images = [codec.decode(c) for c in Domain(image_size, others, domain.free_mu_pool).codes()]
    head_word = codec.word(FVAR, codec.intern("l", x))
    for m in domain.codes():
        mt = codec.decode(m)
        if x not in free_vars(mt)[0]:
            rep.excluded += len(images)
            continue
        sn = ex.is_sn(m)
        if sn is not True:
            if sn is None:
                rep.inconclusive += len(images)
            else:
                rep.excluded += len(images)
            continue
        rm = ex.reach([m])
        assert rm is not None
        cands = [y for y in sorted(rm) if _tag(y) == LAM or _spine_head(y) == head_word]
        for img in images:
            s = SimulSubst({x: Beta(img)}, {})
            r = ex.reach([codec.encode(apply_simul(mt, s))])

            def starts(s=s, cands=cands) -> list[bytes]:
                return [codec.encode(apply_simul(codec.decode(y), s)) for y in cands]

            chk.run(lambda mt=mt, img=img: f"M = {show(mt)}, {x} := {show(img)}", None if r is None else _rooted(r, LAM), starts)
    return rep


# ---------------------------------------------------------------- typed beta-substitutions


def typed_rooted_under_beta(domain: Domain = DEFAULT_DOMAINS["16"], image_size: int = 5, budget: int = 20_000) -> OracleReport:
    """Typed ``M[x:=N] ->* mu a.P`` with ``lg(type(N)) = n``.

    Starts: ``Y[s]`` for mu-rooted ``Y`` below ``M``, and ``mu a.N'[a =_c Q[s]]``
    for every reduct ``Q`` of ``M``, spine address ``c`` of ``Q`` whose
    sub-term is ``x`` or has a type with fewer than ``n`` arrows, and every
    ``mu a.N'`` below ``Q_c[s]``.  Types come from one derivation of each
    ``Q`` under the instance's context, with unconstrained parts set to an atom.
    """
    ex = Explorer(ALL, budget)
    x = domain.free_lambda_pool[0]
    others = domain.free_lambda_pool[1:]
    rep = OracleReport("16", f"typed M from {domain}, s = [{x} := N] with N over {{{','.join(others)}}}, cxty(N)<={image_size}")
    chk = _Check(rep, ex)
    images = []
    for c in Domain(image_size, others, domain.free_mu_pool).codes():
        t = codec.decode(c)
        try:
            images.append((t, infer_open(t)))
        except TypeCheckError:
            continue
    for m in domain.codes():
        mt = codec.decode(m)
        if x not in free_vars(mt)[0]:
            continue
        try:
            mctx, _ = infer_open(mt)
        except TypeCheckError:
            rep.excluded += 1
            continue
        for img, (nctx, ntype) in images:
            ctx = _joint_context(mctx, x, nctx, ntype)
            if ctx is None:
                rep.excluded += 1
                continue
            n_arrows = lg(ctx.lam[x])
            s = SimulSubst({x: Beta(img)}, {})
            ms = codec.encode(apply_simul(mt, s))
            r = ex.reach([ms])
            rm = ex.reach([m])
            if rm is None:
                r = None

            def starts(mt=mt, s=s, ctx=ctx, n_arrows=n_arrows, rm=rm) -> list[bytes] | None:
                out = [codec.encode(apply_simul(codec.decode(y), s)) for y in _rooted(rm, MU)]
                for q in sorted(rm):
                    qt = codec.decode(q)
                    try:
                        types = address_types(ctx, qt)
                    except TypeCheckError:
                        return None  # would contradict subject reduction; reported as inconclusive
                    qs = apply_simul(qt, s)
                    for a in addresses(qt):
                        sub = subterm_at(qt, a)
                        if not (sub == Var(x) or lg(types[a]) < n_arrows):
                            continue
                        rq = ex.reach([codec.encode(apply_simul(sub, s))])
                        if rq is None:
                            return None
                        for z in _rooted(rq, MU):
                            alpha, body = _open_mu(z)
                            out.append(codec.encode(Mu(alpha, subst_mu_addr(body, alpha, qs, a))))
                return out

            chk.run(lambda mt=mt, img=img, ctx=ctx: f"M = {show(mt)}, {x} := {show(img)} under {ctx}",
                    None if r is None else _rooted(r, MU), starts)
    return rep


def _joint_context(mctx: Context, x: str, nctx: Context, ntype) -> Context | None:  # type: ignore[no-untyped-def]
    """Ground context typing both ``M`` (with ``x : type(N)``) and ``N``; ``None`` if none exists."""
    # N's metavariables are renumbered past M's so the two typings start independent
    offset = 1 + max((m.id for t in list(mctx.lam.values()) + list(mctx.mu.values()) for m in metas(t)), default=0)

    def shift(t):  # type: ignore[no-untyped-def]
        return _subst_metas(t, {m.id: Meta(m.id + offset) for m in metas(t)})

    u = _Unifier()
    lam = dict(mctx.lam)
    mu = dict(mctx.mu)
    try:
        u.unify(lam[x], shift(ntype), ())
        for mine, theirs in ((lam, nctx.lam), (mu, nctx.mu)):
            for k, v in theirs.items():
                if k in mine:
                    u.unify(mine[k], shift(v), ())
                else:
                    mine[k] = shift(v)
    except TypeCheckError:
        return None
    return Context({k: ground(u.resolve(v)) for k, v in lam.items()}, {k: ground(u.resolve(v)) for k, v in mu.items()})


# ---------------------------------------------------------------- head-variable applications


def _head_tuples(domain: Domain, arities: dict[int, int]) -> Iterator[tuple[bytes, ...]]:
    """Argument tuples: for arity ``n`` every tuple of terms of cxty <= ``arities[n]``."""
    for n, size in sorted(arities.items()):
        codes = domain.codes(size)
        yield from itertools.product(codes, repeat=n)


DEFAULT_ARITIES = {1: 5, 2: 5, 3: 3}


def head_has_no_lambda_reduct(domain: Domain = DEFAULT_DOMAINS["21"], arities: dict[int, int] | None = None,
            budget: int = 20_000, head: str = "x") -> OracleReport:
    """``(x M1 .. Mn)`` has no lambda-rooted reduct."""
    arities = arities or DEFAULT_ARITIES
    ex = Explorer(ALL, budget)
    rep = OracleReport("21", f"(x M1..Mn) with Mi from {domain}, per-arity cxty bounds {arities}")
    hw = codec.from_words([codec.word(FVAR, codec.intern("l", head))])
    for args in _head_tuples(domain, arities):
        t = _app(hw, *args)
        rep.instances += 1
        r = ex.reach([t])
        if r is None:
            rep.inconclusive += 1
            continue
        rep.checked_targets += len(r)
        bad = _rooted(r, LAM)
        if bad:
            rep.counterexamples.append(Counterexample(show(codec.decode(t)), show(codec.decode(bad[0])), 0))
    return rep


def head_mu_reducts(domain: Domain = DEFAULT_DOMAINS["23"], arities: dict[int, int] | None = None,
            budget: int = 20_000, head: str = "x") -> OracleReport:
    """``(x M1 .. Mn) ->* mu a.M`` is reached from ``mu a.P[a =_i (M1..Mn)]`` with ``Mi ->* mu a.P``."""
    arities = arities or DEFAULT_ARITIES
    ex = Explorer(ALL, budget)
    rep = OracleReport("23", f"(x M1..Mn) with Mi from {domain}, per-arity cxty bounds {arities}")
    chk = _Check(rep, ex)
    hw = codec.from_words([codec.word(FVAR, codec.intern("l", head))])
    for args in _head_tuples(domain, arities):
        t = _app(hw, *args)
        r = ex.reach([t])
        reaches = [ex.reach([a]) for a in args]
        if any(x is None for x in reaches):
            r = None

        def starts(args=args, reaches=reaches) -> list[bytes]:
            slots = tuple(codec.decode(a) for a in args)
            out = []
            for i, ri in enumerate(reaches, 1):
                for z in _rooted(ri, MU):
                    alpha, body = _open_mu(z)
                    out.append(codec.encode(Mu(alpha, subst_mu_indexed(body, alpha, head, slots, i))))
            return out

        chk.run(lambda t=t: show(codec.decode(t)), None if r is None else _rooted(r, MU), starts)
    return rep


LEMMAS: dict[str, Callable[..., OracleReport]] = {
    "5": mu_rooted_application, "6": mu_rooted_under_mu_subst, "11": rooted_application, "12": rooted_under_beta, "16": typed_rooted_under_beta, "21": head_has_no_lambda_reduct, "23": head_mu_reducts,
}


def run_lemma(lemma: str, max_size: int | None = None, **kwargs) -> OracleReport:  # type: ignore[no-untyped-def]
    """Run one oracle; ``max_size`` overrides the component bound of its default domain."""
    key = str(lemma)
    if key not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    if max_size is not None:
        d = DEFAULT_DOMAINS[key]
        kwargs["domain"] = Domain(max_size, d.free_lambda_pool, d.free_mu_pool)
    return LEMMAS[key](**kwargs)
