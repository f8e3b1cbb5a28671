"""Strong-normalization certificates, the eta measure, and property drivers.

:func:`sn_check` explores the reduction graph of a term.  A cycle in the
explored part is a replayable non-termination certificate; a complete acyclic
graph certifies SN, with ``eta`` the length of its longest path.  Anything
else is reported as exhausted rather than guessed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Union

from . import codec
from .gen import GenConfig, enumerate_codes, random_term, random_typed
from .reduce import (
    ALL,
    DEFAULT_MAX_NODES,
    DEFAULT_MAX_SIZE,
    MU_MU_PRIME,
    Redex,
    ReductionGraph,
    Rule,
    RuleSet,
    build_graph,
    step,
)
from .subst import subst_beta, subst_mu_right
from .syntax import parse, show
from .terms import Lam, Mu, Term, Var, alpha_eq, apps, cxty, format_position, parse_position
from .typecheck import subject_reduction_check


@dataclass(frozen=True)
class Budget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_size: int = DEFAULT_MAX_SIZE

    def scaled(self, factor: int) -> Budget:
        return Budget(self.max_nodes * factor, self.max_size * factor)


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class SN:
    """``eta`` and ``longest_path`` come from a complete graph; the decomposition method leaves them unset."""

    eta: int | None
    longest_path: tuple[Redex, ...]
    nodes: int
    method: str = "graph"

    kind = "SN"


@dataclass(frozen=True)
class NotSN:
    """``witness`` is a redex path whose last reduct equals the reduct after ``loop_start`` steps."""

    witness: tuple[Redex, ...]
    loop_start: int
    nodes: int

    kind = "NotSN"


@dataclass(frozen=True)
class Exhausted:
    frontier_size: int
    max_term_size_seen: int
    nodes: int

    kind = "Exhausted"


Verdict = Union[SN, NotSN, Exhausted]


def analyse_graph(g: ReductionGraph) -> Verdict:
    """Verdict for an already built graph (cycles are looked for in the explored part)."""
    n_exp = g.expanded
    # iterative DFS: 0 unvisited, 1 on the current path, 2 finished
    color = [0] * len(g.nodes)
    best = [0] * len(g.nodes)
    choice: list[int] = [-1] * len(g.nodes)
    path_nodes: list[int] = []
    path_edges: list[int] = []
    stack: list[tuple[int, int]] = [(0, 0)]
    color[0] = 1
    path_nodes.append(0)
    while stack:
        i, e = stack[-1]
        edges = g.edges[i] if i < n_exp else ()
        if e < len(edges):
            stack[-1] = (i, e + 1)
            j = edges[e][2]
            if color[j] == 1:
                redexes = [g.redex(path_nodes[k], g.edges[path_nodes[k]][path_edges[k]]) for k in range(len(path_edges))]
                redexes.append(g.redex(i, edges[e]))
                return NotSN(tuple(redexes), path_nodes.index(j), len(g.nodes))
            if color[j] == 0:
                color[j] = 1
                path_nodes.append(j)
                path_edges.append(e)
                stack.append((j, 0))
            elif best[j] + 1 > best[i]:
                best[i] = best[j] + 1
                choice[i] = e
            continue
        stack.pop()
        color[i] = 2
        path_nodes.pop()
        if path_edges:
            path_edges.pop()
        if stack:
            p, pe = stack[-1]
            if best[i] + 1 > best[p]:
                best[p] = best[i] + 1
                choice[p] = pe - 1
    if not g.complete:
        return Exhausted(len(g.nodes) - g.expanded, g.max_size_seen, len(g.nodes))
    longest: list[Redex] = []
    i = 0
    while choice[i] >= 0 and g.edges[i]:
        edge = g.edges[i][choice[i]]
        longest.append(g.redex(i, edge))
        i = edge[2]
    return SN(best[0], tuple(longest), len(g.nodes))


def sn_check(m: Term | bytes, rules: RuleSet, budget: Budget = DEFAULT_BUDGET, method: str = "graph") -> Verdict:
    """Certify ``m``.

    ``method`` is ``"graph"`` (whole reduction graph), ``"decompose"`` (see
    :func:`sn_decompose`) or ``"auto"`` (graph first, decomposition when the
    graph is exhausted).
    """
    if method not in ("graph", "decompose", "auto"):
        raise ValueError(f"unknown method {method!r}")
    code = m if isinstance(m, bytes) else codec.encode(m)
    if method == "decompose":
        return sn_decompose(code, rules, budget)
    v = analyse_graph(build_graph(code, rules, budget.max_nodes, budget.max_size))
    if method == "auto" and isinstance(v, Exhausted):
        d = sn_decompose(code, rules, budget)
        if not isinstance(d, Exhausted):
            return d
    return v


# ---------------------------------------------------------------- decomposition
#
# For an application (P Q) every infinite reduction either stays inside P or Q
# forever, or makes a first root step after reducing P to P' and Q to Q'.  Call
# H(T) a set of lambda/mu-rooted reducts of T such that every rooted reduct of
# T reduces from a member with the same root binder.  Since substitution is
# monotone in its argument, (P Q) is SN iff P and Q are SN and so is every
#
#     B[x:=Q]             for \x.B  in H(P)
#     mu a. X[a=_r Q]     for mu a.X in H(P)
#     mu b. Y[b=_l P]     for mu b.Y in H(Q)
#
# and H(P Q) is the union of H over those same terms.  H of a binder-rooted term
# is the term itself; variables and named terms have none.  Leaves are settled
# by small complete graphs, so cycles found there remain genuine cycles of the
# whole term once their positions are prefixed.


class _OutOfBudget(Exception):
    pass


_INCONCLUSIVE = "?"
_LEAF_NODES = 2_000


def _prefix(path: Iterable[Redex], pre: tuple[str, ...]) -> tuple[Redex, ...]:
    return tuple(Redex(pre + r.position, r.rule) for r in path)


class _Decomposer:
    def __init__(self, rules: RuleSet, budget: Budget):
        self.rules = rules
        self.mask = rules.mask
        self.budget = budget
        self.calls = 0
        self.sn_memo: dict[bytes, object] = {}
        self.h_memo: dict[bytes, object] = {}
        self.active: set[bytes] = set()
        self.h_active: set[bytes] = set()

    def tick(self) -> None:
        self.calls += 1
        if self.calls > self.budget.max_nodes:
            raise _OutOfBudget

    @staticmethod
    def split(code: bytes) -> tuple[bytes, bytes]:
        words = codec.to_words(code)
        e = codec.subtree_ends(words)[1]
        return code[4 : 4 * e], code[4 * e :]

    def root_steps(self, p: bytes, q: bytes) -> list[tuple[bytes, tuple[Redex, ...]]] | None:
        """Root contracta of (p q) after reducing into H(p)/H(q), with their paths; ``None`` if H is unknown."""
        from . import kernel

        out: list[tuple[bytes, tuple[Redex, ...]]] = []
        app = codec.word(codec.APP).to_bytes(4, "little", signed=True)
        if self.mask & (kernel.BETA | kernel.MU):
            hp = self.head(p)
            if hp is None:
                return None
            for c, path in hp:
                tag = codec.root_tag(c)
                rule = Rule.BETA if tag == codec.LAM else Rule.MU
                if rule in self.rules:
                    r = kernel.contract(app + c + q, 0, int(rule))
                    out.append((r, _prefix(path, ("l",)) + (Redex((), rule),)))
        if Rule.MU_PRIME in self.rules:
            hq = self.head(q)
            if hq is None:
                return None
            for c, path in hq:
                if codec.root_tag(c) == codec.MU:
                    r = kernel.contract(app + p + c, 0, int(Rule.MU_PRIME))
                    out.append((r, _prefix(path, ("r",)) + (Redex((), Rule.MU_PRIME),)))
        return out

    def head(self, code: bytes) -> list[tuple[bytes, tuple[Redex, ...]]] | None:
        if code in self.h_memo:
            return self.h_memo[code]  # type: ignore[return-value]
        tag = codec.root_tag(code)
        if tag in (codec.LAM, codec.MU):
            return [(code, ())]
        if tag != codec.APP:
            return []
        if code in self.h_active or len(code) >> 2 > self.budget.max_size:
            return None
        self.tick()
        self.h_active.add(code)
        try:
            p, q = self.split(code)
            steps = self.root_steps(p, q)
            res: list[tuple[bytes, tuple[Redex, ...]]] | None = None
            if steps is not None:
                seen: dict[bytes, tuple[Redex, ...]] = {}
                for r, path in steps:
                    hr = self.head(r)
                    if hr is None:
                        break
                    for c, sub in hr:
                        seen.setdefault(c, path + sub)
                else:
                    res = list(seen.items())
        finally:
            self.h_active.discard(code)
        self.h_memo[code] = res
        return res

    def sn(self, code: bytes) -> object:
        """``True``, ``(witness, loop_start)`` or ``_INCONCLUSIVE``."""
        if code in self.sn_memo:
            return self.sn_memo[code]
        if code in self.active or len(code) >> 2 > self.budget.max_size:
            return _INCONCLUSIVE
        self.tick()
        self.active.add(code)
        try:
            res = self._sn(code)
        finally:
            self.active.discard(code)
        self.sn_memo[code] = res
        return res

    def _sn(self, code: bytes) -> object:
        leaf = analyse_graph(build_graph(code, self.rules, _LEAF_NODES, self.budget.max_size))
        if isinstance(leaf, SN):
            return True
        if isinstance(leaf, NotSN):
            return (leaf.witness, leaf.loop_start)
        tag = codec.root_tag(code)
        if tag in (codec.LAM, codec.MU, codec.BNAMED, codec.FNAMED):
            return self.lift(self.sn(code[4:]), ("b",))
        if tag != codec.APP:
            return True
        p, q = self.split(code)
        for part, d in ((p, "l"), (q, "r")):
            r = self.sn(part)
            if r is not True:
                return self.lift(r, (d,))
        steps = self.root_steps(p, q)
        if steps is None:
            return _INCONCLUSIVE
        verdict: object = True
        for c, path in steps:
            r = self.sn(c)
            if isinstance(r, tuple):
                return (path + r[0], r[1] + len(path))
            if r is not True:
                verdict = _INCONCLUSIVE
        return verdict

    @staticmethod
    def lift(r: object, pre: tuple[str, ...]) -> object:
        if isinstance(r, tuple):
            return (_prefix(r[0], pre), r[1])
        return r


def sn_decompose(m: Term | bytes, rules: RuleSet, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """SN certification by decomposing applications; ``budget.max_nodes`` bounds the sub-problems.

    A cycle found in a sub-problem is returned as a cycle of ``m`` itself.
    """
    code = m if isinstance(m, bytes) else codec.encode(m)
    d = _Decomposer(rules, budget)
    try:
        r = d.sn(code)
    except _OutOfBudget:
        r = _INCONCLUSIVE
    if r is True:
        return SN(None, (), d.calls, method="decompose")
    if isinstance(r, tuple):
        return NotSN(tuple(r[0]), r[1], d.calls)
    return Exhausted(0, max((len(c) >> 2 for c in d.sn_memo), default=0), d.calls)


def eta(m: Term, rules: RuleSet, budget: Budget = DEFAULT_BUDGET) -> int | None:
    """Longest reduction length, or ``None`` when SN is not certified."""
    v = sn_check(m, rules, budget)
    return v.eta if isinstance(v, SN) else None


def eta_c(m: Term, rules: RuleSet, budget: Budget = DEFAULT_BUDGET) -> tuple[int, int] | None:
    e = eta(m, rules, budget)
    return None if e is None else (e, cxty(m))


# ---------------------------------------------------------------- replay


def replay(m: Term, path: Iterable[Redex]) -> list[Term]:
    """Reducts along ``path`` starting with ``m``; raises ``StaleRedex`` on a bad step."""
    out = [m]
    for r in path:
        out.append(step(out[-1], r))
    return out


def verify_verdict(m: Term, v: Verdict, rules: RuleSet) -> bool:
    """Replay a certificate: a cycle must close, a longest path must end in a normal form."""
    from .reduce import is_normal

    if isinstance(v, NotSN):
        if not v.witness or any(r.rule not in rules for r in v.witness):
            return False
        ts = replay(m, v.witness)
        return alpha_eq(ts[-1], ts[v.loop_start])
    if isinstance(v, SN):
        if v.eta is None:
            return v.method == "decompose"
        if any(r.rule not in rules for r in v.longest_path) or len(v.longest_path) != v.eta:
            return False
        return is_normal(replay(m, v.longest_path)[-1], rules)
    return False


def verdict_line(m: Term, v: Verdict) -> str:
    """One machine-readable line: verdict, eta, cxty, nodes explored."""
    e = v.eta if isinstance(v, SN) and v.eta is not None else "-"
    return f"verdict={v.kind} eta={e} cxty={cxty(m)} nodes={v.nodes}"


def write_script(m: Term, rules: RuleSet, v: Verdict) -> str:
    """Redex-sequence script replayable with :func:`replay_script` (and the CLI)."""
    lines = [f"term: {show(m)}", f"rules: {rules}"]
    if isinstance(v, NotSN):
        lines.append(f"expect: cycle {v.loop_start}")
        path = v.witness
    elif isinstance(v, SN):
        lines.append("expect: normal")
        path = v.longest_path
    else:
        raise ValueError("exhausted verdicts carry no witness")
    lines += [f"{format_position(r.position)} {r.rule.label}" for r in path]
    return "\n".join(lines) + "\n"


@dataclass
class ReplayResult:
    ok: bool
    message: str
    terms: list[Term] = field(default_factory=list)


def replay_script(text: str) -> ReplayResult:
    """Run a script; ``expect: cycle K`` requires the last reduct to equal reduct ``K``."""
    from .reduce import StaleRedex, is_normal

    header: dict[str, str] = {}
    steps: list[Redex] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if sep and key in ("term", "rules", "expect"):
            header[key] = rest.strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {n}: expected 'POSITION RULE'")
        steps.append(Redex(parse_position(parts[0]), Rule.parse(parts[1])))
    if "term" not in header:
        raise ValueError("script has no 'term:' line")
    m = parse(header["term"])
    rules = RuleSet.parse(header.get("rules", "all"))
    for k, r in enumerate(steps):
        if r.rule not in rules:
            return ReplayResult(False, f"step {k + 1} uses {r.rule.label} outside {rules}")
    try:
        ts = replay(m, steps)
    except StaleRedex as exc:
        return ReplayResult(False, f"step failed: {exc}")
    expect = header.get("expect", "")
    if expect.startswith("cycle"):
        k = int(expect.split()[1]) if len(expect.split()) > 1 else 0
        if not steps or not 0 <= k < len(ts) - 1 or not alpha_eq(ts[-1], ts[k]):
            return ReplayResult(False, f"last reduct does not repeat reduct {k}", ts)
        return ReplayResult(True, f"cycle of length {len(ts) - 1 - k} after {k} steps", ts)
    if expect == "normal":
        if not is_normal(ts[-1], rules):
            return ReplayResult(False, "last reduct is not normal", ts)
        return ReplayResult(True, f"normal form after {len(steps)} steps", ts)
    return ReplayResult(True, f"{len(steps)} steps replayed", ts)


# ---------------------------------------------------------------- oracle cross-check


def engine_reducts(m: Term, rules: RuleSet, route: str = "kernel") -> list[Term]:
    """One reduct per redex: through the code kernel or through named-term substitution."""
    from . import kernel
    from .reduce import redexes

    if route == "kernel":
        return [codec.decode(c) for _, _, c in kernel.successors(codec.encode(m), rules.mask)]
    return [step(m, r) for r in redexes(m, rules)]


def cross_check(terms: Iterable[Term], rule_sets: Iterable[RuleSet]) -> tuple[int, list[tuple[Term, RuleSet, str]]]:
    """Compare the naive interpreter with both engine routes; returns (comparisons, mismatches)."""
    from .naive import agree

    rule_sets = list(rule_sets)
    n = 0
    bad: list[tuple[Term, RuleSet, str]] = []
    for m in terms:
        for rules in rule_sets:
            for route in ("kernel", "named"):
                n += 1
                if not agree(m, engine_reducts(m, rules, route), rules):
                    bad.append((m, rules, route))
    return n, bad


# ---------------------------------------------------------------- counter-examples


def counterexample_terms() -> dict[str, Term]:
    zero = parse(r"\x. \y. y")
    one = parse(r"\x. \y. x")
    delta = parse(r"\x. x x")
    body = apps(
        Var("y"),
        apps(Var("z"), one, zero),
        apps(Var("z"), zero, one),
        Lam("d", one),
        delta,
        delta,
    )
    p = Lam("x", Lam("y", Lam("z", body)))
    m0 = Lam("x", apps(Var("x"), p, zero))
    m1 = Lam("x", apps(Var("x"), p, one))
    f = Var("f")
    big_m = Lam("f", apps(f, apps(Var("x"), m1), apps(Var("x"), m0)))
    big_m2 = parse(r"\f. f ([b] \x. x M1) ([b] \x. x M0)")
    big_m2 = _plug(big_m2, {"M1": m1, "M0": m0})
    n = parse(r"[a] \z. [a] z")
    mu_n = Mu("a", n)
    return {
        "0": zero, "1": one, "Delta": delta, "P": p, "M0": m0, "M1": m1,
        "M": big_m, "M'": big_m2, "N": n,
        "(M0 M0)": apps(m0, m0), "(M1 M1)": apps(m1, m1),
        "(M0 M1)": apps(m0, m1), "(M1 M0)": apps(m1, m0),
        "M[x:=mu a.N]": subst_beta(big_m, "x", mu_n),
        "(\\x.M mu a.N)": apps(Lam("x", big_m), mu_n),
        "M'[b=_r mu a.N]": subst_mu_right(big_m2, "b", mu_n),
        "(mu b.M' mu a.N)": apps(Mu("b", big_m2), mu_n),
    }


def _plug(m: Term, env: dict[str, Term]) -> Term:
    for k, v in env.items():
        m = subst_beta(m, k, v)
    return m


COUNTEREXAMPLE_CLAIMS: tuple[tuple[str, str, str], ...] = (
    ("a", "M[x:=mu a.N]", "SN"),
    ("a", "(\\x.M mu a.N)", "NotSN"),
    ("b", "M'[b=_r mu a.N]", "SN"),
    ("b", "(mu b.M' mu a.N)", "NotSN"),
    ("c", "(M0 M0)", "SN"),
    ("c", "(M1 M1)", "SN"),
    ("c", "(M1 M0)", "NotSN"),
    ("c", "(M0 M1)", "NotSN"),
)


@dataclass
class ClaimResult:
    group: str
    name: str
    term: Term
    expected: str
    verdict: Verdict
    escalated: bool
    replayed: bool

    @property
    def ok(self) -> bool:
        return self.verdict.kind == self.expected and self.replayed

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = " (escalated)" if self.escalated else ""
        if isinstance(self.verdict, SN) and self.verdict.method != "graph":
            extra += f" [{self.verdict.method}]"
        return f"{status} ({self.group}) {self.name}: expected {self.expected}, got {self.verdict.kind}{extra}; {verdict_line(self.term, self.verdict)}"


@dataclass
class SuiteReport:
    results: list[ClaimResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def render(self) -> str:
        return "\n".join(r.line() for r in self.results)


def counterexample_suite(rules: RuleSet = ALL, budget: Budget = DEFAULT_BUDGET, escalation: int = 10,
                         method: str = "auto") -> SuiteReport:
    """Check every claim; an exhausted verdict is retried once at ``escalation`` times the budget."""
    terms = counterexample_terms()
    out = []
    for group, name, expected in COUNTEREXAMPLE_CLAIMS:
        t = terms[name]
        v = sn_check(t, rules, budget, method)
        escalated = False
        if isinstance(v, Exhausted) and escalation > 1:
            v = sn_check(t, rules, budget.scaled(escalation), method)
            escalated = True
        out.append(ClaimResult(group, name, t, expected, v, escalated, verify_verdict(t, v, rules)))
    return SuiteReport(out)


# ---------------------------------------------------------------- property drivers


@dataclass
class PropertyReport:
    label: str
    instances: int = 0
    sn: int = 0
    not_sn: int = 0
    exhausted: int = 0
    skipped: int = 0
    falsifications: list[tuple[Term, Verdict]] = field(default_factory=list)
    exhausted_terms: list[Term] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, m: Term, v: Verdict) -> None:
        self.instances += 1
        if isinstance(v, SN):
            self.sn += 1
        elif isinstance(v, NotSN):
            self.not_sn += 1
            self.falsifications.append((m, v))
        else:
            self.exhausted += 1
            if len(self.exhausted_terms) < 20:
                self.exhausted_terms.append(m)

    @property
    def ok(self) -> bool:
        return self.not_sn == 0 and not self.notes_failures

    @property
    def notes_failures(self) -> bool:
        return any(n.startswith("FAIL") for n in self.notes)

    @property
    def exhausted_rate(self) -> float:
        return self.exhausted / self.instances if self.instances else 0.0

    def render(self) -> str:
        lines = [
            f"{self.label}: instances={self.instances} sn={self.sn} notsn={self.not_sn} "
            f"exhausted={self.exhausted} ({100 * self.exhausted_rate:.2f}%) skipped={self.skipped}"
        ]
        for m, v in self.falsifications[:10]:
            lines.append(f"  falsified by {show(m)}")
            if isinstance(v, NotSN):
                lines.append("  " + write_script(m, RuleSet.parse("all"), v).replace("\n", "\n  ").rstrip())
        lines += [f"  {n}" for n in self.notes]
        return "\n".join(lines)


EXHAUSTIVE_CONFIG = GenConfig(max_size=6, free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"))
TYPED_CONFIG = GenConfig(max_size=25, free_lambda_pool=("x", "y"), free_mu_pool=("a",), typed=True, type_depth=3)
HEAD_CONFIG = GenConfig(max_size=12, free_lambda_pool=("x", "y"), free_mu_pool=("a",))


def sn_exhaustive(config: GenConfig = EXHAUSTIVE_CONFIG, rules: RuleSet = MU_MU_PRIME,
              budget: Budget = DEFAULT_BUDGET) -> PropertyReport:
    """Every enumerated term is SN under the given rules (default mu and mu')."""
    rep = PropertyReport(f"exhaustive[{rules}]")
    for c in enumerate_codes(config):
        v = sn_check(c, rules, budget)
        if isinstance(v, SN):
            rep.sn += 1
            rep.instances += 1
        else:
            rep.record(codec.decode(c), v)
    return rep


def sn_typed(samples: int = 500, config: GenConfig = TYPED_CONFIG, rules: RuleSet = ALL,
              budget: Budget = DEFAULT_BUDGET, subject_reduction: bool = False) -> PropertyReport:
    """Generated typed terms are SN; optionally recheck every reduct's type."""
    rep = PropertyReport(f"typed[{rules}]")
    r = random.Random(config.seed)
    violations = 0
    for _ in range(samples):
        s = random_typed(config, r)
        g = build_graph(s.term, rules, budget.max_nodes, budget.max_size)
        v = analyse_graph(g)
        if isinstance(v, Exhausted):
            v = sn_check(s.term, rules, budget, "decompose")
        rep.record(s.term, v)
        if subject_reduction and g.complete:
            sr = subject_reduction_check(s.ctx, s.term, s.type, rules, budget.max_nodes, budget.max_size)
            if not sr.ok:
                violations += 1
                rep.notes.append(f"FAIL subject reduction for {show(s.term)}: {sr.violations[0][1]}")
    if subject_reduction:
        rep.notes.append(f"subject reduction violations: {violations}")
    return rep


def sn_head_variable(samples: int = 200, config: GenConfig = HEAD_CONFIG, arities: tuple[int, ...] = (1, 2, 3),
              rules: RuleSet = ALL, budget: Budget = DEFAULT_BUDGET, head: str = "x") -> PropertyReport:
    """``(head M1 .. Mn)`` is SN whenever every ``Mi`` is certified SN."""
    rep = PropertyReport(f"head-variable[{rules}]")
    r = random.Random(config.seed)
    pool: list[Term] = []
    attempts = 0
    while len(pool) < 4 * samples and attempts < 200 * samples:
        attempts += 1
        t = random_term(config, r)
        if isinstance(sn_check(t, rules, budget, "auto"), SN):
            pool.append(t)
        else:
            rep.skipped += 1
    if not pool:
        rep.notes.append("FAIL no SN-certified components found")
        return rep
    for k in range(samples):
        n = arities[k % len(arities)]
        args = [r.choice(pool) for _ in range(n)]
        t = apps(Var(head), *args)
        rep.record(t, sn_check(t, rules, budget, "auto"))
    return rep


PROPERTY_DRIVERS = {"exhaustive": sn_exhaustive, "typed": sn_typed, "head": sn_head_variable}


def property_driver(name: str, **kwargs) -> PropertyReport:  # type: ignore[no-untyped-def]
    if name not in PROPERTY_DRIVERS:
        raise ValueError(f"unknown driver {name!r}; choose from {', '.join(PROPERTY_DRIVERS)}")
    return PROPERTY_DRIVERS[name](**kwargs)
