"""One-step reduction, reduction graphs and the sub-term-of-a-reduct order.

Three rules, each contracting an application node::

    beta   (\\x. M) N        ->  M[x := N]
    mu     (mu a. M) N      ->  mu a. M[a =_r N]
    mu'    M (mu a. N)      ->  mu a. N[a =_l M]

``(mu a. M) (mu b. N)`` carries both a ``mu`` and a ``mu'`` redex.  Redexes
are listed leftmost-outermost (pre-order; at one node beta, mu, mu').

Named-term operations (:func:`redexes`, :func:`step`, :func:`successors`) go
through :mod:`lambdamu.subst`.  Graph construction runs on canonical codes
through :mod:`lambdamu.kernel`, so alpha-equal terms share one node.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

from . import codec, kernel
from .codec import APP, BNAMED, BVAR, FNAMED, FVAR, LAM, MU, TAG_MASK
from .subst import mu_apart, subst_beta, subst_mu_left, subst_mu_right
from .terms import (
    App,
    Lam,
    Mu,
    Position,
    Term,
    format_position,
    positions,
    replace_at_position,
    subterm_at_position,
)
from .terms import Mu as MuTerm
from .syntax import show

DEFAULT_MAX_NODES = 50_000
DEFAULT_MAX_SIZE = 2_000

Answer = Literal["yes", "no", "unknown"]


class Rule(enum.IntEnum):
    BETA = kernel.BETA
    MU = kernel.MU
    MU_PRIME = kernel.MU_PRIME

    @property
    def label(self) -> str:
        return {1: "beta", 2: "mu", 4: "mu'"}[self.value]

    @property
    def symbol(self) -> str:
        return {1: "β", 2: "μ", 4: "μ′"}[self.value]

    @classmethod
    def parse(cls, text: str) -> Rule:
        key = text.strip().lower()
        for rule, names in _RULE_NAMES.items():
            if key in names:
                return rule
        raise ValueError(f"unknown rule {text!r}")


_RULE_NAMES = {
    Rule.BETA: {"b", "beta", "β"},
    Rule.MU: {"mu", "μ", "m"},
    Rule.MU_PRIME: {"mu'", "μ'", "μ′", "mup", "mu_prime", "m'"},
}


@dataclass(frozen=True)
class RuleSet:
    """A non-empty set of enabled rules."""

    rules: frozenset[Rule]

    def __post_init__(self) -> None:
        if not self.rules:
            raise ValueError("a rule set must enable at least one rule")

    @classmethod
    def of(cls, *rules: Rule) -> RuleSet:
        return cls(frozenset(rules))

    @classmethod
    def parse(cls, text: str) -> RuleSet:
        """``bmu`` (all three), ``mu-mu'``, ``b``, ``b-mu``, ``mu``; ``-``, ``,`` or ``+`` separate."""
        t = text.strip()
        if t.lower() in ("bmu", "bmumu'", "all", "βμμ′", "βμμ'"):
            return ALL
        parts = [p for p in t.replace(",", "-").replace("+", "-").split("-") if p]
        return cls(frozenset(Rule.parse(p) for p in parts))

    @property
    def mask(self) -> int:
        m = 0
        for r in self.rules:
            m |= int(r)
        return m

    def __contains__(self, rule: object) -> bool:
        return rule in self.rules

    def __str__(self) -> str:
        return "-".join(r.label for r in sorted(self.rules))


ALL = RuleSet.of(Rule.BETA, Rule.MU, Rule.MU_PRIME)
MU_MU_PRIME = RuleSet.of(Rule.MU, Rule.MU_PRIME)
BETA_MU = RuleSet.of(Rule.BETA, Rule.MU)
BETA_ONLY = RuleSet.of(Rule.BETA)
MU_ONLY = RuleSet.of(Rule.MU)


class StaleRedex(ValueError):
    """The redex does not occur in the term it is applied to."""


@dataclass(frozen=True)
class Redex:
    position: Position
    rule: Rule

    def __str__(self) -> str:
        return f"{format_position(self.position)} {self.rule.label}"


def redexes(m: Term, rules: RuleSet) -> list[Redex]:
    out = []
    for p, t in positions(m):
        if not isinstance(t, App):
            continue
        if isinstance(t.fun, Lam) and Rule.BETA in rules:
            out.append(Redex(p, Rule.BETA))
        elif isinstance(t.fun, Mu) and Rule.MU in rules:
            out.append(Redex(p, Rule.MU))
        if isinstance(t.arg, Mu) and Rule.MU_PRIME in rules:
            out.append(Redex(p, Rule.MU_PRIME))
    return out


def contract_root(t: Term, rule: Rule) -> Term:
    """Contract the redex ``rule`` at the root of ``t``."""
    if isinstance(t, App):
        if rule is Rule.BETA and isinstance(t.fun, Lam):
            return subst_beta(t.fun.body, t.fun.binder, t.arg)
        # the binder must not capture free mu-names of the other side
        if rule is Rule.MU and isinstance(t.fun, Mu):
            f = mu_apart(t.fun, t.arg)
            return MuTerm(f.binder, subst_mu_right(f.body, f.binder, t.arg))
        if rule is Rule.MU_PRIME and isinstance(t.arg, Mu):
            a = mu_apart(t.arg, t.fun)
            return MuTerm(a.binder, subst_mu_left(a.body, a.binder, t.fun))
    raise StaleRedex(f"no {rule.label} redex at the root of {show(t)}")


def step(m: Term, r: Redex) -> Term:
    try:
        sub = subterm_at_position(m, r.position)
    except ValueError as exc:
        raise StaleRedex(str(exc)) from None
    try:
        reduct = contract_root(sub, r.rule)
    except StaleRedex:
        raise StaleRedex(f"no {r.rule.label} redex at {format_position(r.position)}") from None
    return replace_at_position(m, r.position, reduct)


def successors(m: Term, rules: RuleSet) -> list[Term]:
    """One-step reducts of ``m`` in redex order, alpha-duplicates dropped."""
    seen: set[bytes] = set()
    out = []
    for r in redexes(m, rules):
        t = step(m, r)
        c = codec.encode(t)
        if c not in seen:
            seen.add(c)
            out.append(t)
    return out


def is_normal(m: Term, rules: RuleSet) -> bool:
    return not kernel.redexes(codec.encode(m), rules.mask)


# ---------------------------------------------------------------- codes


def offset_to_position(code: bytes | list[int], offset: int) -> Position:
    words = code if isinstance(code, list) else codec.to_words(code)
    ends = codec.subtree_ends(words)
    path: list[str] = []
    i = 0
    while i != offset:
        tag = words[i] & TAG_MASK
        if tag == APP:
            if offset < ends[i + 1]:
                path.append("l")
                i += 1
            else:
                path.append("r")
                i = ends[i + 1]
        elif tag in (BVAR, FVAR) or not (i < offset < ends[i]):
            raise ValueError("offset outside term")
        else:
            path.append("b")
            i += 1
    return tuple(path)


def position_to_offset(code: bytes | list[int], p: Position) -> int:
    words = code if isinstance(code, list) else codec.to_words(code)
    ends = codec.subtree_ends(words)
    i = 0
    for d in p:
        tag = words[i] & TAG_MASK
        if tag == APP and d == "l":
            i += 1
        elif tag == APP and d == "r":
            i = ends[i + 1]
        elif d == "b" and tag in (LAM, MU, BNAMED, FNAMED):
            i += 1
        else:
            raise StaleRedex(f"position {format_position(p)} not in term")
    return i


def step_code(code: bytes, r: Redex) -> bytes:
    """Kernel counterpart of :func:`step` on a canonical code."""
    try:
        return kernel.contract(code, position_to_offset(code, r.position), int(r.rule))
    except ValueError as exc:
        raise StaleRedex(str(exc)) from None


# ---------------------------------------------------------------- graphs


@dataclass
class ReductionGraph:
    """Reduction graph over alpha-classes; node 0 is the root.

    ``edges[i]`` lists ``(offset, rule, target)``.  Nodes at index
    ``>= expanded`` were discovered but not expanded.  ``complete`` holds when
    every node was expanded and no reduct was dropped for exceeding the size cap.
    """

    rules: RuleSet
    nodes: list[bytes] = field(default_factory=list)
    index: dict[bytes, int] = field(default_factory=dict)
    edges: list[list[tuple[int, Rule, int]]] = field(default_factory=list)
    expanded: int = 0
    complete: bool = False
    max_size_seen: int = 0
    oversize: bool = False

    @property
    def root(self) -> int:
        return 0

    @property
    def status(self) -> str:
        return "complete" if self.complete else "truncated"

    def __len__(self) -> int:
        return len(self.nodes)

    def term(self, i: int) -> Term:
        return codec.decode(self.nodes[i])

    def redex(self, i: int, edge: tuple[int, Rule, int]) -> Redex:
        return Redex(offset_to_position(self.nodes[i], edge[0]), edge[1])

    def normal_forms(self) -> list[int]:
        return [i for i in range(self.expanded) if not self.edges[i]]

    def find(self, m: Term | bytes) -> int | None:
        return self.index.get(m if isinstance(m, bytes) else codec.encode(m))


def build_graph(
    m: Term | bytes,
    rules: RuleSet,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_size: int = DEFAULT_MAX_SIZE,
) -> ReductionGraph:
    """Breadth-first closure of the one-step relation from ``m``."""
    root = m if isinstance(m, bytes) else codec.encode(m)
    g = ReductionGraph(rules)
    g.nodes.append(root)
    g.index[root] = 0
    g.max_size_seen = codec.size(root)
    mask = rules.mask
    succ = kernel.successors
    truncated = False
    while g.expanded < len(g.nodes):
        i = g.expanded
        out: list[tuple[int, Rule, int]] = []
        pending: list[tuple[int, int, bytes]] = []
        for off, r, c in succ(g.nodes[i], mask):
            n = len(c) >> 2
            if n > max_size:
                g.oversize = True
                truncated = True
                continue
            if n > g.max_size_seen:
                g.max_size_seen = n
            pending.append((off, r, c))
        new = sum(1 for _, _, c in pending if c not in g.index)
        if len(g.nodes) + new > max_nodes:
            truncated = True
            break
        for off, r, c in pending:
            j = g.index.get(c)
            if j is None:
                j = len(g.nodes)
                g.index[c] = j
                g.nodes.append(c)
            out.append((off, Rule(r), j))
        g.edges.append(out)
        g.expanded += 1
    g.complete = not truncated and g.expanded == len(g.nodes)
    return g


def reachable(g: ReductionGraph, start: int = 0) -> set[int]:
    seen = {start}
    todo = deque([start])
    while todo:
        i = todo.popleft()
        if i >= g.expanded:
            continue
        for _, _, j in g.edges[i]:
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return seen


def reduces_to(
    m: Term, n: Term, rules: RuleSet, max_nodes: int = DEFAULT_MAX_NODES, max_size: int = DEFAULT_MAX_SIZE
) -> Answer:
    """Whether ``m ->* n`` (reflexive-transitive), up to alpha."""
    g = build_graph(m, rules, max_nodes, max_size)
    if g.find(n) is not None:
        return "yes"
    return "no" if g.complete else "unknown"


# ---------------------------------------------------------------- sub-terms of reducts


def _depths(words: list[int], ends: list[int], start: int, stop: int) -> list[tuple[int, int]]:
    out = []
    ls: list[int] = []
    ms: list[int] = []
    for i in range(start, stop):
        while ls and ls[-1] <= i:
            ls.pop()
        while ms and ms[-1] <= i:
            ms.pop()
        out.append((len(ls), len(ms)))
        tag = words[i] & TAG_MASK
        if tag == LAM:
            ls.append(ends[i])
        elif tag == MU:
            ms.append(ends[i])
    return out


def occurs_in(n: Term | bytes, host: bytes, strict: bool = False) -> bool:
    """Whether ``n`` is a sub-term of ``host`` up to alpha.

    An occurrence under binders of ``host`` may use those bound names; they
    are matched against distinct free names of ``n`` that are not free in the
    occurrence itself.
    """
    nw = codec.to_words(n if isinstance(n, bytes) else codec.encode(n))
    hw = codec.to_words(host)
    ends = codec.subtree_ends(hw)
    k = len(nw)
    for s in range(1 if strict else 0, len(hw)):
        if ends[s] - s == k and _match_open(nw, hw, ends, s):
            return True
    return False


def _match_open(nw: list[int], hw: list[int], ends: list[int], s: int) -> bool:
    depths = _depths(hw, ends, s, ends[s])
    genuine = {w for w in hw[s:ends[s]] if w & TAG_MASK in (FVAR, FNAMED)}
    fwd: dict[tuple[int, int], int] = {}
    back: dict[int, tuple[int, int]] = {}
    for j, (a, (dl, dm)) in enumerate(zip(nw, depths)):
        b = hw[s + j]
        if a == b and b & TAG_MASK not in (BVAR, BNAMED):
            continue
        tb = b & TAG_MASK
        ta = a & TAG_MASK
        if tb == BVAR and (b >> 3) < dl or tb == BNAMED and (b >> 3) < dm:
            if a != b:
                return False
            continue
        if tb == BVAR and ta == FVAR:
            key = (BVAR, (b >> 3) - dl)
        elif tb == BNAMED and ta == FNAMED:
            key = (BNAMED, (b >> 3) - dm)
        else:
            return False
        if a in genuine:
            return False
        if fwd.setdefault(key, a) != a or back.setdefault(a, key) != key:
            return False
    return True


def precedes(
    n: Term,
    m: Term,
    rules: RuleSet,
    strict: bool = False,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_size: int = DEFAULT_MAX_SIZE,
) -> Answer:
    """``n`` below ``m``: a sub-term of some reduct of ``m``.

    With ``strict`` the reduct must be reached in at least one step or the
    occurrence must be a strict sub-term.
    """
    g = build_graph(m, rules, max_nodes, max_size)
    nc = codec.encode(n)
    plus = _reachable_plus(g)
    for i, host in enumerate(g.nodes):
        if strict and i not in plus:
            if occurs_in(nc, host, strict=True):
                return "yes"
        elif occurs_in(nc, host):
            return "yes"
    return "no" if g.complete else "unknown"


def _reachable_plus(g: ReductionGraph) -> set[int]:
    out: set[int] = set()
    todo = deque(j for _, _, j in (g.edges[0] if g.expanded else []))
    while todo:
        j = todo.popleft()
        if j in out:
            continue
        out.add(j)
        if j < g.expanded:
            todo.extend(k for _, _, k in g.edges[j])
    return out


# ---------------------------------------------------------------- export


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: ReductionGraph, unicode: bool = True) -> str:
    """Graphviz rendering: nodes show the printed term, edges the rule and position."""
    lines = ["digraph reductions {", '  node [shape=box, fontname="monospace"];']
    for i in range(len(g.nodes)):
        label = _dot_escape(show(g.term(i), unicode=unicode))
        extra = ", style=dashed" if i >= g.expanded else ""
        extra += ", peripheries=2" if i == 0 else ""
        lines.append(f'  n{i} [label="{label}"{extra}];')
    for i in range(g.expanded):
        for edge in g.edges[i]:
            r = g.redex(i, edge)
            lab = f"{r.rule.symbol if unicode else r.rule.label} @ {format_position(r.position)}"
            lines.append(f'  n{i} -> n{edge[2]} [label="{_dot_escape(lab)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_nodes_as_terms(g: ReductionGraph, which: Iterable[int] | None = None) -> list[Term]:
    return [g.term(i) for i in (range(len(g.nodes)) if which is None else which)]
