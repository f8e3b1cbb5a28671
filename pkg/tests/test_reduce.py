import pytest
from hypothesis import given

from lambdamu.reduce import (
    ALL,
    BETA_ONLY,
    MU_MU_PRIME,
    Redex,
    Rule,
    RuleSet,
    StaleRedex,
    build_graph,
    is_normal,
    precedes,
    reachable,
    reduces_to,
    redexes,
    step,
    successors,
    to_dot,
)
from lambdamu.syntax import parse
from lambdamu.terms import alpha_eq

from conftest import terms

p = parse
PAIR = p("(mu a. x) (mu b. y)")
DELTA2 = p(r"(\x. x x) (\x. x x)")


def test_rule_set_parsing():
    assert RuleSet.parse("all") == ALL
    assert RuleSet.parse("bmu") == ALL
    assert RuleSet.parse("mu-mu'") == MU_MU_PRIME
    assert RuleSet.parse("mu,mu'") == MU_MU_PRIME
    assert RuleSet.parse("b") == BETA_ONLY
    with pytest.raises(ValueError):
        RuleSet.parse("gamma")


def test_redexes():
    assert redexes(p(r"(\x. x) y"), BETA_ONLY) == [Redex((), Rule.BETA)]
    assert redexes(PAIR, MU_MU_PRIME) == [Redex((), Rule.MU), Redex((), Rule.MU_PRIME)]
    assert redexes(p("x"), ALL) == []


def test_step():
    assert alpha_eq(step(PAIR, Redex((), Rule.MU)), p("mu a. x"))
    assert alpha_eq(step(PAIR, Redex((), Rule.MU_PRIME)), p("mu b. y"))
    m = p(r"(\z. x) (mu b. y)")
    assert step(m, Redex((), Rule.BETA)) == p("x")
    assert alpha_eq(step(m, Redex((), Rule.MU_PRIME)), p("mu b. y"))


def test_stale_redex():
    with pytest.raises(StaleRedex):
        step(p("x y"), Redex((), Rule.BETA))
    with pytest.raises(StaleRedex):
        step(p("x"), Redex(("l",), Rule.BETA))


def test_successors():
    got = successors(PAIR, MU_MU_PRIME)
    assert len(got) == 2
    assert {str(t) for t in got} == {"mu a. x", "mu b. y"}
    assert successors(p(r"\x. x"), ALL) == []
    assert successors(DELTA2, BETA_ONLY) == [DELTA2]


def test_graphs():
    g = build_graph(p("x"), ALL)
    assert len(g) == 1 and g.complete
    g = build_graph(DELTA2, BETA_ONLY)
    assert len(g) == 1 and g.complete and g.edges[0][0][2] == 0
    g = build_graph(PAIR, MU_MU_PRIME)
    assert len(g) == 3 and g.complete and len(g.normal_forms()) == 2


def test_graph_truncation():
    g = build_graph(p(r"(\x. x x x) (\x. x x x)"), BETA_ONLY, max_nodes=5)
    assert not g.complete
    g = build_graph(p(r"(\x. x x x) (\x. x x x)"), BETA_ONLY, max_size=10)
    assert not g.complete and g.oversize


def test_reduces_to():
    assert reduces_to(PAIR, PAIR, ALL) == "yes"
    assert reduces_to(PAIR, p("mu a. x"), MU_MU_PRIME) == "yes"
    assert reduces_to(p("mu a. x"), p("mu b. y"), ALL) == "no"


def test_precedes():
    assert precedes(PAIR, PAIR, ALL) == "yes"
    assert precedes(PAIR, PAIR, ALL, strict=True) == "no"
    assert precedes(p("x"), PAIR, ALL, strict=True) == "yes"
    assert precedes(p("mu b. y"), PAIR, MU_MU_PRIME, strict=True) == "yes"
    assert precedes(p("z"), PAIR, ALL) == "no"


def test_dot_export():
    dot = to_dot(build_graph(PAIR, MU_MU_PRIME))
    assert dot.startswith("digraph")
    assert dot.count("->") == 2
    assert "μ" in dot


@given(terms(14))
def test_edges_are_one_step_reducts(m):
    g = build_graph(m, ALL, max_nodes=200, max_size=60)
    for i in range(g.expanded):
        for e in g.edges[i]:
            assert alpha_eq(step(g.term(i), g.redex(i, e)), g.term(e[2]))


@given(terms(14))
def test_normal_iff_no_redexes(m):
    assert is_normal(m, ALL) == (not redexes(m, ALL))
    assert len(redexes(m, ALL)) >= len(successors(m, ALL))


@given(terms(12))
def test_every_node_reachable(m):
    g = build_graph(m, ALL, max_nodes=200, max_size=60)
    assert reachable(g) == set(range(len(g)))


@pytest.mark.parametrize("src, rule, expect", [
    ("([a] x) (mu a. [a] x)", Rule.MU_PRIME, "mu b. [b] ([a] x) x"),
    ("(mu a. [a] x) ([a] y)", Rule.MU, "mu b. [b] x ([a] y)"),
])
def test_mu_binder_renamed_apart(src, rule, expect):
    assert alpha_eq(step(p(src), Redex((), rule)), p(expect))
