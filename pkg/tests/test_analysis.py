import pytest
from hypothesis import given

from lambdamu import analysis
from lambdamu.analysis import (
    SN,
    Budget,
    Exhausted,
    NotSN,
    counterexample_terms,
    eta,
    eta_c,
    replay,
    replay_script,
    sn_check,
    verdict_line,
    verify_verdict,
    write_script,
)
from lambdamu.gen import GenConfig, enumerate_codes, random_terms
from lambdamu.reduce import ALL, BETA_ONLY, MU_MU_PRIME, MU_ONLY
from lambdamu.syntax import parse, show
from lambdamu.terms import alpha_eq

from conftest import terms

p = parse
DELTA2 = p(r"(\x. x x) (\x. x x)")
PAIR = p("(mu a. x) (mu b. y)")


def test_normal_form():
    v = sn_check(p("x"), ALL)
    assert isinstance(v, SN) and v.eta == 0


def test_self_loop():
    v = sn_check(DELTA2, BETA_ONLY)
    assert isinstance(v, NotSN)
    assert len(v.witness) - v.loop_start == 1
    assert verify_verdict(DELTA2, v, BETA_ONLY)


def test_mu_pair():
    v = sn_check(PAIR, MU_MU_PRIME)
    assert isinstance(v, SN) and v.eta == 1


@pytest.mark.parametrize("src, rules, n", [
    ("x", ALL, 0),
    (r"(\x. x) y", BETA_ONLY, 1),
    (r"(\x. x) ((\y. y) z)", BETA_ONLY, 2),
])
def test_eta(src, rules, n):
    assert eta(p(src), rules) == n
    assert eta_c(p(src), rules) == (n, len(analysis.codec.encode(p(src))) // 4)


def test_eta_undefined():
    assert eta(DELTA2, BETA_ONLY) is None


def test_exhausted():
    omega3 = p(r"(\x. x x x) (\x. x x x)")
    v = sn_check(omega3, BETA_ONLY, Budget(max_nodes=50, max_size=20))
    assert isinstance(v, Exhausted)
    assert verdict_line(omega3, v).startswith("verdict=Exhausted eta=-")


def test_verdict_line():
    assert verdict_line(PAIR, sn_check(PAIR, MU_MU_PRIME)) == "verdict=SN eta=1 cxty=5 nodes=3"


def test_witness_replays_to_cycle():
    t = counterexample_terms()["(M0 M1)"]
    v = sn_check(t, ALL)
    assert isinstance(v, NotSN)
    trace = replay(t, v.witness)
    assert alpha_eq(trace[-1], trace[v.loop_start])


def test_script_round_trip(tmp_path):
    t = counterexample_terms()["(M1 M0)"]
    v = sn_check(t, ALL)
    res = replay_script(write_script(t, ALL, v))
    assert res.ok and res.message.startswith("cycle")
    sn = sn_check(PAIR, MU_MU_PRIME)
    res = replay_script(write_script(PAIR, MU_MU_PRIME, sn))
    assert res.ok and "normal form after 1" in res.message


def test_script_detects_tampering():
    t = counterexample_terms()["(M1 M0)"]
    text = write_script(t, ALL, sn_check(t, ALL))
    lines = text.splitlines()
    assert not replay_script("\n".join(lines[:-1])).ok
    assert not replay_script(text.replace("rules: beta-mu-mu'", "rules: mu")).ok


def test_wrong_verdicts_rejected():
    assert not verify_verdict(DELTA2, SN(0, (), 1), BETA_ONLY)
    g = sn_check(PAIR, MU_MU_PRIME)
    assert not verify_verdict(PAIR, SN(2, g.longest_path, 3), MU_MU_PRIME)


def test_counterexample_terms_shape():
    t = counterexample_terms()
    assert show(t["Delta"]) == r"\x. x x"
    assert show(t["N"]) == r"[a] \z. [a] z"
    assert {"M0", "M1", "M", "M'", "P"} <= set(t)


@pytest.mark.parametrize("name, kind", [
    ("(M0 M0)", "SN"), ("(M1 M1)", "SN"), ("(M0 M1)", "NotSN"), ("(M1 M0)", "NotSN"),
])
def test_third_group(name, kind):
    t = counterexample_terms()[name]
    v = sn_check(t, ALL)
    assert v.kind == kind and verify_verdict(t, v, ALL)


DECOMPOSE_DOMAIN = list(enumerate_codes(GenConfig(max_size=5, free_lambda_pool=("x",), free_mu_pool=("a",))))


@pytest.mark.parametrize("rules", [ALL, MU_MU_PRIME])
def test_decompose_agrees_with_graph_enumerated(rules):
    for c in DECOMPOSE_DOMAIN:
        g = sn_check(c, rules, method="graph")
        d = sn_check(c, rules, method="decompose")
        if isinstance(g, Exhausted) or isinstance(d, Exhausted):
            continue
        assert g.kind == d.kind, show(analysis.codec.decode(c))


def test_decompose_agrees_with_graph_random():
    cfg = GenConfig(max_size=14, free_lambda_pool=("x", "y"), free_mu_pool=("a",), seed=4)
    budget = Budget(5_000, 200)
    checked = 0
    for t in random_terms(cfg, 400):
        g = sn_check(t, ALL, budget, "graph")
        d = sn_check(t, ALL, budget, "decompose")
        if isinstance(g, Exhausted) or isinstance(d, Exhausted):
            continue
        checked += 1
        assert g.kind == d.kind, show(t)
        if isinstance(d, NotSN):
            assert verify_verdict(t, d, ALL)
    assert checked > 300


@given(terms(10))
def test_verdicts_verify(m):
    v = sn_check(m, ALL, Budget(2_000, 100))
    if not isinstance(v, Exhausted):
        assert verify_verdict(m, v, ALL)


def test_unknown_method():
    with pytest.raises(ValueError):
        sn_check(p("x"), ALL, method="magic")


def test_property_drivers_small():
    rep = analysis.sn_exhaustive(GenConfig(max_size=4, **dict(free_lambda_pool=("x",), free_mu_pool=("a",))))
    assert rep.ok and rep.exhausted == 0 and rep.instances == 103
    rep = analysis.sn_exhaustive(GenConfig(max_size=4, free_lambda_pool=("x",), free_mu_pool=("a",)), rules=MU_ONLY)
    assert rep.ok
    assert analysis.sn_typed(30).ok
    assert analysis.sn_head_variable(20).ok
    with pytest.raises(ValueError):
        analysis.property_driver("nope")


def test_exhaustive_driver_detects_failure_under_beta():
    # beta alone is not SN on untyped terms, so the driver must report falsifications
    rep = analysis.sn_exhaustive(GenConfig(max_size=9, free_lambda_pool=("x",)), rules=BETA_ONLY)
    assert not rep.ok and rep.not_sn > 0
