"""Acceptance criteria 1-9, one PASS/FAIL line per criterion.

Each test prints its line straight to the terminal (outside pytest capture),
so ``pytest tests/test_acceptance.py`` shows the verdicts without ``-s``.
"""
import random
from itertools import combinations

import pytest

from lambdamu import analysis, lemmas
from lambdamu.analysis import Exhausted, NotSN, SN
from lambdamu.gen import GenConfig, enumerate_terms, random_terms, random_typed
from lambdamu.reduce import ALL, MU_MU_PRIME, MU_ONLY, Rule, RuleSet, build_graph, reduces_to
from lambdamu.syntax import parse
from lambdamu.typecheck import subject_reduction_check

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[acceptance {n}] {'PASS' if ok else 'FAIL'}: {detail}")

    return emit


def test_1_counterexample_suite(report):
    rep = analysis.counterexample_suite()
    for r in rep.results:
        assert r.replayed, r.line()
    for r in rep.results:
        if isinstance(r.verdict, NotSN):
            cyc = len(r.verdict.witness) - r.verdict.loop_start
            assert cyc >= 1
    failed = [r.line() for r in rep.results if not r.ok]
    report(1, rep.ok, f"{sum(r.ok for r in rep.results)}/{len(rep.results)} claims confirmed"
           + ("" if rep.ok else "; " + " | ".join(failed)))
    assert rep.ok, rep.render()


def test_2_exhaustive_mu_mu_prime(report):
    rep = analysis.sn_exhaustive(analysis.EXHAUSTIVE_CONFIG, MU_MU_PRIME)
    ok = rep.ok and rep.exhausted == 0 and rep.sn == rep.instances == 12641
    report(2, ok, rep.render().splitlines()[0])
    assert ok, rep.render()


TYPED_SAMPLES = 500


def test_3_typed_terms(report):
    rep = analysis.sn_typed(TYPED_SAMPLES, analysis.TYPED_CONFIG, ALL)
    ok = rep.instances >= 500 and rep.not_sn == 0 and rep.exhausted == 0
    report(3, ok, rep.render().splitlines()[0])
    assert ok, rep.render()


def test_4_head_variable_applications(report):
    rep = analysis.sn_head_variable(200, analysis.HEAD_CONFIG, (1, 2, 3))
    ok = rep.instances >= 200 and rep.sn == rep.instances
    report(4, ok, rep.render().splitlines()[0])
    assert ok, rep.render()


def test_5_decomposition_oracles(report):
    lines = []
    ok = True
    for key in lemmas.LEMMAS:
        rep = lemmas.run_lemma(key)
        lines.append(rep.render())
        ok &= rep.ok and rep.instances > 0
    summary = "; ".join(line.splitlines()[0].split(":")[0] for line in lines)
    report(5, ok, summary)
    assert ok, "\n".join(lines)


def test_6_subject_reduction(report):
    # same sample stream as criterion 3
    cfg = analysis.TYPED_CONFIG
    r = random.Random(cfg.seed)
    nodes = incomplete = 0
    violations = []
    for _ in range(TYPED_SAMPLES):
        s = random_typed(cfg, r)
        sr = subject_reduction_check(s.ctx, s.term, s.type, ALL)
        nodes += sr.nodes_checked
        incomplete += not sr.complete
        violations += sr.violations
    ok = not violations and incomplete == 0
    report(6, ok, f"{TYPED_SAMPLES} typed terms, {nodes} graph nodes rechecked, "
           f"{len(violations)} violations, {incomplete} incomplete graphs")
    assert ok, violations[:5]


def test_7_non_confluence(report):
    m = parse("(mu a. x) (mu b. y)")
    g = build_graph(m, MU_MU_PRIME)
    nfs = {g.nodes[i] for i in g.normal_forms()}
    expect = {analysis.codec.encode(parse("mu a. x")), analysis.codec.encode(parse("mu b. y"))}
    first = g.complete and nfs == expect
    n = parse(r"(\z. x) (mu b. y)")
    second = reduces_to(n, parse("x"), ALL) == "yes" and reduces_to(n, parse("mu b. y"), ALL) == "yes"
    ok = first and second
    report(7, ok, f"(mu a.x mu b.y): {len(nfs)} normal forms; (\\z.x mu b.y) reaches x and mu b.y: {second}")
    assert ok


def _all_rule_sets():
    rules = [Rule.BETA, Rule.MU, Rule.MU_PRIME]
    return [RuleSet.of(*c) for k in (1, 2, 3) for c in combinations(rules, k)]


def test_8_naive_oracle_equivalence(report):
    rule_sets = _all_rule_sets()
    enum = GenConfig(max_size=6, free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"))
    n1, bad1 = analysis.cross_check(enumerate_terms(enum), rule_sets)
    rand = GenConfig(max_size=12, free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"), seed=7)
    n2, bad2 = analysis.cross_check(random_terms(rand, 10_000), rule_sets)
    ok = not bad1 and not bad2
    report(8, ok, f"{n1} enumerated + {n2} random comparisons over {len(rule_sets)} rule sets x 2 engine routes, "
           f"{len(bad1) + len(bad2)} mismatches")
    assert ok, (bad1 + bad2)[:5]


def test_9_mu_only(report):
    rep = analysis.sn_exhaustive(analysis.EXHAUSTIVE_CONFIG, MU_ONLY)
    ok = rep.ok and rep.exhausted == 0 and rep.sn == rep.instances == 12641
    report(9, ok, rep.render().splitlines()[0])
    assert ok, rep.render()
