import ast
import inspect
import random

from hypothesis import given

from lambdamu import naive
from lambdamu.analysis import cross_check, engine_reducts
from lambdamu.gen import GenConfig, enumerate_terms
from lambdamu.reduce import ALL, BETA_ONLY, MU_MU_PRIME, MU_ONLY
from lambdamu.syntax import parse
from lambdamu.terms import alpha_eq

from conftest import terms


def test_mu_pair():
    got = naive.naive_successors(parse("(mu a. x) (mu b. y)"), MU_MU_PRIME)
    assert len(got) == 2
    assert alpha_eq(got[0], parse("mu a. x")) and alpha_eq(got[1], parse("mu b. y"))


def test_normal_forms_have_no_successors():
    for src in ["x", r"\x. x", "mu a. [a] x", "x (y z)"]:
        assert naive.naive_successors(parse(src), ALL) == []


def test_canonical():
    assert naive.canonical(parse(r"\x. x")) == naive.canonical(parse(r"\y. y"))
    assert naive.canonical(parse(r"\x. y")) != naive.canonical(parse(r"\x. z"))
    assert naive.alpha_equal(parse("mu a. [a] x"), parse("mu b. [b] x"))


def test_independent_of_engine():
    tree = ast.parse(inspect.getsource(naive))
    imported = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom)}
    assert imported <= {"__future__", "collections", "terms"}


def test_agreement_enumerated():
    cfg = GenConfig(max_size=5, free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"))
    n, bad = cross_check(enumerate_terms(cfg), [ALL, MU_MU_PRIME, BETA_ONLY])
    assert n > 0 and not bad


@given(terms(16))
def test_agreement_random(m):
    for rules in (ALL, MU_ONLY, MU_MU_PRIME):
        assert naive.agree(m, engine_reducts(m, rules), rules)


def test_detects_dropped_reduct():
    m = parse("(mu a. [a] x) (mu b. [b] y)")
    reducts = engine_reducts(m, ALL)
    assert naive.agree(m, reducts, ALL)
    assert not naive.agree(m, reducts[:-1], ALL)


def test_detects_wrong_substitution():
    m = parse(r"(mu a. [a] x) (\z. z)")
    right = engine_reducts(m, ALL)
    wrong = [parse(r"mu a. [a] (\z. z) x")]  # mu' shape instead of mu
    assert naive.agree(m, right, ALL)
    assert not naive.agree(m, wrong, ALL)


def test_detects_capture():
    m = parse(r"(\x. \y. x) y")
    captured = [parse(r"\y. y")]
    assert not naive.agree(m, captured, BETA_ONLY)
    assert naive.agree(m, engine_reducts(m, BETA_ONLY), BETA_ONLY)


def test_detects_mutated_reduct_at_random():
    r = random.Random(2)
    hits = 0
    for m in enumerate_terms(GenConfig(max_size=6, free_lambda_pool=("x",), free_mu_pool=("a",))):
        reducts = engine_reducts(m, ALL)
        if not reducts:
            continue
        k = r.randrange(len(reducts))
        mutated = list(reducts)
        mutated[k] = parse(r"\q. q q q")
        assert not naive.agree(m, mutated, ALL)
        hits += 1
    assert hits > 100
