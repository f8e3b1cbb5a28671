import random
from itertools import product

import pytest

from lambdamu.gen import (
    GenConfig,
    GenerationError,
    count_terms,
    enumerate_codes,
    enumerate_terms,
    random_term,
    random_terms,
    random_typed,
)
from lambdamu.naive import canonical
from lambdamu.syntax import show
from lambdamu.terms import App, Lam, Mu, Named, Var, cxty, free_vars, subterms
from lambdamu.typecheck import check, verify_derivation

POOLS = dict(free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"))


def test_size_one():
    assert [str(t) for t in enumerate_terms(GenConfig(max_size=1, free_lambda_pool=("x",)))] == ["x"]


def test_size_two_golden():
    got = [show(t) for t in enumerate_terms(GenConfig(max_size=2, free_lambda_pool=("x",), free_mu_pool=("a",)))]
    assert got == ["x", r"\x. x", r"\x1. x", "mu a. x", "[a] x"]


def test_counts_golden():
    # frozen from the enumerator, cross-checked below against brute force up to size 4
    counts = [count_terms(GenConfig(max_size=n, **POOLS)) for n in range(1, 7)]
    assert counts == [2, 11, 57, 319, 1940, 12641]
    assert counts == sorted(counts)


def test_count_matches_stream():
    cfg = GenConfig(max_size=5, **POOLS)
    assert count_terms(cfg) == sum(1 for _ in enumerate_codes(cfg))


def test_deterministic_order():
    cfg = GenConfig(max_size=4, **POOLS)
    assert list(enumerate_codes(cfg)) == list(enumerate_codes(cfg))


def _brute(max_size, lam_pool, mu_pool):
    """Every constructor tree over pools plus bound names, deduplicated by canonical form."""
    bl, bm = ["u", "v", "w"], ["c", "d", "e"]
    lnames, mnames = list(lam_pool) + bl, list(mu_pool) + bm
    by_size = {1: [Var(x) for x in lnames]}
    for s in range(2, max_size + 1):
        out = []
        for body in by_size[s - 1]:
            out += [Lam(x, body) for x in bl]
            out += [Mu(a, body) for a in bm]
            out += [Named(a, body) for a in mnames]
        for k in range(1, s - 1):
            out += [App(f, a) for f, a in product(by_size[k], by_size[s - 1 - k])]
        by_size[s] = out
    keep = set()
    for s in range(1, max_size + 1):
        for t in by_size[s]:
            fl, fm = free_vars(t)
            if fl <= set(lam_pool) and fm <= set(mu_pool):
                keep.add(canonical(t))
    return keep


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_complete(n):
    cfg = GenConfig(max_size=n, free_lambda_pool=("x", "y"), free_mu_pool=("a",))
    mine = [canonical(t) for t in enumerate_terms(cfg)]
    assert len(mine) == len(set(mine))
    assert set(mine) == _brute(n, ("x", "y"), ("a",))


def test_random_reproducible():
    cfg = GenConfig(max_size=15, seed=3, **POOLS)
    assert random_terms(cfg, 20) == random_terms(cfg, 20)
    assert random_term(cfg, random.Random(1)) == random_term(cfg, random.Random(1))


def test_random_respects_bounds():
    cfg = GenConfig(max_size=12, **POOLS)
    r = random.Random(0)
    for _ in range(300):
        t = random_term(cfg, r)
        fl, fm = free_vars(t)
        assert cxty(t) <= 12 and fl <= {"x", "y"} and fm <= {"a", "b"}


def test_mu_nodes_frequent():
    cfg = GenConfig(max_size=10, free_lambda_pool=("x",), free_mu_pool=("a",))
    ts = random_terms(cfg, 1000)
    hits = sum(any(isinstance(s, (Mu, Named)) for s in subterms(t)) for t in ts)
    assert hits / len(ts) >= 0.05


def test_typed_always_checks():
    cfg = GenConfig(max_size=25, free_lambda_pool=("x", "y"), free_mu_pool=("a",), typed=True, type_depth=3)
    r = random.Random(11)
    for _ in range(200):
        s = random_typed(cfg, r)
        assert cxty(s.term) <= 25
        assert verify_derivation(check(s.ctx, s.term, s.type))


def test_typed_reproducible():
    cfg = GenConfig(max_size=20, typed=True, seed=5)
    a = random_typed(cfg, random.Random(5))
    b = random_typed(cfg, random.Random(5))
    assert (a.term, a.type) == (b.term, b.type)


def test_typed_failure_reported():
    with pytest.raises(GenerationError):
        random_typed(GenConfig(max_size=1, typed=True, type_depth=3, free_lambda_pool=()), random.Random(0))


def test_bad_config():
    with pytest.raises(ValueError):
        GenConfig(max_size=0)
