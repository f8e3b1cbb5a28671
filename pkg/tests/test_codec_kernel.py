import pytest
from hypothesis import given

from lambdamu import codec, kernel
from lambdamu.analysis import engine_reducts
from lambdamu.gen import GenConfig, enumerate_codes
from lambdamu.reduce import ALL, MU_MU_PRIME, BETA_ONLY
from lambdamu.syntax import parse
from lambdamu.terms import alpha_eq, cxty

from conftest import terms

BACKENDS = kernel.backends()
SMALL = list(enumerate_codes(GenConfig(max_size=5, free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"))))


def test_word_layout():
    code = codec.encode(parse(r"\x. x"))
    assert codec.to_words(code) == [codec.LAM, codec.word(codec.BVAR, 0)]
    assert codec.size(code) == 2


def test_dangling_indices_decode_to_reserved_names():
    body = codec.encode(parse(r"\x. mu a. [a] x"))[4:]
    assert str(codec.decode(body)) == "mu a. [a] _l0"
    assert str(codec.decode(codec.encode(parse("mu a. [a] x"))[4:])) == "[_m0] x"


@given(terms())
def test_round_trip(m):
    c = codec.encode(m)
    assert len(c) // 4 == cxty(m)
    assert alpha_eq(codec.decode(c), m)
    assert codec.encode(codec.decode(c)) == c


@given(terms(8), terms(8))
def test_codes_are_alpha_classes(m, n):
    assert (codec.encode(m) == codec.encode(n)) == alpha_eq(m, n)


def test_backend_selected():
    assert kernel.BACKEND in BACKENDS
    assert "python" in BACKENDS


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
@pytest.mark.parametrize("mask", [1, 2, 3, 4, 5, 6, 7])
def test_backends_agree_on_enumeration(mask):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for c in SMALL:
        assert py.successors(c, mask) == cy.successors(c, mask)
        assert py.redexes(c, mask) == cy.redexes(c, mask)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
@given(terms(16))
def test_backends_agree_random(m):
    c = codec.encode(m)
    assert BACKENDS["python"].successors(c, 7) == BACKENDS["cython"].successors(c, 7)


@given(terms(14))
def test_kernel_matches_named_substitution(m):
    for rules in (ALL, MU_MU_PRIME, BETA_ONLY):
        a = [codec.encode(t) for t in engine_reducts(m, rules, "kernel")]
        b = [codec.encode(t) for t in engine_reducts(m, rules, "named")]
        assert a == b


def test_contract_rejects_non_redex():
    c = codec.encode(parse("x y"))
    for impl in BACKENDS.values():
        with pytest.raises(ValueError):
            impl.contract(c, 0, kernel.BETA)


def test_pure_fallback_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, LAMBDAMU_PURE="1")
    code = ("from lambdamu import kernel, analysis, reduce\n"
            "t = analysis.counterexample_terms()['(M0 M1)']\n"
            "print(kernel.BACKEND, analysis.sn_check(t, reduce.ALL).kind)")
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=300)
    assert r.stdout.split() == ["python", "NotSN"], r.stderr
