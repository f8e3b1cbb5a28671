import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdamu.gen import GenConfig, random_typed
from lambdamu.reduce import ALL, BETA_ONLY, MU_MU_PRIME
from lambdamu.syntax import parse
from lambdamu.typecheck import (
    BOT,
    Arrow,
    Atom,
    Context,
    Meta,
    TypeCheckError,
    address_types,
    check,
    infer,
    infer_open,
    lg,
    neg,
    parse_context,
    parse_type,
    show_type,
    subject_reduction_check,
    typable,
    verify_derivation,
)

P, Q = Atom("P"), Atom("Q")
PEIRCE = parse(r"\y. mu a. [a] y (\x. mu b. [a] x)")


def test_lg():
    assert lg(P) == 0
    assert lg(Arrow(P, Q)) == 1
    assert lg(neg(Arrow(P, Q))) == 2


@pytest.mark.parametrize("src", ["P", "P -> Q", "(P -> Q) -> P", "~P", "~(P -> Q)", "~P -> P", "bot"])
def test_type_round_trip(src):
    assert show_type(parse_type(src)) == src


def test_type_syntax():
    assert parse_type("P -> Q -> P") == Arrow(P, Arrow(Q, P))
    assert parse_type("¬P → ⊥") == Arrow(neg(P), BOT)
    with pytest.raises(ValueError):
        parse_type("P ->")


def test_ax():
    d = check(Context({"x": P}), parse("x"), P)
    assert d.rule == "ax" and verify_derivation(d)


def test_identity():
    d = check(Context(), parse(r"\x. x"), Arrow(P, P))
    assert d.rule == "->i" and d.premises[0].rule == "ax"
    assert infer(Context(), parse(r"\x. x")) == Arrow(Meta(0), Meta(0))


def test_peirce():
    a = parse_type("((P -> Q) -> P) -> P")
    d = check(Context(), PEIRCE, a)
    assert verify_derivation(d)
    assert {n.rule for n in d.nodes()} == {"ax", "->i", "->e", "bot_e", "bot_i"}
    assert show_type(infer(Context(), PEIRCE)) == "((t0 -> t1) -> t0) -> t0"


@pytest.mark.parametrize("src", [r"\x. x x", r"mu a. [a] \z. [a] z"])
def test_untypable(src):
    with pytest.raises(TypeCheckError, match="occurs"):
        infer(Context(), parse(src))


def test_error_position():
    with pytest.raises(TypeCheckError) as info:
        check(Context({"x": P}), parse("x x"), Q)
    assert info.value.constraint is not None


def test_wrong_goal():
    assert not typable(Context(), parse(r"\x. x"), Arrow(P, Q))


def test_free_mu_name_needs_context():
    ctx = parse_context("x : P\na : ~P", parse("[a] x"))
    assert ctx.mu == {"a": P}
    assert check(ctx, parse("[a] x"), BOT).rule == "bot_i"


def test_parse_context_explicit_sort():
    ctx = parse_context("x : P\n[x] : ~Q  # a mu-name spelled like a variable")
    assert ctx.lam == {"x": P} and ctx.mu == {"x": Q}
    with pytest.raises(ValueError):
        parse_context("[a] : P")


def test_infer_open():
    ctx, t = infer_open(parse("[a] x y"))
    assert set(ctx.lam) == {"x", "y"} and set(ctx.mu) == {"a"}
    assert t == BOT


def test_address_types():
    ctx = Context({"f": parse_type("(P -> P) -> P -> Q"), "x": P})
    types = address_types(ctx, parse(r"f (\z. z) x"))
    assert types[()] == Q
    assert types[("r",)] == P
    assert types[("l", "r")] == Arrow(P, P)


def test_subject_reduction_small():
    ctx = Context({"x": P})
    assert subject_reduction_check(ctx, parse(r"(\y. y) x"), P, BETA_ONLY).ok
    assert subject_reduction_check(Context(), PEIRCE, parse_type("((P -> Q) -> P) -> P"), ALL).ok


def test_subject_reduction_non_confluent_pair():
    # (mu a.[d] x) (mu b.[e] y) with x : P, y : Q, d : ~P, e : ~Q, at type C
    ctx = parse_context("x : P\ny : Q\n[d] : ~P\n[e] : ~Q")
    m = parse("(mu a. [d] x) (mu b. [e] y)")
    rep = subject_reduction_check(ctx, m, Atom("C"), MU_MU_PRIME)
    assert rep.ok and rep.complete and rep.nodes_checked == 3


@given(st.integers(0, 10_000))
def test_typed_generator_checks(seed):
    cfg = GenConfig(max_size=14, free_lambda_pool=("x", "y"), free_mu_pool=("a",), typed=True, type_depth=2)
    s = random_typed(cfg, random.Random(seed))
    assert verify_derivation(check(s.ctx, s.term, s.type))


@given(st.integers(0, 10_000))
def test_subject_reduction_property(seed):
    cfg = GenConfig(max_size=12, free_lambda_pool=("x", "y"), free_mu_pool=("a",), typed=True, type_depth=2)
    s = random_typed(cfg, random.Random(seed))
    rep = subject_reduction_check(s.ctx, s.term, s.type, ALL, max_nodes=2000)
    assert rep.ok
