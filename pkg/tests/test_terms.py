import pytest
from hypothesis import given

from lambdamu.syntax import ParseError, parse, show
from lambdamu.terms import (
    App,
    Lam,
    Mu,
    Named,
    Var,
    addresses,
    alpha_eq,
    apps,
    cxty,
    free_vars,
    replace_at,
    spine,
    subterm_at,
    subterms,
)

from conftest import terms

M1, M2, M3 = Var("m1"), Var("m2"), Var("m3")


@pytest.mark.parametrize("src, size", [("x", 1), (r"\x. x", 2), ("(mu a. [a] x) y", 5)])
def test_cxty(src, size):
    assert cxty(parse(src)) == size


@pytest.mark.parametrize("a, b, eq", [
    (r"\x. x", r"\y. y", True),
    (r"\x. y", r"\x. z", False),
    ("mu a. [a] x", "mu b. [b] x", True),
    (r"\x. \y. x", r"\y. \x. x", False),
])
def test_alpha_eq(a, b, eq):
    assert alpha_eq(parse(a), parse(b)) is eq


@pytest.mark.parametrize("src, lam, mu", [
    (r"\x. x y", {"y"}, set()),
    ("mu a. [a] x", {"x"}, set()),
    (r"[a] \z. [a] z", set(), {"a"}),
])
def test_free_vars(src, lam, mu):
    assert free_vars(parse(src)) == (frozenset(lam), frozenset(mu))


def test_sorts_are_separate_namespaces():
    # the same spelling as a lambda-name and a mu-name does not clash
    assert free_vars(parse("[x] x")) == (frozenset({"x"}), frozenset({"x"}))
    assert free_vars(parse(r"mu x. [x] \x. x")) == (frozenset(), frozenset())


def test_subterm_at():
    m = App(M1, App(M2, M3))
    assert subterm_at(m, ("r", "l")) == M2
    assert subterm_at(m, ()) == m
    assert subterm_at(Lam("x", Var("x")), ("l",)) is None


def test_replace_at():
    assert replace_at(parse("x y z"), ("l", "r"), Var("w")) == parse("x w z")
    assert replace_at(App(M1, App(M2, M3)), ("r", "l"), Var("u")) == App(M1, App(Var("u"), M3))
    assert replace_at(M1, (), M2) == M2


def test_subterms_counts_occurrences():
    assert subterms(Var("x")) == [Var("x")]
    assert subterms(parse("x y")) == [parse("x y"), Var("x"), Var("y")]
    assert subterms(parse(r"\x. x x")) == [parse(r"\x. x x"), parse("x x"), Var("x"), Var("x")]


def test_spine_and_apps():
    head, args = spine(apps(Var("x"), M1, M2, M3))
    assert head == Var("x") and args == [M1, M2, M3]


@pytest.mark.parametrize("src", [
    r"\x. x (mu a. [a] x)",
    r"(\x. x) ((\y. y) z)",
    "[a] [b] mu c. [c] x",
    r"\f. f ([b] \x. x y) ([b] \x. x z)",
    "(mu a. x) (mu b. y)",
])
def test_round_trip(src):
    m = parse(src)
    assert parse(show(m)) == m
    assert parse(show(m, unicode=True)) == m


def test_unicode_input():
    assert parse("λx. μa. [a] x") == Lam("x", Mu("a", Named("a", Var("x"))))


@pytest.mark.parametrize("bad", [r"\x.", "(x", "[a x", "mu . x", ")"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


@given(terms())
def test_round_trip_property(m):
    assert parse(show(m)) == m


@given(terms())
def test_strict_subterms_are_smaller(m):
    for s in subterms(m)[1:]:
        assert cxty(s) < cxty(m)


@given(terms())
def test_addresses_stay_on_spine(m):
    for a in addresses(m):
        assert subterm_at(m, a) is not None
