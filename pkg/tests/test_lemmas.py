import types

import pytest

from lambdamu import kernel, lemmas
from lambdamu.codec import encode
from lambdamu.lemmas import Domain, Explorer, run_lemma
from lambdamu.reduce import ALL
from lambdamu.syntax import parse

SMALL = Domain(4)
SMALL_XY = Domain(4, ("x", "y"))


def test_explorer_reach():
    ex = Explorer(ALL, 1_000)
    r = ex.reach([encode(parse("(mu a. x) (mu b. y)"))])
    assert r is not None and len(r) == 3
    assert ex.reach([encode(parse(r"(\x. x x x) (\x. x x x)"))]) is None
    assert ex.is_sn(encode(parse("x"))) is True


@pytest.mark.parametrize("lemma, kw", [
    ("5", dict(domain=SMALL)),
    ("6", dict(domain=SMALL)),
    ("11", dict(domain=SMALL)),
    ("12", dict(domain=SMALL_XY, image_size=3)),
    ("16", dict(domain=SMALL_XY, image_size=3)),
    ("21", dict(domain=SMALL, arities={1: 4, 2: 3, 3: 2})),
    ("23", dict(domain=SMALL, arities={1: 4, 2: 3, 3: 2})),
])
def test_oracles_hold_small(lemma, kw):
    rep = run_lemma(lemma, **kw)
    assert rep.ok, rep.render()
    assert rep.instances > 0 and rep.checked_targets > 0


def test_unknown_lemma():
    with pytest.raises(ValueError):
        run_lemma("99")


def test_render():
    rep = run_lemma("5", domain=Domain(3))
    assert rep.render().startswith("oracle 5 holds:")


def _crippled_kernel(drop_rule):
    """The real kernel except that root contractions by ``drop_rule`` yield an unrelated normal term."""
    junk = encode(parse("z"))

    def contract(code, offset, rule):
        if rule == drop_rule:
            return junk
        return kernel.contract(code, offset, rule)

    return types.SimpleNamespace(**{k: getattr(kernel, k) for k in ("BETA", "MU", "MU_PRIME", "successors")},
                                 contract=contract)


def test_mu_application_sensitive_to_missing_mu_prime_starts(monkeypatch):
    monkeypatch.setattr(lemmas, "kernel", _crippled_kernel(kernel.MU_PRIME))
    rep = run_lemma("5", domain=SMALL)
    assert not rep.ok and rep.counterexamples


def test_application_sensitive_to_missing_beta_starts(monkeypatch):
    monkeypatch.setattr(lemmas, "kernel", _crippled_kernel(kernel.BETA))
    rep = run_lemma("11", domain=SMALL)
    assert not rep.ok


def test_head_mu_sensitive_to_indexed_substitution(monkeypatch):
    # starts built without the indexed substitution miss rooted reducts
    monkeypatch.setattr(lemmas, "subst_mu_indexed", lambda body, alpha, head, slots, i: body)
    rep = run_lemma("23", domain=SMALL, arities={1: 4, 2: 3})
    assert not rep.ok
