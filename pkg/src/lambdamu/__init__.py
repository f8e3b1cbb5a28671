"""Symmetric lambda-mu calculus: terms, reduction, simple types and normalization checks."""
from .analysis import SN, Budget, Exhausted, NotSN, counterexample_suite, eta, eta_c, sn_check
from .gen import GenConfig, enumerate_terms, random_term, random_typed
from .reduce import (
    ALL,
    BETA_MU,
    BETA_ONLY,
    MU_MU_PRIME,
    MU_ONLY,
    Redex,
    Rule,
    RuleSet,
    build_graph,
    redexes,
    step,
    successors,
)
from .subst import subst_beta, subst_mu_addr, subst_mu_indexed, subst_mu_left, subst_mu_right
from .syntax import ParseError, parse, show
from .terms import App, Lam, Mu, Named, Term, Var, alpha_eq, cxty, free_vars
from .typecheck import Arrow, Atom, Context, TypeCheckError, check, infer, parse_type, show_type

__version__ = "0.1.0"

__all__ = [
    "ALL", "BETA_MU", "BETA_ONLY", "MU_MU_PRIME", "MU_ONLY", "SN", "App", "Arrow", "Atom", "Budget",
    "Context", "Exhausted", "GenConfig", "Lam", "Mu", "Named", "NotSN", "ParseError", "Redex", "Rule",
    "RuleSet", "Term", "TypeCheckError", "Var", "alpha_eq", "build_graph", "check", "counterexample_suite",
    "cxty", "enumerate_terms", "eta", "eta_c", "free_vars", "infer", "parse", "parse_type", "random_term",
    "random_typed", "redexes", "show", "show_type", "sn_check", "step", "subst_beta", "subst_mu_addr",
    "subst_mu_indexed", "subst_mu_left", "subst_mu_right", "successors",
]
