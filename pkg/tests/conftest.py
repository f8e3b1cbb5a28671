import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lambdamu.terms import App, Lam, Mu, Named, Var

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LAM_NAMES = st.sampled_from(["x", "y", "z"])
MU_NAMES = st.sampled_from(["a", "b"])


def terms(max_leaves: int = 12) -> st.SearchStrategy:
    """Small open terms over a few names of each sort."""
    return st.recursive(
        LAM_NAMES.map(Var),
        lambda inner: st.one_of(
            st.builds(Lam, LAM_NAMES, inner),
            st.builds(App, inner, inner),
            st.builds(Mu, MU_NAMES, inner),
            st.builds(Named, MU_NAMES, inner),
        ),
        max_leaves=max_leaves,
    )
