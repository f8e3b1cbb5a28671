"""Reduction kernel: redex search and contraction on flat codes.

The compiled ``_ckernel`` extension is used when it has been built; otherwise,
or when the environment variable ``LAMBDAMU_PURE`` is set to a non-empty value
other than ``0``, the pure-Python ``_pykernel`` is used.  Both expose
``redexes``, ``contract`` and ``successors`` with identical results.
"""
from __future__ import annotations

import os

from . import _pykernel

BETA = _pykernel.BETA
MU = _pykernel.MU
MU_PRIME = _pykernel.MU_PRIME

_force_pure = os.environ.get("LAMBDAMU_PURE", "") not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure kernel requested")
    from . import _ckernel as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernel
    BACKEND = "python"

redexes = _impl.redexes
contract = _impl.contract
successors = _impl.successors


def backends() -> dict[str, object]:
    """Every importable kernel implementation, keyed by name."""
    found: dict[str, object] = {"python": _pykernel}
    try:
        from . import _ckernel

        found["cython"] = _ckernel
    except ImportError:
        pass
    return found
