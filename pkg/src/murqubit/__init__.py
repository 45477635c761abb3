"""Optimal joint measurements of two incompatible qubit observables.

Closed-form optimal approximators, the error trade-off bounds, a brute-force
oracle for the admissible error region, a carrier-pulse compiler and a
shot-noise simulator of the trapped-ion measurement.
"""

from ._config import override_tolerances, tolerances
from .bloch import Effect, QubitState, prob, sharp_effect, sin_chi
from .compat import compat_functional, ellipsoid_for, is_jointly_measurable
from .povm import (
    build_joint_povm,
    marginals,
    owc_from_statistics,
    s_decomposition,
    wasserstein2_sq,
    worst_case_states,
)
from .yuoh import (
    TradeoffPoint,
    additive_bound,
    mur_lower_bound,
    optimal_vectors,
    owc_errors,
    phi_from_vectors,
    targets_for,
)

__version__ = "0.1.0"

__all__ = [
    "Effect",
    "QubitState",
    "TradeoffPoint",
    "additive_bound",
    "build_joint_povm",
    "compat_functional",
    "ellipsoid_for",
    "is_jointly_measurable",
    "marginals",
    "mur_lower_bound",
    "optimal_vectors",
    "override_tolerances",
    "owc_errors",
    "owc_from_statistics",
    "phi_from_vectors",
    "prob",
    "s_decomposition",
    "sharp_effect",
    "sin_chi",
    "targets_for",
    "tolerances",
    "wasserstein2_sq",
    "worst_case_states",
]
