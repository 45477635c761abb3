"""Closed-form optimal error trade-off for two qubit observables.

For target directions ``a``, ``b`` at incompatibility ``sin chi`` and a
trade-off angle ``phi`` in ``[0, pi/2]`` this module builds the optimal
compatible approximators ``(c, d)`` and the corresponding errors
``eps_a = |a - c|``, ``eps_b = |b - d|``.  Sweeping ``phi`` traces the lower
boundary of the admissible error region.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._config import tolerances
from .bloch import BlochVector, as_vector, norm, require_unit, sin_chi
from .compat import compat_functional
from .errors import DegenerateDot, DegenerateTargets, DomainError, NotOnBoundary

HALF_PI = np.pi / 2
_ROUNDING = 8 * np.finfo(float).eps


@dataclass(frozen=True)
class TradeoffPoint:
    phi: float
    h: float
    c: BlochVector
    d: BlochVector
    eps_a: float
    eps_b: float
    u_c: float
    u_d: float


def _check_sin_chi(s):
    s = np.asarray(s, dtype=float)
    if np.any(s < 0.0) or np.any(s > 1.0) or not np.all(np.isfinite(s)):
        raise DomainError("sin chi must lie in [0, 1]")
    return s


def _check_phi(phi):
    if isinstance(phi, float) and 0.0 <= phi <= HALF_PI:
        return np.float64(phi)
    phi = np.asarray(phi, dtype=float)
    if np.any(phi < 0.0) or np.any(phi > HALF_PI) or not np.all(np.isfinite(phi)):
        raise DomainError("phi must lie in [0, pi/2]")
    return phi


def _trig(phi):
    # exact values at the endpoints so that the perfect-approximation limits are exact
    s = np.where(phi == HALF_PI, 1.0, np.sin(phi))
    c = np.where(phi == HALF_PI, 0.0, np.cos(phi))
    return s, c


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def owc_errors(sin_chi_value, phi):
    """Optimal worst-case error pair ``(eps_a, eps_b)``; vectorized over both args."""
    s = _check_sin_chi(sin_chi_value)
    phi = _check_phi(phi)
    sp, cp = _trig(phi)
    root = np.sqrt(1.0 + s * 2.0 * sp * cp)
    eps_a = (sp + s * cp) / root - sp
    eps_b = (cp + s * sp) / root - cp
    return _scalar(eps_a), _scalar(eps_b)


def mur_lower_bound(sin_chi_value, phi):
    """Right-hand side of the phi-family trade-off ``eps_a sin(phi) + eps_b cos(phi) >= bound``."""
    s = _check_sin_chi(sin_chi_value)
    phi = _check_phi(phi)
    sp, cp = _trig(phi)
    return _scalar(np.sqrt(1.0 + s * 2.0 * sp * cp) - 1.0)


def additive_bound(sin_chi_value):
    """Lower bound on ``eps_a + eps_b``: ``sqrt(2) (sqrt(1 + sin chi) - 1)``."""
    s = _check_sin_chi(sin_chi_value)
    return _scalar(np.sqrt(2.0) * (np.sqrt(1.0 + s) - 1.0))


def equal_error_value(sin_chi_value):
    """Common error value at ``phi = pi/4``."""
    s = _check_sin_chi(sin_chi_value)
    return _scalar((np.sqrt(1.0 + s) - 1.0) / np.sqrt(2.0))


def h_closed_form(cos_chi, sin_chi_value, phi):
    s = _check_sin_chi(sin_chi_value)
    sp, cp = _trig(_check_phi(phi))
    return _scalar(np.asarray(cos_chi, dtype=float) / np.sqrt(1.0 + s * 2.0 * sp * cp))


def targets_for(sin_chi_value: float) -> tuple[BlochVector, BlochVector]:
    """Standard targets ``a = sigma_y`` and ``b`` in the y-z plane at the given incompatibility."""
    s = float(_check_sin_chi(sin_chi_value))
    a = as_vector([0.0, 1.0, 0.0])
    b = as_vector([0.0, np.sqrt(max(0.0, 1.0 - s * s)), s])
    return a, b


def optimal_vectors(a, b, phi: float) -> TradeoffPoint:
    """Optimal approximators for targets ``a``, ``b`` at trade-off angle ``phi``."""
    a = require_unit(a, "a")
    b = require_unit(b, "b")
    s = sin_chi(a, b)
    if s < tolerances.structural:
        raise DegenerateTargets("a and b are (anti)parallel; nothing to trade off")
    phi = float(_check_phi(phi))
    cos_chi = float(a @ b)
    sp, cp = (float(x) for x in _trig(phi))
    eps_a, eps_b = owc_errors(s, phi)
    h = cos_chi / np.sqrt(1.0 + s * 2.0 * sp * cp)
    one_h2 = 1.0 - h * h
    c = a if sp == 1.0 else (sp * (eps_b + one_h2 * cp) * a + h * eps_a * cp * b) / s
    d = b if cp == 1.0 else (cp * (eps_a + one_h2 * sp) * b + h * eps_b * sp * a) / s
    # on the boundary u_c^2 + u_d^2 = 1 - (c.d)^2, which avoids sqrt(1 - |x|^2) near the sphere
    total = np.sqrt(max(0.0, 1.0 - float(c @ d) ** 2))
    u_c = cp * total
    u_d = sp * total
    return TradeoffPoint(
        phi=phi,
        h=float(h),
        c=as_vector(c),
        d=as_vector(d),
        eps_a=float(eps_a),
        eps_b=float(eps_b),
        u_c=float(u_c),
        u_d=float(u_d),
    )


def _unsharp_sq(x):
    # a vector within rounding of the sphere counts as sharp
    u = 1.0 - float(x @ x)
    return 0.0 if u < _ROUNDING else u


def phi_from_vectors(c, d) -> float:
    """Recover the trade-off angle of a boundary pair ``(c, d)``."""
    c = as_vector(c)
    d = as_vector(d)
    f = compat_functional(c, d)
    if abs(f - 2.0) > 1e-6:
        raise NotOnBoundary(f"f(c, d) = {f!r}, expected 2")
    cd2 = float(c @ d) ** 2
    if cd2 >= 1.0 - tolerances.arithmetic:
        raise DegenerateDot(f"(c.d)^2 = {cd2!r}")
    denom = 1.0 - cd2
    sin_phi = np.sqrt(_unsharp_sq(d) / denom)
    cos_phi = np.sqrt(_unsharp_sq(c) / denom)
    return float(np.arctan2(sin_phi, cos_phi))


def phi_for_eps_a(sin_chi_value: float, eps_a: float) -> float:
    """Invert the strictly decreasing map ``phi -> eps_a(phi)`` on ``[0, pi/2]``."""
    s = float(_check_sin_chi(sin_chi_value))
    if not -tolerances.arithmetic <= eps_a <= s + tolerances.arithmetic:
        raise DomainError(f"eps_a = {eps_a!r} outside [0, sin chi]")
    if eps_a >= s:
        return 0.0
    if eps_a <= 0.0:
        return HALF_PI
    return float(brentq(lambda p: owc_errors(s, p)[0] - eps_a, 0.0, HALF_PI, xtol=1e-15, rtol=1e-15))
