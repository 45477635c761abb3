"""Joint-measurability functional and the compatibility ellipsoid.

Two unsharp qubit observables with vectors ``c`` and ``d`` are jointly
measurable iff ``|c + d| + |c - d| <= 2``.  For a fixed ``d`` the admissible
``c`` fill a prolate spheroid with foci ``+-d`` and unit major semi-axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import tolerances
from .bloch import BlochVector, as_vector, norm
from .errors import OutOfBall


def _in_ball(v, name: str) -> BlochVector:
    v = as_vector(v)
    if norm(v) > 1.0 + tolerances.arithmetic:
        raise OutOfBall(f"|{name}| = {norm(v)!r} exceeds one")
    return v


def compat_functional(c, d) -> float:
    """Return ``f(c, d) = |c + d| + |c - d|``."""
    c = _in_ball(c, "c")
    d = _in_ball(d, "d")
    return norm(c + d) + norm(c - d)


def is_jointly_measurable(c, d, tol: float | None = None) -> bool:
    tol = tolerances.structural if tol is None else tol
    return compat_functional(c, d) <= 2.0 + tol


def orthonormal_frame(axis) -> np.ndarray:
    """Rows ``(e1, e2, e3)`` of a right-handed frame with ``e3`` along ``axis``.

    A zero axis yields the standard frame.
    """
    axis = as_vector(axis)
    n = norm(axis)
    if n == 0.0:
        return np.eye(3)
    e3 = axis / n
    helper = np.eye(3)[int(np.argmin(np.abs(e3)))]
    e1 = np.cross(helper, e3)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(e3, e1)
    return np.array([e1, e2, e3])


@dataclass(frozen=True)
class CompatEllipsoid:
    """Region ``{x : f(x, focus) <= 2}``.

    Surface points are parametrized by spherical angles ``(theta, psi)`` in
    the frame whose z-axis is the focus direction.
    """

    focus_vector: BlochVector
    major_semi_axis: float = 1.0

    @property
    def minor_semi_axis(self) -> float:
        return float(np.sqrt(max(0.0, 1.0 - norm(self.focus_vector) ** 2)))

    @property
    def frame(self) -> np.ndarray:
        return orthonormal_frame(self.focus_vector)

    def surface_point(self, theta, psi) -> np.ndarray:
        """Point(s) on the surface; broadcasts over ``theta`` and ``psi``."""
        theta = np.asarray(theta, dtype=float)
        psi = np.asarray(psi, dtype=float)
        e1, e2, e3 = self.frame
        u = self.minor_semi_axis
        st = np.sin(theta)[..., None]
        return (
            self.major_semi_axis * np.cos(theta)[..., None] * e3
            + u * st * np.cos(psi)[..., None] * e1
            + u * st * np.sin(psi)[..., None] * e2
        )

    def contains(self, x, tol: float | None = None) -> bool:
        return is_jointly_measurable(x, self.focus_vector, tol)


def ellipsoid_for(fixed) -> CompatEllipsoid:
    """Compatibility ellipsoid of all partners of the fixed vector."""
    return CompatEllipsoid(_in_ball(fixed, "fixed"))
