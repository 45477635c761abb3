"""Bloch-sphere vectors, qubit effects and exact outcome probabilities.

Every operator is kept in coefficient form ``c0 * I + m . sigma``; vectors
are plain length-3 float arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._config import tolerances
from .errors import InvalidEffect, InvalidState, NotUnit

BlochVector = np.ndarray

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def as_vector(v) -> BlochVector:
    """Return ``v`` as a read-only float array of shape (3,)."""
    if isinstance(v, np.ndarray) and v.shape == (3,) and v.dtype == float and not v.flags.writeable:
        return v
    arr = np.array(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"Bloch vector needs 3 components, got shape {arr.shape}")
    if not math.isfinite(arr.sum()):
        raise ValueError("Bloch vector components must be finite")
    arr.setflags(write=False)
    return arr


def norm(v) -> float:
    v = np.asarray(v, dtype=float)
    return math.sqrt(float(v @ v))


def require_unit(v, name: str = "vector") -> BlochVector:
    v = as_vector(v)
    n = norm(v)
    if abs(n - 1.0) > tolerances.structural:
        raise NotUnit(f"{name} must be a unit vector, |{name}| = {n!r}")
    return v


def random_unit_vectors(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` points uniformly on the unit sphere, shape (n, 3)."""
    g = rng.standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@dataclass(frozen=True)
class Effect:
    """Qubit effect ``E = c0 I + m . sigma`` with ``0 <= E <= I``."""

    c0: float
    m: BlochVector

    def __post_init__(self):
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "m", as_vector(self.m))
        self.validate()

    def validate(self) -> None:
        tol = tolerances.arithmetic
        mn = norm(self.m)
        if self.c0 - mn < -tol:
            raise InvalidEffect(f"negative eigenvalue {self.c0 - mn!r}")
        if self.c0 + mn > 1.0 + tol:
            raise InvalidEffect(f"eigenvalue above one {self.c0 + mn!r}")

    @property
    def eigenvalues(self) -> tuple[float, float]:
        mn = norm(self.m)
        return self.c0 - mn, self.c0 + mn

    @property
    def is_sharp(self) -> bool:
        tol = tolerances.structural
        return abs(self.c0 - 0.5) <= tol and abs(norm(self.m) - 0.5) <= tol

    def complement(self) -> "Effect":
        return Effect(1.0 - self.c0, -self.m)

    def __add__(self, other: "Effect") -> "Effect":
        return Effect(self.c0 + other.c0, self.m + other.m)

    def matrix(self) -> np.ndarray:
        return self.c0 * np.eye(2, dtype=complex) + np.tensordot(self.m, PAULI, axes=1)

    def allclose(self, other: "Effect", atol: float | None = None) -> bool:
        atol = tolerances.arithmetic if atol is None else atol
        return abs(self.c0 - other.c0) <= atol and bool(np.all(np.abs(self.m - other.m) <= atol))


@dataclass(frozen=True)
class QubitState:
    """Qubit state ``rho = (I + r . sigma) / 2``."""

    r: BlochVector

    def __post_init__(self):
        r = as_vector(self.r)
        if norm(r) > 1.0 + tolerances.arithmetic:
            raise InvalidState(f"|r| = {norm(r)!r} exceeds one")
        object.__setattr__(self, "r", r)

    @property
    def is_pure(self) -> bool:
        return abs(norm(self.r) - 1.0) <= tolerances.structural

    def density_matrix(self) -> np.ndarray:
        return 0.5 * (np.eye(2, dtype=complex) + np.tensordot(self.r, PAULI, axes=1))


def _state_vector(s) -> BlochVector:
    if isinstance(s, QubitState):
        return s.r
    return QubitState(s).r


def prob(e: Effect, s) -> float:
    """Outcome probability ``Tr[E rho] = c0 + m . r``.

    ``s`` is a :class:`QubitState` or anything convertible to its Bloch
    vector.  Round-off just outside [0, 1] is clamped.
    """
    e.validate()
    r = _state_vector(s)
    p = e.c0 + float(e.m @ r)
    tol = tolerances.arithmetic
    if -tol <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + tol:
        return 1.0
    return p


def sharp_effect(x, sign: int = 1) -> Effect:
    """Projector ``(I + sign * x . sigma) / 2`` onto the ``sign`` eigenspace of ``x . sigma``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x = require_unit(x, "x")
    return Effect(0.5, 0.5 * sign * x)


def sin_chi(a, b) -> float:
    """Incompatibility ``|a x b|`` of two unit observable directions."""
    a = require_unit(a, "a")
    b = require_unit(b, "b")
    cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    return min(math.sqrt(sum(x * x for x in cross)), 1.0)
