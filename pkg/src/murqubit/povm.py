"""Joint POVM for a boundary pair (c, d) and error extraction from statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import tolerances
from .bloch import BlochVector, Effect, QubitState, as_vector, norm, prob, sharp_effect
from .compat import compat_functional
from .errors import DegenerateCD, DomainError, NotOnBoundary, PerfectApproximation

SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class JointPovm:
    """Four rank-1 effects ``M[(mu, nu)]`` whose marginals are ``C`` and ``D``."""

    effects: dict
    h: float
    c: BlochVector
    d: BlochVector

    def __getitem__(self, key) -> Effect:
        return self.effects[key]

    def total(self) -> Effect:
        c0 = sum(e.c0 for e in self.effects.values())
        m = sum(e.m for e in self.effects.values())
        return Effect(c0, m)

    def is_rank_one(self, mu: int, nu: int, tol: float | None = None) -> bool:
        tol = tolerances.structural if tol is None else tol
        return abs(norm(mu * self.c + nu * self.d) - (1.0 + mu * nu * self.h)) <= tol


@dataclass(frozen=True)
class SDecomposition:
    s_plus: BlochVector
    s_minus: BlochVector
    p_plus: float
    p_minus: float

    def direction(self, sign: int) -> BlochVector:
        return self.s_plus if sign > 0 else self.s_minus

    def effect(self, mu: int, nu: int) -> Effect:
        """The sharp effect ``S_mu^nu = (I + mu S^(mu nu) . sigma) / 2``."""
        return sharp_effect(self.direction(mu * nu), mu)


def boundary_h(c, d) -> float:
    return 0.5 * (norm(np.add(c, d)) - norm(np.subtract(c, d)))


def _require_boundary(c, d, tol=1e-6):
    f = compat_functional(c, d)
    if abs(f - 2.0) > tol:
        raise NotOnBoundary(f"f(c, d) = {f!r}, expected 2")


def build_joint_povm(c, d) -> JointPovm:
    """Rank-1 joint POVM ``M_{mu nu} = [(1 + mu nu h) I + (mu c + nu d) . sigma] / 4``."""
    c = as_vector(c)
    d = as_vector(d)
    _require_boundary(c, d)
    if min(norm(c + d), norm(c - d)) < tolerances.structural:
        raise DegenerateCD("d = +-c: S-operators undefined")
    h = boundary_h(c, d)
    effects = {(mu, nu): Effect((1.0 + mu * nu * h) / 4.0, (mu * c + nu * d) / 4.0) for mu, nu in SIGNS}
    return JointPovm(effects=effects, h=h, c=c, d=d)


def marginals(p: JointPovm) -> tuple[Effect, Effect, Effect, Effect]:
    """Return ``(C+, C-, D+, D-)`` summed from the joint effects."""
    m = p.effects
    c_plus = m[1, 1] + m[1, -1]
    c_minus = m[-1, 1] + m[-1, -1]
    d_plus = m[1, 1] + m[-1, 1]
    d_minus = m[1, -1] + m[-1, -1]
    return c_plus, c_minus, d_plus, d_minus


def s_decomposition(c, d) -> SDecomposition:
    c = as_vector(c)
    d = as_vector(d)
    n_plus = norm(c + d)
    n_minus = norm(c - d)
    if min(n_plus, n_minus) < tolerances.structural:
        raise DegenerateCD("d = +-c: S-operators undefined")
    h = 0.5 * (n_plus - n_minus)
    return SDecomposition(
        s_plus=as_vector((c + d) / n_plus),
        s_minus=as_vector((c - d) / n_minus),
        p_plus=(1.0 + h) / 2.0,
        p_minus=(1.0 - h) / 2.0,
    )


def worst_case_states(a, b, c, d) -> tuple[QubitState, QubitState]:
    """States along ``a - c`` and ``b - d`` that realise the worst-case errors.

    Raises :class:`PerfectApproximation` when either difference vanishes;
    the exception carries the state that is still defined.
    """
    da = np.subtract(a, c)
    db = np.subtract(b, d)
    tol = tolerances.structural
    na, nb = norm(da), norm(db)
    r1 = QubitState(da / na) if na >= tol else None
    r2 = QubitState(db / nb) if nb >= tol else None
    if r1 is None or r2 is None:
        raise PerfectApproximation(r1 is None, r2 is None, r1, r2)
    return r1, r2


def wasserstein2_sq(x, y, r) -> float:
    """Squared Wasserstein-2 distance ``2 |(x - y) . r|`` between two sharp-observable distributions."""
    rv = r.r if isinstance(r, QubitState) else QubitState(r).r
    return 2.0 * abs(float(np.subtract(x, y) @ rv))


def owc_from_statistics(p_a: float, p_s1: float, p_s2: float, h: float) -> float:
    """Error from measured probabilities: ``2 |p_A - P+ p_S1 - P- p_S2|`` with ``P+- = (1 +- h)/2``."""
    for name, p in (("p_a", p_a), ("p_s1", p_s1), ("p_s2", p_s2)):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"{name} = {p!r} outside [0, 1]")
    if abs(h) > 1.0:
        raise DomainError(f"|h| = {abs(h)!r} exceeds one")
    return 2.0 * abs(p_a - 0.5 * (1.0 + h) * p_s1 - 0.5 * (1.0 - h) * p_s2)


def pipeline_errors(a, b, c, d) -> tuple[float, float]:
    """Exact errors obtained by feeding ideal probabilities through :func:`owc_from_statistics`.

    A perfectly approximated channel reports exactly zero.
    """
    dec = s_decomposition(c, d)
    h = dec.p_plus - dec.p_minus
    try:
        r1, r2 = worst_case_states(a, b, c, d)
    except PerfectApproximation as exc:
        r1, r2 = exc.r1, exc.r2
    eps_a = eps_b = 0.0
    if r1 is not None:
        pa = prob(sharp_effect(a, 1), r1)
        eps_a = owc_from_statistics(pa, prob(dec.effect(1, 1), r1), prob(dec.effect(1, -1), r1), h)
    if r2 is not None:
        pb = prob(sharp_effect(b, 1), r2)
        eps_b = owc_from_statistics(pb, prob(dec.effect(1, 1), r2), prob(dec.effect(-1, 1), r2), h)
    return eps_a, eps_b
