"""Brute-force search for the lower boundary of the admissible error region.

Independent of the closed-form construction: for a fixed ``eps_a`` every
approximator ``c`` on the circle ``|a - c| = eps_a`` (in the a-b plane) is
paired with every ``d`` inside its compatibility ellipse, and the smallest
``|b - d|`` wins.  A coarse grid (step ``8 * grid_res``) is followed by three
local refinements that halve the step around the incumbent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import tolerances
from .bloch import BlochVector, QubitState, as_vector, random_unit_vectors, require_unit, sin_chi
from .compat import compat_functional, orthonormal_frame
from .errors import DomainError
from .povm import wasserstein2_sq
from .yuoh import mur_lower_bound, owc_errors, phi_for_eps_a

REFINEMENTS = 3
# elements per vectorized chunk of the grid
_CHUNK = 4_000_000


@dataclass(frozen=True)
class BoundaryPoint:
    eps_a: float
    eps_b: float
    c: BlochVector
    d: BlochVector


@dataclass(frozen=True)
class RegionScan:
    sin_chi: float
    resolution: float
    boundary: list
    analytic_eps_b: np.ndarray

    @property
    def eps_a(self) -> np.ndarray:
        return np.array([p.eps_a for p in self.boundary])

    @property
    def eps_b(self) -> np.ndarray:
        return np.array([p.eps_b for p in self.boundary])

    @property
    def witnesses(self) -> list:
        return [(p.c, p.d) for p in self.boundary]

    @property
    def deviation(self) -> np.ndarray:
        return self.eps_b - self.analytic_eps_b

    def max_bound_violation(self, n_phi: int = 100) -> float:
        """Largest amount by which any scanned pair undercuts the phi-family bound."""
        phis = np.linspace(0.0, np.pi / 2, n_phi)
        bound = mur_lower_bound(self.sin_chi, phis)
        lhs = np.outer(self.eps_a, np.sin(phis)) + np.outer(self.eps_b, np.cos(phis))
        return float(max(0.0, np.max(bound - lhs)))


def _plane(a, b):
    e1 = a
    w = b - (a @ b) * a
    nw = np.linalg.norm(w)
    e2 = w / nw if nw > 1e-15 else orthonormal_frame(a)[0]
    return e1, e2


def _grid(center, half_width, step, lo=None, hi=None, keep=None):
    n = int(np.floor(half_width / step + 1e-9))
    g = center + step * np.arange(-n, n + 1)
    if lo is not None:
        g = g[g >= lo]
    if hi is not None:
        g = g[g <= hi]
    if keep is not None and (g.size == 0 or abs(center - keep) <= half_width) and keep not in g:
        g = np.append(g, keep)
    return np.unique(g)


class _Search:
    """Minimize ``|b - d|`` over (s, t, rho) in 2D plane coordinates."""

    def __init__(self, cos_chi, sin_chi_value, eps_a):
        self.b = np.array([cos_chi, sin_chi_value])
        self.eps_a = eps_a

    def evaluate(self, s, t, rho, best):
        cx = 1.0 + self.eps_a * np.cos(s)
        cy = self.eps_a * np.sin(s)
        cn = np.hypot(cx, cy)
        ok = cn <= 1.0 + tolerances.arithmetic
        s, cx, cy, cn = s[ok], cx[ok], cy[ok], cn[ok]
        if s.size == 0:
            return best
        safe = np.where(cn > 0, cn, 1.0)
        ux, uy = np.where(cn > 0, cx / safe, 1.0), np.where(cn > 0, cy / safe, 0.0)
        minor = np.sqrt(np.clip(1.0 - cn**2, 0.0, None))
        ct, st = np.cos(t), np.sin(t)
        # boundary point p(s, t) of the ellipse of c; d = rho * p
        px = ct[None, :] * ux[:, None] - st[None, :] * minor[:, None] * uy[:, None]
        py = ct[None, :] * uy[:, None] + st[None, :] * minor[:, None] * ux[:, None]
        bp = self.b[0] * px + self.b[1] * py
        pp = px**2 + py**2
        rows = max(1, _CHUNK // max(1, t.size * rho.size))
        for i0 in range(0, s.size, rows):
            sl = slice(i0, i0 + rows)
            dist2 = 1.0 - 2.0 * rho * bp[sl, :, None] + rho**2 * pp[sl, :, None]
            dist = np.sqrt(np.clip(dist2, 0.0, None))
            m = dist.min()
            if best is not None and m > best[0]:
                continue
            idx = np.flatnonzero(dist == m)
            i, j, k = np.unravel_index(idx, dist.shape)
            dnorm = rho[k] * np.sqrt(pp[sl][i, j])
            sel = int(np.argmin(dnorm))
            cand = (float(m), float(dnorm[sel]), float(s[sl][i[sel]]), float(t[j[sel]]), float(rho[k[sel]]))
            if best is None or cand[:2] < best[:2]:
                best = cand
        return best

    def point(self, s, t, rho):
        c = np.array([1.0 + self.eps_a * np.cos(s), self.eps_a * np.sin(s)])
        cn = np.linalg.norm(c)
        u = c / cn if cn > 0 else np.array([1.0, 0.0])
        minor = np.sqrt(max(0.0, 1.0 - cn**2))
        p = np.cos(t) * u + np.sin(t) * minor * np.array([-u[1], u[0]])
        return c, rho * p


def _arc_step(eps_a, step):
    return step / max(eps_a, step)


def min_eb_given_ea(a, b, target_ea: float, grid_res: float = 1e-3):
    """Smallest ``eps_b`` among compatible pairs with ``|a - c| = target_ea``.

    Returns ``(min_eps_b, c, d)`` with the witness vectors in 3D.
    """
    a = require_unit(a, "a")
    b = require_unit(b, "b")
    if grid_res <= 0:
        raise DomainError("grid_res must be positive")
    sc = sin_chi(a, b)
    if target_ea < 0 or target_ea > sc + tolerances.structural:
        raise DomainError(f"target eps_a = {target_ea!r} outside [0, sin chi = {sc!r}]")
    e1, e2 = _plane(a, b)
    search = _Search(float(a @ b), float(b @ e2), float(target_ea))
    step = grid_res * 2**REFINEMENTS
    arc = _arc_step(target_ea, step)
    s = np.arange(0.0, 2 * np.pi, arc) if target_ea > 0 else np.zeros(1)
    t = np.arange(0.0, 2 * np.pi, step)
    rho = np.unique(np.append(np.arange(1.0, 0.0, -step), 0.0))
    best = search.evaluate(s, t, rho, None)
    for _ in range(REFINEMENTS):
        wide = 2 * step
        step /= 2
        _, _, s0, t0, r0 = best
        s = _grid(s0, 2 * arc, arc / 2) if target_ea > 0 else np.array([s0])
        arc /= 2
        best = search.evaluate(s, _grid(t0, wide, step), _grid(r0, wide, step, 0.0, 1.0, keep=1.0), best)
    _, _, s0, t0, r0 = best
    c2, d2 = search.point(s0, t0, r0)
    c = c2[0] * e1 + c2[1] * e2
    d = d2[0] * e1 + d2[1] * e2
    return float(np.linalg.norm(b - d)), as_vector(c), as_vector(d)


def min_eb_for_c_3d(b, c, grid_res: float = 5e-3) -> tuple[float, BlochVector]:
    """Full 3D search of the compatibility ellipsoid of ``c`` for the ``d`` closest to ``b``."""
    b = as_vector(b)
    c = as_vector(c)
    e1, e2, e3 = orthonormal_frame(c)
    minor = np.sqrt(max(0.0, 1.0 - float(c @ c)))

    def evaluate(th, ps, rho, best):
        st, ct = np.sin(th)[:, None], np.cos(th)[:, None]
        pts = (
            ct[..., None] * e3
            + (minor * st * np.cos(ps)[None, :])[..., None] * e1
            + (minor * st * np.sin(ps)[None, :])[..., None] * e2
        )
        bp = pts @ b
        pp = np.einsum("ijk,ijk->ij", pts, pts)
        dist = np.sqrt(np.clip(float(b @ b) - 2 * rho * bp[..., None] + rho**2 * pp[..., None], 0.0, None))
        i, j, k = np.unravel_index(int(np.argmin(dist)), dist.shape)
        cand = (float(dist[i, j, k]), float(th[i]), float(ps[j]), float(rho[k]))
        return cand if best is None or cand[0] < best[0] else best

    step = grid_res * 2**REFINEMENTS
    th = np.append(np.arange(0.0, np.pi, step), np.pi)
    ps = np.arange(0.0, 2 * np.pi, step)
    rho = np.unique(np.append(np.arange(1.0, 0.0, -step), 0.0))
    best = evaluate(th, ps, rho, None)
    for _ in range(REFINEMENTS):
        wide = 2 * step
        step /= 2
        _, th0, ps0, r0 = best
        best = evaluate(
            _grid(th0, wide, step, 0.0, np.pi),
            _grid(ps0, wide, step),
            _grid(r0, wide, step, 0.0, 1.0, keep=1.0),
            best,
        )
    dist, th0, ps0, r0 = best
    d = r0 * (np.cos(th0) * e3 + minor * np.sin(th0) * (np.cos(ps0) * e1 + np.sin(ps0) * e2))
    return dist, as_vector(d)


def scan_region(a, b, n_ea: int = 20, grid_res: float = 1e-3) -> RegionScan:
    """Scan ``n_ea`` evenly spaced ``eps_a`` values in ``[0, sin chi]``."""
    if n_ea < 2:
        raise DomainError("n_ea must be at least 2")
    a = require_unit(a, "a")
    b = require_unit(b, "b")
    sc = sin_chi(a, b)
    if sc < tolerances.structural:
        # (anti)parallel targets are jointly measurable as they stand
        origin = BoundaryPoint(0.0, 0.0, a, b)
        return RegionScan(sc, grid_res, [origin], np.zeros(1))
    targets = np.linspace(0.0, sc, n_ea)
    boundary = []
    analytic = []
    for ea in targets:
        eb, c, d = min_eb_given_ea(a, b, float(ea), grid_res)
        boundary.append(BoundaryPoint(float(ea), eb, c, d))
        analytic.append(owc_errors(sc, phi_for_eps_a(sc, float(ea)))[1])
    return RegionScan(sc, grid_res, boundary, np.array(analytic))


def witness_saturation(scan: RegionScan) -> np.ndarray:
    """``|f(c, d) - 2|`` for every boundary witness."""
    return np.array([abs(compat_functional(p.c, p.d) - 2.0) for p in scan.boundary])


def max_wasserstein_over_states(x, y, n_samples: int, seed: int = 0, return_state: bool = False):
    """Maximize ``2 |(x - y) . r|`` over ``n_samples`` random pure states."""
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1")
    rs = random_unit_vectors(n_samples, np.random.default_rng(seed))
    vals = 2.0 * np.abs(rs @ np.subtract(x, y))
    k = int(np.argmax(vals))
    best = wasserstein2_sq(x, y, QubitState(rs[k]))
    return (best, as_vector(rs[k])) if return_state else best
