"""Exit criteria of the toolkit, runnable from tests and from ``murqubit verify``.

Each check returns a :class:`CriterionResult`.  Setting the environment
variable ``MURQUBIT_VERIFY_TOL`` replaces every numerical tolerance by its
value, which is handy for seeing which invariant breaks first.
"""

from __future__ import annotations

import os
import time
from dataclasses import asdict, dataclass

import numpy as np

from .bloch import QubitState, prob, random_unit_vectors, sharp_effect
from .compat import ellipsoid_for
from .oracle import scan_region, witness_saturation
from .povm import SIGNS, build_joint_povm, marginals, owc_from_statistics
from .pulses import compile_tradeoff, execute, measure_pulse, measured_effect, prep_pulse, prepared_state
from .simlab import NoiseModel, repeat_owc, run_setting, sweep
from .yuoh import additive_bound, mur_lower_bound, optimal_vectors, owc_errors, targets_for

FIG5_SIN_CHI = (1.0, np.sqrt(2.0) / 2.0, 0.5, 1.0 / 3.0)
TOL_ENV = "MURQUBIT_VERIFY_TOL"


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f} s)"

    def as_dict(self) -> dict:
        return asdict(self)


def _tol(default: float) -> float:
    raw = os.environ.get(TOL_ENV)
    return float(raw) if raw else default


def phi_grid(n: int = 200) -> np.ndarray:
    return np.linspace(0.0, np.pi / 2, n)


def bound_saturation() -> tuple[bool, str]:
    tol = _tol(1e-12)
    phis = phi_grid()
    worst = 0.0
    for s in FIG5_SIN_CHI:
        ea, eb = owc_errors(s, phis)
        lhs = ea * np.sin(phis) + eb * np.cos(phis)
        worst = max(worst, float(np.max(np.abs(lhs - mur_lower_bound(s, phis)))))
    return worst <= tol, f"max |lhs - bound| = {worst:.2e} (tol {tol:.0e})"


def endpoints_and_peak() -> tuple[bool, str]:
    tol = _tol(1e-12)
    worst = 0.0
    for s in FIG5_SIN_CHI:
        e0 = owc_errors(s, 0.0)
        e1 = owc_errors(s, np.pi / 2)
        worst = max(worst, abs(e0[0] - s), abs(e0[1]), abs(e1[0]), abs(e1[1] - s))
    ea, eb = owc_errors(0.5, phi_grid())
    peak = max(float(ea.max()), float(eb.max()))
    ok = worst <= tol and abs(peak - 0.5) <= tol
    return ok, f"endpoint error {worst:.2e}, peak at sin chi = 0.5 is {peak:.15f} (tol {tol:.0e})"


def additive_tangency() -> tuple[bool, str]:
    tol = _tol(1e-9)
    phis = np.linspace(0.0, np.pi / 2, 2001)
    worst = 0.0
    at_quarter = True
    for s in FIG5_SIN_CHI:
        total = np.add(*owc_errors(s, phis))
        k = int(np.argmin(total))
        at_quarter &= abs(phis[k] - np.pi / 4) <= 1e-12
        worst = max(worst, abs(float(total[k]) - additive_bound(s)))
    top = additive_bound(1.0)
    ok = worst <= tol and at_quarter and abs(top - (2 - np.sqrt(2))) <= tol
    return ok, f"max |min(eps_a+eps_b) - bound| = {worst:.2e}, argmin at pi/4: {at_quarter}, bound(1) = {top:.6f}"


def _program_probabilities(programs):
    coeff = {}
    pulse = {}
    for p in programs:
        key = (p.state_label, p.label)
        coeff[key] = prob(p.effect, p.state)
        pulse[key] = execute(p)
    return coeff, pulse


def _errors_from(probs, h):
    eps_a = eps_b = 0.0
    if ("rho1", "A+") in probs:
        eps_a = owc_from_statistics(probs["rho1", "A+"], probs["rho1", "S++"], probs["rho1", "S+-"], h)
    if ("rho2", "B+") in probs:
        p_mp = 1.0 - probs["rho2", "S+-"]
        eps_b = owc_from_statistics(probs["rho2", "B+"], probs["rho2", "S++"], p_mp, h)
    return eps_a, eps_b


def pipeline_identity() -> tuple[bool, str]:
    tol = _tol(1e-12)
    worst = 0.0
    for s in FIG5_SIN_CHI:
        a, b = targets_for(s)
        for phi in phi_grid():
            tp = optimal_vectors(a, b, phi)
            coeff, pulse = _program_probabilities(compile_tradeoff(a, b, tp))
            h = tp.h
            expected = owc_errors(s, phi)
            for probs in (coeff, pulse):
                got = _errors_from(probs, h)
                worst = max(worst, abs(got[0] - expected[0]), abs(got[1] - expected[1]))
    return worst <= tol, f"max |pipeline - closed form| = {worst:.2e} over 4 x 200 grid, both routes (tol {tol:.0e})"


def oracle_tightness(grid_res: float = 1e-3, n_ea: int = 20) -> tuple[bool, str]:
    tol = _tol(2e-3)
    slack = _tol(2 * grid_res)
    parts = []
    ok = True
    for s in FIG5_SIN_CHI:
        a, b = targets_for(s)
        t0 = time.perf_counter()
        scan = scan_region(a, b, n_ea, grid_res)
        dt = time.perf_counter() - t0
        sup = float(np.max(np.abs(scan.deviation)))
        below = scan.max_bound_violation()
        sat = float(np.max(witness_saturation(scan)))
        ok &= sup <= tol and below <= slack and dt < 60.0 and sat <= 10 * grid_res
        parts.append(f"sin chi={s:.3f}: sup {sup:.1e}, below-bound {below:.1e}, |f-2| {sat:.1e}, {dt:.1f}s")
    return ok, "; ".join(parts)


def random_boundary_pairs(n: int, seed: int = 12345):
    """Random (c, d) with ``f(c, d) = 2``: ``d`` in the ball and ``c`` on its ellipsoid."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < n:
        d = random_unit_vectors(1, rng)[0] * rng.uniform(0.0, 1.0) ** (1 / 3)
        theta = np.arccos(rng.uniform(-1.0, 1.0))
        c = ellipsoid_for(d).surface_point(theta, rng.uniform(0.0, 2 * np.pi))
        if min(np.linalg.norm(c + d), np.linalg.norm(c - d)) > 1e-6:
            pairs.append((c, d))
    return pairs


def povm_structure(n: int = 1000) -> tuple[bool, str]:
    tol = _tol(1e-9)
    comp = pos = marg = 0.0
    for c, d in random_boundary_pairs(n):
        p = build_joint_povm(c, d)
        total = p.total()
        comp = max(comp, abs(total.c0 - 1.0), float(np.max(np.abs(total.m))))
        for mu, nu in SIGNS:
            e = p[mu, nu]
            pos = max(pos, abs(np.linalg.norm(mu * p.c + nu * p.d) - (1 + mu * nu * p.h)), max(0.0, -e.eigenvalues[0]))
        cp, cm, dp, dm = marginals(p)
        for eff, vec in ((cp, c), (cm, -c), (dp, d), (dm, -d)):
            marg = max(marg, abs(eff.c0 - 0.5), float(np.max(np.abs(eff.m - 0.5 * vec))))
    ok = max(comp, pos, marg) <= tol
    return ok, f"{n} pairs: completeness {comp:.1e}, rank-1 {pos:.1e}, marginality {marg:.1e} (tol {tol:.0e})"


def pulse_compiler(n: int = 1000) -> tuple[bool, str]:
    tol = _tol(1e-9)
    exact = _tol(1e-12)
    _, b = targets_for(0.5)
    pb = measure_pulse(b)
    pa = measure_pulse([0.0, 1.0, 0.0])
    ok_b = abs(pb.theta - np.pi / 3) <= exact and pb.phase == 0.0
    rng = np.random.default_rng(2024)
    worst_r = worst_e = 0.0
    for v in random_unit_vectors(n, rng):
        worst_r = max(worst_r, float(np.max(np.abs(prepared_state(prep_pulse(v)) - v))))
        eff = measured_effect(measure_pulse(v))
        worst_e = max(worst_e, abs(eff.c0 - 0.5), float(np.max(np.abs(eff.m - 0.5 * v))))
    ok = ok_b and max(worst_r, worst_e) <= tol
    return ok, (
        f"B+: theta2 = {pb.theta:.15f} (pi/3 = {np.pi / 3:.15f}), phi2 = {pb.phase}; "
        f"A+: theta2 = {pa.theta:.6f} (pi/2); round trips: state {worst_r:.1e}, effect {worst_e:.1e}"
    )


def statistical_claims(n_repeats: int = 1000) -> tuple[bool, str]:
    tol = _tol(1e-12)
    noise = NoiseModel(seed=7)
    sigma = float(np.sqrt(0.25 / noise.shots))
    sampled = run_setting(sharp_effect([0, 0, 1], 1), QubitState([0, 0, 0]), NoiseModel.ideal(seed=7))
    worst = 0.0
    for s in FIG5_SIN_CHI:
        a, b = targets_for(s)
        for phi in np.linspace(0.0, np.pi / 2, 13):
            est = repeat_owc(a, b, phi, noise, n_repeats)
            worst = max(worst, float(np.max(np.std(est, axis=0, ddof=1))))
    ok = abs(sigma - 0.0025) <= tol and abs(sampled.std_err - 0.0025) <= 1e-5 and worst < 0.01
    return ok, (
        f"sigma(p=0.5, N=40000) = {sigma:.6f}, sampled {sampled.std_err:.6f}; "
        f"max empirical std of eps over {n_repeats} repeats x 52 settings = {worst:.5f} (< 0.01)"
    )


def bound_compliance(seed: int = 0) -> tuple[bool, str]:
    k = _tol(3.0)
    worst = -np.inf
    for s in FIG5_SIN_CHI:
        data = sweep(s, np.linspace(0.0, np.pi / 2, 13), NoiseModel(seed=seed))
        for pt in data.points:
            phi, est = pt.tradeoff.phi, pt.estimate
            lhs = est.eps_a * np.sin(phi) + est.eps_b * np.cos(phi)
            se = np.hypot(np.sin(phi) * est.stderr_a, np.cos(phi) * est.stderr_b)
            shortfall = mur_lower_bound(s, phi) - lhs
            if shortfall > 0:
                worst = max(worst, shortfall / se if se > 0 else np.inf)
    worst = max(worst, 0.0)
    return worst <= k, f"largest shortfall below the bound = {worst:.2f} combined standard errors (limit {k:g})"


CRITERIA = [
    (1, "bound saturation", bound_saturation, 1.0),
    (2, "endpoints and peak", endpoints_and_peak, None),
    (3, "additive bound tangency", additive_tangency, 1.0),
    (4, "pipeline identity", pipeline_identity, 1.0),
    (5, "oracle tightness", oracle_tightness, None),
    (6, "POVM structure", povm_structure, None),
    (7, "pulse compiler", pulse_compiler, None),
    (8, "statistical claims", statistical_claims, 120.0),
    (9, "simulated bound compliance", bound_compliance, None),
]


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn, budget in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if budget is not None and dt >= budget:
                ok = False
                detail += f"; runtime {dt:.2f} s exceeds {budget:g} s"
            return CriterionResult(num, name, bool(ok), detail, dt)
    raise KeyError(number)


def run_all(numbers=None) -> list[CriterionResult]:
    numbers = [c[0] for c in CRITERIA] if numbers is None else numbers
    return [run_criterion(n) for n in numbers]
