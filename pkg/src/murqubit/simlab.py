"""Monte Carlo shot-noise simulation of the optimal joint measurement.

Noise model
-----------
* preparation: with probability ``1 - prep_fidelity`` the ion starts in
  ``|up>``, which shrinks the prepared Bloch vector by ``2 F - 1``; an
  optional ``depolarize`` fraction shrinks it further by ``1 - lambda``;
* detection: symmetric outcome bit flip with probability ``detection_flip``;
* counts are binomial with ``shots`` trials.

Both imperfections multiply the measured errors by the known contrast
``kappa = (2F - 1)(1 - lambda)(1 - 2q)``; error estimates are divided by
``kappa`` unless ``calibrate=False``.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bloch import Effect, QubitState, prob, sharp_effect
from .errors import PerfectApproximation
from .povm import owc_from_statistics, s_decomposition, worst_case_states
from .yuoh import TradeoffPoint, optimal_vectors, targets_for

# index of each setting in the per-point seed tree
SETTING_INDEX = {"A+": 0, "S++@rho1": 1, "S+-@rho1": 2, "B+": 3, "S++@rho2": 4, "S+-@rho2": 5}
BOOTSTRAP_RESAMPLES = 1000


@dataclass(frozen=True)
class NoiseModel:
    prep_fidelity: float = 0.987
    detection_flip: float = 0.0022
    shots: int = 40000
    seed: int = 0
    depolarize: float = 0.0

    def __post_init__(self):
        for name in ("prep_fidelity", "detection_flip", "depolarize"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} = {v!r} is not a probability")
        if int(self.shots) != self.shots or self.shots < 1:
            raise ValueError(f"shots must be a positive integer, got {self.shots!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @classmethod
    def ideal(cls, **kw) -> "NoiseModel":
        """Noise-free model; any field may still be overridden."""
        return cls(**{"prep_fidelity": 1.0, "detection_flip": 0.0, **kw})

    @property
    def shrink(self) -> float:
        return (2.0 * self.prep_fidelity - 1.0) * (1.0 - self.depolarize)

    @property
    def contrast(self) -> float:
        return self.shrink * (1.0 - 2.0 * self.detection_flip)

    def replace(self, **kw) -> "NoiseModel":
        return dataclasses.replace(self, **kw)


CONFIG_KEYS = {
    "prep_fidelity": float,
    "detection_flip": float,
    "shots": int,
    "seed": int,
    "depolarize": float,
}


def parse_noise_config(text: str) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        values[key] = CONFIG_KEYS[key](value.strip())
    return values


def load_noise_config(path, base: NoiseModel | None = None) -> NoiseModel:
    values = parse_noise_config(Path(path).read_text(encoding="utf-8"))
    return (base or NoiseModel()).replace(**values)


@dataclass(frozen=True)
class ShotSummary:
    label: str
    true_p: float
    counts: int
    shots: int
    est_p: float
    std_err: float

    @property
    def deviation(self) -> float:
        return self.est_p - self.true_p


def noisy_probability(effect: Effect, state, noise: NoiseModel) -> float:
    """Outcome probability including preparation and detection imperfections."""
    r = state.r if isinstance(state, QubitState) else QubitState(state).r
    p_prep = prob(effect, QubitState(noise.shrink * r))
    q = noise.detection_flip
    return (1.0 - q) * p_prep + q * (1.0 - p_prep)


def _summary(label, p, counts, shots):
    est = counts / shots
    return ShotSummary(label, p, int(counts), shots, est, float(np.sqrt(est * (1.0 - est) / shots)))


def run_setting(
    effect: Effect,
    state,
    noise: NoiseModel,
    rng: np.random.Generator | None = None,
    label: str = "",
    exact: bool = False,
) -> ShotSummary:
    """Simulate ``noise.shots`` repetitions of one setting.

    Without an explicit ``rng`` the stream is seeded from ``noise.seed``.
    ``exact=True`` skips sampling: ``est_p`` equals the true probability and
    the standard error is zero.
    """
    p = noisy_probability(effect, state, noise)
    if exact:
        return ShotSummary(label, p, int(round(p * noise.shots)), noise.shots, p, 0.0)
    rng = np.random.default_rng(noise.seed) if rng is None else rng
    return _summary(label, p, rng.binomial(noise.shots, p), noise.shots)


def _rng(seed: int, point: int, setting: str) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(point, SETTING_INDEX[setting]))
    return np.random.default_rng(ss)


@dataclass(frozen=True)
class OwcEstimate:
    eps_a: float
    eps_b: float
    stderr_a: float
    stderr_b: float
    h: float
    summaries: dict = field(default_factory=dict)
    # channels whose approximation is perfect (error exactly zero, nothing measured)
    perfect: tuple = ()

    def probability(self, key: str) -> float | None:
        s = self.summaries.get(key)
        return None if s is None else s.est_p


def _channel(pa, ps1, ps2, h, scale):
    p_plus, p_minus = (1.0 + h) / 2, (1.0 - h) / 2
    eps = owc_from_statistics(pa.est_p, ps1.est_p, ps2.est_p, h) / scale
    err = 2.0 * np.sqrt(pa.std_err**2 + p_plus**2 * ps1.std_err**2 + p_minus**2 * ps2.std_err**2) / scale
    return eps, float(err)


def _bootstrap_channel(pa, ps1, ps2, h, scale, rng):
    n = pa.shots
    boot = [rng.binomial(n, s.est_p, size=BOOTSTRAP_RESAMPLES) / n for s in (pa, ps1, ps2)]
    eps = 2.0 * np.abs(boot[0] - 0.5 * (1 + h) * boot[1] - 0.5 * (1 - h) * boot[2]) / scale
    return float(np.std(eps, ddof=1))


def _complement(s: ShotSummary, label: str) -> ShotSummary:
    return ShotSummary(label, 1.0 - s.true_p, s.shots - s.counts, s.shots, 1.0 - s.est_p, s.std_err)


def estimate_owc(
    a,
    b,
    phi: float,
    noise: NoiseModel,
    *,
    exact: bool = False,
    calibrate: bool = True,
    bootstrap: bool = False,
    point_index: int = 0,
) -> OwcEstimate:
    """Simulate all settings at ``phi`` and extract ``(eps_a, eps_b)`` with standard errors.

    Summaries are keyed ``pA``, ``pS_pp@rho1``, ``pS_pm@rho1``, ``pB``,
    ``pS_pp@rho2``, ``pS_pm@rho2`` and the derived ``pS_mp@rho2``.
    """
    tp = optimal_vectors(a, b, phi)
    dec = s_decomposition(tp.c, tp.d)
    h = tp.h
    try:
        r1, r2 = worst_case_states(a, b, tp.c, tp.d)
    except PerfectApproximation as exc:
        r1, r2 = exc.r1, exc.r2
    scale = noise.contrast if calibrate else 1.0
    if scale <= 0.0:
        raise ValueError("noise contrast is zero; errors cannot be calibrated")

    def run(label, effect, state):
        return run_setting(effect, state, noise, rng=_rng(noise.seed, point_index, label), label=label, exact=exact)

    summaries = {}
    eps_a = eps_b = err_a = err_b = 0.0
    perfect = []
    s_pp, s_pm = dec.effect(1, 1), dec.effect(1, -1)
    boot_rng = np.random.default_rng(np.random.SeedSequence(noise.seed, spawn_key=(point_index, 99)))
    if r1 is None:
        perfect.append("a")
    else:
        pa = summaries["pA"] = run("A+", sharp_effect(a, 1), r1)
        p1 = summaries["pS_pp@rho1"] = run("S++@rho1", s_pp, r1)
        p2 = summaries["pS_pm@rho1"] = run("S+-@rho1", s_pm, r1)
        eps_a, err_a = _channel(pa, p1, p2, h, scale)
        if bootstrap and not exact:
            err_a = _bootstrap_channel(pa, p1, p2, h, scale, boot_rng)
    if r2 is None:
        perfect.append("b")
    else:
        pb = summaries["pB"] = run("B+", sharp_effect(b, 1), r2)
        p1 = summaries["pS_pp@rho2"] = run("S++@rho2", s_pp, r2)
        pm = summaries["pS_pm@rho2"] = run("S+-@rho2", s_pm, r2)
        p2 = summaries["pS_mp@rho2"] = _complement(pm, "S-+@rho2")
        eps_b, err_b = _channel(pb, p1, p2, h, scale)
        if bootstrap and not exact:
            err_b = _bootstrap_channel(pb, p1, p2, h, scale, boot_rng)
    return OwcEstimate(eps_a, eps_b, err_a, err_b, h, summaries, tuple(perfect))


def repeat_owc(a, b, phi: float, noise: NoiseModel, n_repeats: int, *, calibrate: bool = True) -> np.ndarray:
    """``n_repeats`` independent error estimates at one setting, shape (n_repeats, 2)."""
    tp = optimal_vectors(a, b, phi)
    dec = s_decomposition(tp.c, tp.d)
    try:
        r1, r2 = worst_case_states(a, b, tp.c, tp.d)
    except PerfectApproximation as exc:
        r1, r2 = exc.r1, exc.r2
    scale = noise.contrast if calibrate else 1.0
    rng = np.random.default_rng(noise.seed)
    n = noise.shots
    h = tp.h
    out = np.zeros((n_repeats, 2))

    def draw(effect, state):
        return rng.binomial(n, noisy_probability(effect, state, noise), size=n_repeats) / n

    s_pp, s_pm, s_mp = dec.effect(1, 1), dec.effect(1, -1), dec.effect(-1, 1)
    for col, target, state, second in ((0, a, r1, s_pm), (1, b, r2, s_mp)):
        if state is None:
            continue
        pt, p1, p2 = draw(sharp_effect(target, 1), state), draw(s_pp, state), draw(second, state)
        out[:, col] = 2.0 * np.abs(pt - 0.5 * (1 + h) * p1 - 0.5 * (1 - h) * p2) / scale
    return out


@dataclass(frozen=True)
class SweepPoint:
    index: int
    tradeoff: TradeoffPoint
    estimate: OwcEstimate


@dataclass(frozen=True)
class SweepDataset:
    sin_chi: float
    noise: NoiseModel
    points: list

    @property
    def phis(self) -> np.ndarray:
        return np.array([p.tradeoff.phi for p in self.points])


def sweep(
    sin_chi_value: float,
    phi_grid,
    noise: NoiseModel,
    *,
    exact: bool = False,
    calibrate: bool = True,
    bootstrap: bool = False,
    max_workers: int | None = None,
) -> SweepDataset:
    """Simulate the standard targets at every ``phi`` of a strictly increasing grid.

    Each grid point draws from its own seed stream, so results do not depend
    on ``max_workers``.
    """
    phis = [float(p) for p in np.asarray(phi_grid, dtype=float).reshape(-1)]
    if any(b <= a for a, b in zip(phis, phis[1:])):
        raise ValueError("phi grid must be strictly increasing")
    a, b = targets_for(sin_chi_value)

    def one(i):
        est = estimate_owc(a, b, phis[i], noise, exact=exact, calibrate=calibrate, bootstrap=bootstrap, point_index=i)
        return SweepPoint(i, optimal_vectors(a, b, phis[i]), est)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            points = list(pool.map(one, range(len(phis))))
    else:
        points = [one(i) for i in range(len(phis))]
    return SweepDataset(float(sin_chi_value), noise, points)
