"""Compile Bloch-level preparations and measurements into carrier pulses.

Convention: ``|up> = (1, 0)`` has Bloch vector (0, 0, +1), ``|down> = (0, 1)``
has (0, 0, -1).  A pulse ``U_C(theta, phase)`` applied to ``|down>`` gives
``r = (sin theta sin phase, sin theta cos phase, -cos theta)``; the
measurement pulse pulls ``|up><up|`` back to ``(I + e . sigma)/2`` with
``e = (sin theta sin phase, sin theta cos phase, cos theta)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._config import tolerances
from .bloch import PAULI, BlochVector, Effect, QubitState, as_vector, require_unit, sharp_effect
from .errors import PerfectApproximation
from .povm import s_decomposition, worst_case_states
from .yuoh import TradeoffPoint, optimal_vectors

TWO_PI = 2.0 * np.pi
RABI_FREQUENCY_HZ = 54e3

UP = np.array([1.0, 0.0], dtype=complex)
DOWN = np.array([0.0, 1.0], dtype=complex)

RHO1_SETTINGS = ("A+", "S++", "S+-")
RHO2_SETTINGS = ("B+", "S++", "S+-")


@dataclass(frozen=True)
class CarrierPulse:
    theta: float
    phase: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= TWO_PI:
            raise ValueError(f"pulse area {self.theta!r} outside [0, 2 pi]")
        if not 0.0 <= self.phase < TWO_PI:
            raise ValueError(f"phase {self.phase!r} outside [0, 2 pi)")

    @property
    def duration(self) -> float:
        """Pulse length in seconds at the nominal Rabi frequency."""
        return self.theta / (TWO_PI * RABI_FREQUENCY_HZ)


@dataclass(frozen=True)
class PulseProgram:
    """One experimental setting: prepare a state, rotate, detect ``|up>``."""

    label: str
    state_label: str
    prep: CarrierPulse
    measure: CarrierPulse
    r: BlochVector
    e: BlochVector

    @property
    def effect(self) -> Effect:
        return sharp_effect(self.e, 1)

    @property
    def state(self) -> QubitState:
        return QubitState(self.r)


def carrier_unitary(p: CarrierPulse) -> np.ndarray:
    """``cos(theta/2) I - i sin(theta/2) (sigma_x cos phase - sigma_y sin phase)``."""
    c = math.cos(p.theta / 2)
    s = -1j * math.sin(p.theta / 2)
    w = cmath.exp(1j * p.phase)
    # sigma_x cos phase - sigma_y sin phase = [[0, e^{i phase}], [e^{-i phase}, 0]]
    return np.array([[c, s * w], [s * w.conjugate(), c]])


def bloch_of_ket(psi: np.ndarray) -> BlochVector:
    rho = np.outer(psi, psi.conj())
    return as_vector([np.real(np.trace(rho @ s)) for s in PAULI])


def _phase(x: float, y: float) -> float:
    # transverse component along x vanishes -> phase 0 (or pi when y < 0)
    if abs(x) <= tolerances.arithmetic:
        return 0.0 if y >= 0.0 else float(np.pi)
    return float(np.arctan2(x, y) % TWO_PI)


def prep_pulse(r) -> CarrierPulse:
    """Pulse taking ``|down>`` to the pure state with Bloch vector ``r``."""
    r = require_unit(r, "r")
    # same angle as 2 arccos sqrt((1 - r_z)/2), without the cancellation near the poles
    theta = float(np.arctan2(np.hypot(r[0], r[1]), -r[2]))
    return CarrierPulse(theta, _phase(r[0], r[1]))


def measure_pulse(e) -> CarrierPulse:
    """Pulse after which detecting ``|up>`` realises ``(I + e . sigma)/2``."""
    e = require_unit(e, "e")
    theta = float(np.arctan2(np.hypot(e[0], e[1]), e[2]))
    return CarrierPulse(theta, _phase(e[0], e[1]))


def prepared_state(p: CarrierPulse) -> BlochVector:
    return bloch_of_ket(carrier_unitary(p) @ DOWN)


def measured_effect(p: CarrierPulse) -> Effect:
    """Pull ``|up><up|`` back through the measurement pulse."""
    u = carrier_unitary(p)
    op = u.conj().T @ np.outer(UP, UP.conj()) @ u
    c0 = float(np.real(np.trace(op))) / 2
    m = [float(np.real(np.trace(op @ s))) / 2 for s in PAULI]
    return Effect(c0, m)


def execute(program: PulseProgram) -> float:
    """Ideal ``|<up| U_2 U_1 |down>|^2`` computed with 2x2 unitaries."""
    amp = UP.conj() @ carrier_unitary(program.measure) @ carrier_unitary(program.prep) @ DOWN
    return float(abs(amp) ** 2)


def make_program(label: str, state_label: str, r, e) -> PulseProgram:
    r = as_vector(r)
    e = as_vector(e)
    return PulseProgram(label, state_label, prep_pulse(r), measure_pulse(e), r, e)


def compile_experiment(a, b, phi: float) -> list[PulseProgram]:
    """Pulse programs for every setting at trade-off angle ``phi``.

    On ``rho1`` the settings A+, S++, S+- are compiled; on ``rho2`` B+, S++,
    S+- (S-+ is its complement).  A perfectly approximated channel has no
    worst-case state and its programs are omitted.
    """
    return compile_tradeoff(a, b, optimal_vectors(a, b, phi))


def compile_tradeoff(a, b, tp: TradeoffPoint) -> list[PulseProgram]:
    """As :func:`compile_experiment` for an already constructed trade-off point."""
    a = as_vector(a)
    b = as_vector(b)
    dec = s_decomposition(tp.c, tp.d)
    try:
        r1, r2 = worst_case_states(a, b, tp.c, tp.d)
    except PerfectApproximation as exc:
        r1, r2 = exc.r1, exc.r2
    directions = {"A+": a, "B+": b, "S++": dec.s_plus, "S+-": dec.s_minus}
    programs = []
    for state_label, state, labels in (("rho1", r1, RHO1_SETTINGS), ("rho2", r2, RHO2_SETTINGS)):
        if state is None:
            continue
        programs.extend(make_program(lbl, state_label, state.r, directions[lbl]) for lbl in labels)
    return programs
