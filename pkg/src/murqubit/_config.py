"""Global numerical tolerance record."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class Tolerances:
    # structural invariants (unit norms, boundary saturation, rank-1 checks)
    structural: float = 1e-9
    # exact arithmetic identities (completeness, probability bounds)
    arithmetic: float = 1e-12


tolerances = Tolerances()


@contextmanager
def override_tolerances(**values):
    """Temporarily replace fields of the global :data:`tolerances` record."""
    saved = {k: getattr(tolerances, k) for k in values}
    for k, v in values.items():
        setattr(tolerances, k, float(v))
    try:
        yield tolerances
    finally:
        for k, v in saved.items():
            setattr(tolerances, k, v)
