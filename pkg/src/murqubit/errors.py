"""Exception hierarchy shared by all modules."""


class MurError(ValueError):
    """Base class for every domain error raised by the package."""


class DomainError(MurError):
    """A scalar parameter is outside its admissible range."""


class InvalidEffect(MurError):
    """Operator is not an effect (not between 0 and I)."""


class InvalidState(MurError):
    """Bloch vector lies outside the unit ball."""


class NotUnit(MurError):
    """A vector that must be a unit vector is not."""


class OutOfBall(MurError):
    """An approximator vector has norm larger than one."""


class DegenerateTargets(MurError):
    """The two target observables commute (sin chi is zero)."""


class NotOnBoundary(MurError):
    """(c, d) is not on the joint-measurability boundary f(c, d) = 2."""


class DegenerateDot(MurError):
    """(c . d)^2 is too close to one for the phi parametrization."""


class DegenerateCD(MurError):
    """c + d or c - d vanishes, so the S-operators are undefined."""


class PerfectApproximation(MurError):
    """One (or both) approximators coincide with their target.

    The worst-case state for that channel is undefined and its error is
    exactly zero.  ``first`` / ``second`` flag the degenerate channels and
    ``r1`` / ``r2`` carry whichever states *are* defined (else ``None``).
    """

    def __init__(self, first, second, r1=None, r2=None):
        which = [name for name, flag in (("first", first), ("second", second)) if flag]
        super().__init__(f"perfect approximation in {' and '.join(which)} channel")
        self.first = first
        self.second = second
        self.r1 = r1
        self.r2 = r2
