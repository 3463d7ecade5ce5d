# Exception hierarchy shared by all modules.


class StringLabError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateParameter(StringLabError):
    """a sits exactly on the degenerate threshold a = 1/(N+1) (or its
    generalized-weight analogue), where the mass-split denominators vanish."""


class NegativeMass(StringLabError):
    """A mass component came out negative beyond rounding: beta is outside
    the admissible window."""


class ComplexRoot(StringLabError):
    """A closed-form radicand is negative: the requested value is not real."""


class OutOfRegime(StringLabError):
    """The requested formula does not apply in the given (a, N) regime or
    for the given multiplicity m."""


class OutOfDomain(StringLabError):
    """Argument outside the domain of a special function."""


class StepTooLarge(StringLabError):
    """Series-start radius too large for the requested tolerance."""


class NoDecay(StringLabError):
    """The far-field slope failed to stabilize by r_max."""


class Overflow(StringLabError):
    """u exceeded the blow-up threshold: non-integrable initial datum."""


class TailDivergent(StringLabError):
    """The asymptotic tail integrals diverge (beta too small)."""


class TargetOutsideInterval(StringLabError):
    """Requested mass is not strictly inside the solvable interval."""


class NonBracketed(StringLabError):
    """The sweep could not bracket the requested mass."""


class AngleNonPositive(StringLabError):
    """A cone angle came out <= 0; the construction does not apply."""


class CoincidentPoints(StringLabError):
    """Two configuration points coincide (or one sits at the origin)."""


class Inadmissible(StringLabError):
    """Explicit-family parameters violate an admissibility inequality."""


class PatchTooCloseToOrigin(StringLabError):
    """Sampling patch intrudes into the origin exclusion radius."""


class DisksOverlap(StringLabError):
    """Concentration disks overlap (or reach the origin)."""
