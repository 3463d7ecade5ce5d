"""Problem parameters, regime classification, and the algebraic mass identities.

The equation under study is -Delta u = e^{au} + |x|^{2N} e^u on the plane,
with a > 0 and N > -1.  Everything here is closed-form algebra in (a, N,
beta): the case thresholds the analysis distinguishes, the necessary bounds
on the normalized mass beta, the interval of masses realized by radial
solutions, the split of beta into the contributions of the two source terms,
and the global Pohozaev relation tying them together.
"""

import math
from dataclasses import dataclass

from .errors import DegenerateParameter, NegativeMass

# Relative tolerance for detecting that a sits exactly on a case threshold.
# Thresholds are rational functions of the inputs; exact ties only arise
# from user intent.
TAU_EQ = 1e-12

# Absolute tolerance separating genuine window violations from rounding in
# the mass split.
TAU_MASS = 1e-10


@dataclass(frozen=True)
class Params:
    """Global configuration (a, N) of every computation.

    a: exponent coefficient, a > 0.
    N: weight power (string multiplicity), N > -1, not necessarily integer.
    """

    a: float
    N: float

    def __post_init__(self):
        if not (self.a > 0):
            raise ValueError("require a > 0, got a=%r" % (self.a,))
        if not (self.N > -1):
            raise ValueError("require N > -1, got N=%r" % (self.N,))

    @property
    def degenerate(self):
        """True when a = 1/(N+1) within TAU_EQ (the rigid case beta=4(N+1))."""
        t = 1.0 / (self.N + 1.0)
        return abs(self.a - t) <= TAU_EQ * max(1.0, abs(t))


def thresholds(p):
    """The case thresholds the analysis compares a against, as name -> value."""
    N = p.N
    return {
        "1/(2(N+1))": 1.0 / (2.0 * (N + 1.0)),
        "1/(N+1)": 1.0 / (N + 1.0),
        "1/2": 0.5,
        "2/(N+2)": 2.0 / (N + 2.0),
        "2/(N+1)": 2.0 / (N + 1.0),
        "1": 1.0,
        "2": 2.0,
    }


@dataclass(frozen=True)
class RegimeTag:
    """Position of a in the ordered threshold partition.

    cell is a human-readable label of the selected cell; equalities lists
    the thresholds a coincides with (within TAU_EQ).  Use at/below/above
    for programmatic queries by threshold name.
    """

    cell: str
    equalities: tuple
    a: float
    threshold_items: tuple  # ((name, value), ...) in declaration order

    def _value(self, name):
        for n, v in self.threshold_items:
            if n == name:
                return v
        raise KeyError(name)

    def at(self, name):
        v = self._value(name)
        return abs(self.a - v) <= TAU_EQ * max(1.0, abs(v))

    def below(self, name):
        return (not self.at(name)) and self.a < self._value(name)

    def above(self, name):
        return (not self.at(name)) and self.a > self._value(name)


def classify_regime(p):
    """Locate a in the partition induced by the case thresholds."""
    items = tuple(thresholds(p).items())
    eqs = tuple(n for n, v in items
                if abs(p.a - v) <= TAU_EQ * max(1.0, abs(v)))
    # distinct threshold values in increasing order, ties merged
    groups = []
    for n, v in sorted(items, key=lambda nv: nv[1]):
        if groups and abs(v - groups[-1][1]) <= TAU_EQ * max(1.0, abs(v)):
            groups[-1][0].append(n)
        else:
            groups.append(([n], v))
    if eqs:
        cell = "a = " + " = ".join(eqs)
    else:
        below = [g for g in groups if p.a < g[1]]
        above = [g for g in groups if p.a > g[1]]
        if not above:
            cell = "a < %s" % below[0][0][0]
        elif not below:
            cell = "a > %s" % above[-1][0][0]
        else:
            cell = "%s < a < %s" % (above[-1][0][0], below[0][0][0])
    return RegimeTag(cell=cell, equalities=eqs, a=p.a, threshold_items=items)


@dataclass(frozen=True)
class Interval:
    """An open interval of masses; lo == hi marks the degenerate point case."""

    lo: float
    hi: float
    degenerate: bool = False

    def contains(self, x):
        """Strict interior membership (the intervals here are open)."""
        if self.degenerate:
            return False
        return self.lo < x < self.hi


@dataclass(frozen=True)
class MassSplit:
    """Total mass beta with its decomposition: beta1 from e^{au}, beta2 from
    |x|^{2N} e^u.  beta == beta1 + beta2 exactly by construction."""

    beta: float
    beta1: float
    beta2: float


def _check_not_degenerate(p):
    if p.degenerate:
        raise DegenerateParameter(
            "a = 1/(N+1) is the rigid case (beta = 4(N+1)); "
            "the mass-split denominator vanishes")


def necessary_bounds(p):
    """Lower bound and window every finite-mass solution must satisfy.

    Returns (lower, (win_lo, win_hi)) with lower = max{2/a, 2(N+1)} and
    window = (min{4/a, 4(N+1)}, max{4/a, 4(N+1)}).
    """
    _check_not_degenerate(p)
    lower = max(2.0 / p.a, 2.0 * (p.N + 1.0))
    w1, w2 = 4.0 / p.a, 4.0 * (p.N + 1.0)
    return lower, (min(w1, w2), max(w1, w2))


def radial_interval(p):
    """Open interval of masses attained by radial solutions.

    For a < 1/(N+1): (max{4(N+1), 4/a - 4(N+1)}, 4/a).
    For a > 1/(N+1): (max{4/a, 4(N+1) - 4/a}, 4(N+1)).
    At a = 1/(N+1) every radial solution has beta = 4(N+1); the returned
    interval degenerates to that single point.
    """
    four_np1 = 4.0 * (p.N + 1.0)
    four_a = 4.0 / p.a
    if p.degenerate:
        return Interval(four_np1, four_np1, degenerate=True)
    if p.a < 1.0 / (p.N + 1.0):
        return Interval(max(four_np1, four_a - four_np1), four_a)
    return Interval(max(four_a, four_np1 - four_a), four_np1)


def _reconcile_sum(beta, beta1):
    """Return (beta1, beta - beta1) with beta1 + beta2 == beta exactly.

    The naive pair can miss by one ulp when the subtraction lands on a
    rounding tie; moving beta1 a single ulp resolves it whenever both
    masses are comparable to beta, which holds inside the admissible
    window.
    """
    for cand in (beta1, math.nextafter(beta1, math.inf),
                 math.nextafter(beta1, -math.inf)):
        rem = beta - cand
        if cand + rem == beta:
            return cand, rem
    return beta1, beta - beta1


def mass_split(p, beta):
    """Split beta into its two source contributions.

    beta1 = a*beta*(beta - 4(N+1)) / (4(1 - a(N+1))), beta2 = beta - beta1
    (algebraically beta*(4 - a*beta)/(4(1 - a(N+1)))).  The factored forms
    make the window-endpoint zeros exact.
    """
    _check_not_degenerate(p)
    denom = 4.0 * (1.0 - p.a * (p.N + 1.0))
    beta1 = p.a * beta * (beta - 4.0 * (p.N + 1.0)) / denom
    beta1, beta2 = _reconcile_sum(beta, beta1)
    if beta1 < -TAU_MASS or beta2 < -TAU_MASS:
        raise NegativeMass(
            "mass split (%g, %g) negative: beta=%g outside the admissible "
            "window" % (beta1, beta2, beta))
    return MassSplit(beta=beta, beta1=beta1, beta2=beta2)


def mass_split_general(a, alpha1, alpha2, beta0):
    """Mass split for the generalized weights |x|^{2 alpha1} e^{au} and
    |x|^{2 alpha2} e^u.  With alpha1=0, alpha2=N this reduces to mass_split.
    """
    if not (alpha1 > -1 and alpha2 > -1):
        raise ValueError("require alpha1, alpha2 > -1")
    denom = 4.0 * ((alpha1 + 1.0) - a * (alpha2 + 1.0))
    scale = 4.0 * max(alpha1 + 1.0, a * (alpha2 + 1.0))
    if abs(denom) <= TAU_EQ * max(1.0, scale):
        raise DegenerateParameter("a = (alpha1+1)/(alpha2+1) is degenerate")
    beta1 = a * beta0 * (beta0 - 4.0 * (alpha2 + 1.0)) / denom
    beta1, beta2 = _reconcile_sum(beta0, beta1)
    if beta1 < -TAU_MASS or beta2 < -TAU_MASS:
        raise NegativeMass(
            "generalized mass split (%g, %g) negative for beta0=%g"
            % (beta1, beta2, beta0))
    return MassSplit(beta=beta0, beta1=beta1, beta2=beta2)


def pohozaev_global_residual(p, split):
    """Normalized residual of the global Pohozaev relation.

    The relation reads 2N * I2 + 2(1/a - 1) * I1 = pi beta (beta - 4) with
    I1 = 2 pi beta1, I2 = 2 pi beta2.  Zero (to rounding) for any split
    produced by mass_split.
    """
    beta = split.beta
    lhs = (2.0 * p.N * (2.0 * math.pi * split.beta2)
           + 2.0 * (1.0 / p.a - 1.0) * (2.0 * math.pi * split.beta1))
    rhs = math.pi * beta * (beta - 4.0)
    return abs(lhs - rhs) / max(1.0, math.pi * beta * beta)
