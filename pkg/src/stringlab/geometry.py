"""Conical-singularity reduction on the sphere.

Blow-up configurations with m satellite points (and optionally the origin)
induce, after a change of variables, a constant-curvature-one metric on the
sphere with conical singularities.  This module builds the angle-deficit
data from (a, N, m), evaluates the Gauss-Bonnet curvature budget, and
checks the solvability inequalities for such metrics.

The solvability check requires, besides the strict angle inequalities,
positivity of the total curvature mass chi + sum(theta) + theta_inf (the
Gauss-Bonnet budget); the mass condition is what rules out m >= N+1 in the
sub-threshold regime where the bare inequalities degenerate.

For a > 1/(N+1) one deficit exceeds 0 (angle above 2 pi) and the
inequalities are only sufficient, no longer necessary; such data carry
sufficient_only=True.
"""

import math
from dataclasses import dataclass, field

from .catalog import ORIGIN_SATELLITES, _snap, m_ranges
from .errors import AngleNonPositive, OutOfRegime

NEAR_BOUNDARY = 1e-9


@dataclass(frozen=True)
class ConicalData:
    """Angle deficits theta = alpha/(2 pi) - 1 of the singular sphere:
    theta0 at the origin image (None when absent), thetas at the satellite
    points, theta_inf at infinity.  euler is chi of the sphere."""

    theta0: float
    thetas: tuple
    theta_inf: float
    euler: int = 2
    sufficient_only: bool = False


def angles_from_case(a, N, m, include_origin=False):
    """Angle data of the metric induced by m satellite blow-up points
    (plus the origin when include_origin).

    theta_j = -2a at each satellite, theta0 = -2a(N+1) at the origin,
    theta_inf = -4aM(1-a(N+1))/(1 + sqrt(1-4aM(1-a(N+1)))) with M = m
    (no origin) or M = N+1+m (origin included).
    """
    if m >= 1 and not a < 0.5:
        raise AngleNonPositive("satellite angle 2 pi (1-2a) needs a < 1/2")
    theta0 = None
    if include_origin:
        if not a < 1.0 / (2.0 * (N + 1.0)):
            raise AngleNonPositive(
                "origin angle 2 pi (1-2a(N+1)) needs a < 1/(2(N+1))")
        theta0 = -2.0 * a * (N + 1.0)
    M = m + (N + 1.0 if include_origin else 0.0)
    rad = _snap(1.0 - 4.0 * a * M * (1.0 - a * (N + 1.0)))
    if rad < 0:
        raise AngleNonPositive(
            "angle at infinity undefined: radicand %g < 0" % rad)
    if M == 0:
        theta_inf = 0.0
    else:
        theta_inf = (-4.0 * a * M * (1.0 - a * (N + 1.0))
                     / (1.0 + math.sqrt(rad)))
    if theta_inf <= -1.0:
        raise AngleNonPositive("angle at infinity 2 pi (1+theta_inf) <= 0 "
                               "(theta_inf = %g)" % theta_inf)
    return ConicalData(theta0=theta0, thetas=(-2.0 * a,) * int(m),
                       theta_inf=theta_inf,
                       sufficient_only=a > 1.0 / (N + 1.0))


def gauss_bonnet_mass(cd):
    """Total curvature mass chi + sum(theta_j) + theta0 + theta_inf;
    equals the normalized integral of the induced curvature density and
    must be positive for a metric to exist."""
    t0 = cd.theta0 if cd.theta0 is not None else 0.0
    return cd.euler + sum(cd.thetas) + t0 + cd.theta_inf


@dataclass(frozen=True)
class TroyanovResult:
    ok: bool
    residuals: dict = field(default_factory=dict)

    @property
    def min_margin(self):
        vals = list(self.residuals.get("finite", []))
        vals.append(self.residuals["infinity"])
        vals.append(self.residuals["mass"])
        return min(vals)


def troyanov_check(cd):
    """Solvability inequalities for the constant-curvature-one conical
    metric with data cd.

    Strict conditions, checked with exact double comparisons:
      theta_i > sum_{j != i} theta_j + theta_inf  for each finite point i,
      theta_inf > sum of finite thetas,
      chi + sum(theta) + theta_inf > 0 (positive curvature mass).
    Returns the conjunction plus the margin of every inequality.
    """
    finite = list(cd.thetas)
    if cd.theta0 is not None:
        finite.append(cd.theta0)
    total = sum(finite)
    res = {
        "finite": [th - (total - th + cd.theta_inf) for th in finite],
        "infinity": cd.theta_inf - total,
        "mass": gauss_bonnet_mass(cd),
    }
    ok = (all(mg > 0.0 for mg in res["finite"])
          and res["infinity"] > 0.0 and res["mass"] > 0.0)
    return TroyanovResult(ok=ok, residuals=res)


@dataclass
class ScanReport:
    grid_a: list
    grid_N: list
    checked: int
    violations: list
    near_boundary_excluded: list
    empty_points: list = field(default_factory=list)

    def jsonable(self):
        return {"grid": {"a": self.grid_a, "N": self.grid_N},
                "checked": self.checked,
                "violations": self.violations,
                "near_boundary_excluded": self.near_boundary_excluded,
                "empty_points": self.empty_points}


DEFAULT_EQUIV_A = [round(0.02 * k, 2) for k in range(1, 13)]
DEFAULT_EQUIV_N = [1.5, 2.0, 3.0, 4.5]


def equivalence_scan(grid_a=None, grid_N=None):
    """Check that the solvability conditions hold exactly for 2 <= m < N+1.

    For every grid point with 0 < a < 1/(N+1) and every m in
    [1, ceil(N)+3], compares troyanov_check(angles_from_case(a, N, m))
    against the predicate 2 <= m < N+1.  Grid points where some margin is
    within 1e-9 of zero are excluded (the conditions are strict and those
    ties are genuine boundary cases) and reported.  Construction failures
    (an angle dropping to zero) count as an unsolvable configuration.
    """
    grid_a = list(grid_a) if grid_a is not None else list(DEFAULT_EQUIV_A)
    grid_N = list(grid_N) if grid_N is not None else list(DEFAULT_EQUIV_N)
    violations, excluded = [], []
    checked = 0
    for N in grid_N:
        for a in grid_a:
            if not a < 1.0 / (N + 1.0):
                continue
            for m in range(1, int(math.ceil(N)) + 4):
                expected = 2 <= m < N + 1.0
                try:
                    result = troyanov_check(angles_from_case(a, N, m))
                    got = result.ok
                    if abs(result.min_margin) < NEAR_BOUNDARY:
                        excluded.append({"a": a, "N": N, "m": m,
                                         "margin": result.min_margin})
                        continue
                except AngleNonPositive:
                    got = False
                checked += 1
                if got != expected:
                    violations.append({"a": a, "N": N, "m": m,
                                       "expected": expected, "got": got})
    return ScanReport(grid_a=grid_a, grid_N=grid_N, checked=checked,
                      violations=violations,
                      near_boundary_excluded=excluded)


DEFAULT_NEVER_A = [0.002, 0.005, 0.01, 0.02, 0.03, 0.04]
DEFAULT_NEVER_N = [1.0, 2.0, 3.0, 4.5]


def claim_never_scan(grid_a=None, grid_N=None):
    """Check that the with-origin configuration is never solvable.

    For grid points with 0 < a < 1/(2(N+1)) and every m admissible for the
    origin-plus-satellites mechanism, the inequality
    theta_inf > theta0 + sum(theta_j) must fail.  Reports any satisfaction
    (expected: none) and grid points whose admissible m-set is empty.
    """
    grid_a = list(grid_a) if grid_a is not None else list(DEFAULT_NEVER_A)
    grid_N = list(grid_N) if grid_N is not None else list(DEFAULT_NEVER_N)
    satisfied, excluded, empty = [], [], []
    checked = 0
    for N in grid_N:
        for a in grid_a:
            if not a < 1.0 / (2.0 * (N + 1.0)):
                continue
            try:
                ms = m_ranges(a, N, ORIGIN_SATELLITES)
            except OutOfRegime:
                continue
            if not ms:
                empty.append({"a": a, "N": N, "note": "no admissible m"})
                continue
            for m in ms:
                cd = angles_from_case(a, N, m, include_origin=True)
                margin = cd.theta_inf - (cd.theta0 + sum(cd.thetas))
                if abs(margin) < NEAR_BOUNDARY:
                    excluded.append({"a": a, "N": N, "m": m,
                                     "margin": margin})
                    continue
                checked += 1
                if margin > 0.0:
                    satisfied.append({"a": a, "N": N, "m": m,
                                      "margin": margin})
    return ScanReport(grid_a=grid_a, grid_N=grid_N, checked=checked,
                      violations=satisfied,
                      near_boundary_excluded=excluded,
                      empty_points=empty)
