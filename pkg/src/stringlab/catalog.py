"""Catalog of admissible limiting masses and the related special functions.

For a blow-up (or blow-down) sequence of solutions the total mass converges
to one of finitely many values (plus, in some regimes, a continuous
window).  This module evaluates every closed-form candidate value, the
integer multiplicity ranges that license them, and enumerates the full
catalog for a given (a, N).  It also implements the two auxiliary calculus
functions f and phi/psi with their thresholds, which control the
multiplicity ranges.

Mechanism tags:
  FullMass4overA    beta = 4/a (all mass in the e^{au} term).
  OriginMinusPolygon beta = 4/a - 4(N+1) (origin blow-up, a < 1/(2(N+1))).
  PolygonOnly4N1    beta = 4(N+1).
  FormulaA          beta = (2/a)(1 + sqrt(1 - 4am(1-a(N+1)))).
  FormulaB          two-tier value with a distinguished heavy point.
  FormulaC          beta = 2(N+1+sqrt((N+1)^2 - (4m/a^2)(a(N+1)-1))).
  EqualMasses       m equal point masses, beta = 4Nm/((a(N+1)-1)+m(1-a)).
  SumConstraint     beta = sum of per-point masses subject to box, max and
                    sum-of-squares constraints (continuum of candidates).
  Window06          the continuous window 2(N+1) <= beta <= 4(N+1)-4/a.

In the regime 1/(N+1) < a <= 2/(N+1), a != 1, the mixed display in the
source case split is read as that two-sided condition on a.
"""

import math
from dataclasses import dataclass, field

from .errors import ComplexRoot, DegenerateParameter, OutOfDomain, OutOfRegime
from .regime import Params

MECHANISMS = ("FullMass4overA", "OriginMinusPolygon", "FormulaA", "FormulaB",
              "FormulaC", "EqualMasses", "PolygonOnly4N1", "Window06",
              "SumConstraint")

# multiplicity-range mechanism for origin-plus-satellites configurations,
# used by the geometry scans
ORIGIN_SATELLITES = "OriginSatellites"

RADICAND_SNAP = -1e-14


def _snap(x):
    """Snap tiny negative radicands (endpoint m values sit exactly on
    radicand zeros) to zero."""
    if RADICAND_SNAP <= x < 0.0:
        return 0.0
    return x


@dataclass(frozen=True)
class BlowupValue:
    """One admissible limiting mass (or continuous window of masses)."""

    mechanism: str
    value: float = None
    interval: tuple = None
    m: int = None
    constraints: dict = field(default_factory=dict)
    suspect: bool = False

    def jsonable(self):
        d = {"mechanism": self.mechanism, "suspect": self.suspect}
        if self.value is not None:
            d["value"] = self.value
        if self.interval is not None:
            d["interval"] = list(self.interval)
        if self.m is not None:
            d["m"] = self.m
        if self.constraints:
            d["constraints"] = self.constraints
        return d


@dataclass(frozen=True)
class SumConstraintWitness:
    """A candidate decomposition beta = sum beta_j."""

    betas: tuple

    @property
    def m(self):
        return len(self.betas)


# -- closed-form candidate values --------------------------------------

def beta_formula_A(a, N, m):
    """(2/a)(1 + sqrt(1 - 4am(1 - a(N+1)))).  Valid on both sides of
    a = 1/(N+1) (the radicand is written 1 + 4am(a(N+1)-1) there, which is
    the same expression)."""
    rad = _snap(1.0 - 4.0 * a * m * (1.0 - a * (N + 1.0)))
    if rad < 0:
        raise ComplexRoot("formula-A radicand %g < 0" % rad)
    return (2.0 / a) * (1.0 + math.sqrt(rad))


def beta_formula_B(a, N, m):
    """Two-tier candidate: m-1 light points of mass 4 plus one heavy point.

    value = (2/a)(T + sqrt(T^2 + (4(m-1)m a/N)(1 - a(N+1)))) with
    T = 1 - 2(m-1)(1-a(N+1))/N.  Pure formula evaluation; the regime and
    multiplicity gating lives in m_ranges/enumerate_values.
    """
    if N <= 0:
        raise OutOfRegime("formula B requires N > 0")
    T = 1.0 - 2.0 * (m - 1.0) * (1.0 - a * (N + 1.0)) / N
    rad = _snap(T * T + (4.0 * (m - 1.0) * m * a / N)
                * (1.0 - a * (N + 1.0)))
    if rad < 0:
        raise ComplexRoot("formula-B radicand %g < 0" % rad)
    return (2.0 / a) * (T + math.sqrt(rad))


def beta_b_companion(a, N, m):
    """Mass of the distinguished heavy point in the formula-B mechanism:
    (2/a)(T0 + sqrt(T0^2 + (4(1-a)a(m-1)/N)(N+2-m))) with
    T0 = 1 - 2(m-1)(1-a)/N.  Satisfies formula_B = companion + 4(m-1)."""
    if N <= 0:
        raise OutOfRegime("formula-B companion requires N > 0")
    T0 = 1.0 - 2.0 * (m - 1.0) * (1.0 - a) / N
    rad = _snap(T0 * T0 + (4.0 * (1.0 - a) * a * (m - 1.0) / N)
                * (N + 2.0 - m))
    if rad < 0:
        raise ComplexRoot("formula-B companion radicand %g < 0" % rad)
    return (2.0 / a) * (T0 + math.sqrt(rad))


def beta_formula_C(a, N, m):
    """2(N+1 + sqrt((N+1)^2 - (4m/a^2)(a(N+1)-1))) for a beyond both 1 and
    2/(N+1).  The radicand is nonnegative exactly when m is within its
    budget ((N+1)a/2)^2/(a(N+1)-1)."""
    if not a > max(1.0, 2.0 / (N + 1.0)):
        raise OutOfRegime("formula C requires a > max{1, 2/(N+1)}")
    rad = _snap((N + 1.0) ** 2 - (4.0 * m / (a * a)) * (a * (N + 1.0) - 1.0))
    if rad < 0:
        raise ComplexRoot("formula-C radicand %g < 0 (m exceeds its budget)"
                          % rad)
    return 2.0 * (N + 1.0 + math.sqrt(rad))


def beta_equal_masses(a, N, m):
    """The equal-masses candidate: beta = 4Nm/((a(N+1)-1) + m(1-a)) with
    per-point mass beta/m.  Requires 1/(N+1) < a < 1 and integer m in
    2 <= m < N+1 - (N/(1-a)) max{0, 1-2a}."""
    if not (1.0 / (N + 1.0) < a < 1.0):
        raise OutOfRegime("equal masses require 1/(N+1) < a < 1")
    if m != int(m) or m < 2:
        raise OutOfRegime("equal masses require integer m >= 2")
    bound = N + 1.0 - (N / (1.0 - a)) * max(0.0, 1.0 - 2.0 * a)
    if not m < bound:
        raise OutOfRegime("m=%d outside [2, %g)" % (m, bound))
    beta = 4.0 * N * m / ((a * (N + 1.0) - 1.0) + m * (1.0 - a))
    return beta, beta / m


def sum_constraint_check(a, N, witness, case, tol=1e-9):
    """Check a decomposition against the sum-constraint mechanism.

    case "a_below_1" (1/(N+1) < a < 1): each beta_j in [4, 4/a], max >= 2/a,
    2 <= m <= N+1 - max{0, (1-2a)/(2a)}.
    case "a_above_1": each beta_j in [4/a, 4], max >= 2,
    2 <= m <= a(N+1) - max{0, (a-2)/2}.
    Both: sum beta_j^2 = beta(4N - (1-a)beta)/(a(N+1)-1).
    Returns (ok, residuals).
    """
    betas = list(witness.betas)
    m = len(betas)
    res = {}
    if case == "a_below_1":
        box_lo, box_hi = 4.0, 4.0 / a
        max_thresh = 2.0 / a
        m_hi = N + 1.0 - max(0.0, (1.0 - 2.0 * a) / (2.0 * a))
        regime_ok = 1.0 / (N + 1.0) < a < 1.0
    elif case == "a_above_1":
        box_lo, box_hi = 4.0 / a, 4.0
        max_thresh = 2.0
        m_hi = a * (N + 1.0) - max(0.0, (a - 2.0) / 2.0)
        regime_ok = a > 1.0
    else:
        raise ValueError("unknown case %r" % (case,))
    res["regime"] = regime_ok
    res["m_ok"] = (2 <= m <= m_hi)
    if m == 0:
        return False, res
    beta = sum(betas)
    res["box_violation"] = max(0.0, max(box_lo - min(betas),
                                        max(betas) - box_hi))
    res["max_margin"] = max(betas) - max_thresh
    budget = beta * (4.0 * N - (1.0 - a) * beta) / (a * (N + 1.0) - 1.0)
    ssq = sum(b * b for b in betas)
    res["sum_sq_residual"] = abs(ssq - budget) / max(1.0, abs(budget))
    ok = (regime_ok and res["m_ok"]
          and res["box_violation"] <= tol
          and res["max_margin"] >= -tol
          and res["sum_sq_residual"] <= tol)
    return ok, res


# -- appendix special functions ----------------------------------------

def f_appendix(a, N):
    """f(a) = (1/2a)(sqrt((1-a(N+1))^2 + Na/(1-a)) - (1-a(N+1))) on
    0 < a < min{1, 1/(N+1)}; controls the formula-B multiplicity range."""
    if not (0.0 < a < min(1.0, 1.0 / (N + 1.0))):
        raise OutOfDomain("f requires 0 < a < min{1, 1/(N+1)}")
    q = 1.0 - a * (N + 1.0)
    return (math.sqrt(q * q + N * a / (1.0 - a)) - q) / (2.0 * a)


def a_threshold(N):
    """The unique root of f(a)=1 for 1 < N < 4 (0 for N >= 4):
    a_N = (4-N)/(2(N+1+sqrt((N-1)^2+N^2)))."""
    if N < 1:
        raise OutOfDomain("a_threshold requires N >= 1")
    if N >= 4:
        return 0.0
    return (4.0 - N) / (2.0 * (N + 1.0
                               + math.sqrt((N - 1.0) ** 2 + N * N)))


def _check_phi_domain(a, N):
    if not (0.0 < a < 1.0 / (N + 1.0)):
        raise OutOfDomain("requires 0 < a < 1/(N+1)")


def phi(t, a, N):
    """phi(t) = 1-t + sqrt((1-t)^2 + 2a(N+1)t - (Na/(1-a)) t^2); at
    t = 2(m-1)(1-a)/N it equals (a/2) times the formula-B companion."""
    _check_phi_domain(a, N)
    rad = _snap((1.0 - t) ** 2 + 2.0 * a * (N + 1.0) * t
                - (N * a / (1.0 - a)) * t * t)
    if rad < 0:
        raise OutOfDomain("phi radicand %g < 0" % rad)
    return 1.0 - t + math.sqrt(rad)


def psi(s, a, N):
    """psi(s) = 1-s + sqrt((1-s)^2 + 2as + (Na/(1-a(N+1))) s^2); at
    s = 2(m-1)(1-a(N+1))/N it equals (a/2) times the formula-B value."""
    _check_phi_domain(a, N)
    rad = _snap((1.0 - s) ** 2 + 2.0 * a * s
                + (N * a / (1.0 - a * (N + 1.0))) * s * s)
    if rad < 0:
        raise OutOfDomain("psi radicand %g < 0" % rad)
    return 1.0 - s + math.sqrt(rad)


def t_a(a, N):
    """The point where phi crosses 1:
    t_a = ((1-a)/(aN))(sqrt((1-a(N+1))^2 + aN/(1-a)) - (1-a(N+1)))."""
    _check_phi_domain(a, N)
    if N <= 0:
        raise OutOfDomain("t_a requires N > 0")
    q = 1.0 - a * (N + 1.0)
    return ((1.0 - a) / (a * N)) * (math.sqrt(q * q + a * N / (1.0 - a)) - q)


def s_a(a, N):
    """The minimizer of psi on its relevant range:
    s_a = t_a (1-a(N+1))/(1-a)."""
    return t_a(a, N) * (1.0 - a * (N + 1.0)) / (1.0 - a)


# -- multiplicity ranges -----------------------------------------------

def m_ranges(a, N, mechanism):
    """The integer multiplicities admissible for a mechanism at (a, N).

    Endpoints follow the source statements: FormulaA includes m = N+1 only
    for integer N (and, below 1/(N+1), only when a >= 1/(2(N+1)));
    FormulaB needs 2 <= m <= 1 + f(a); FormulaC needs
    1 <= m <= ((N+1)a/2)^2/(a(N+1)-1); EqualMasses needs
    2 <= m < N+1 - (N/(1-a))max{0,1-2a}; SumConstraint needs
    2 <= m <= N+1 - max{0,(1-2a)/(2a)} (below 1) or
    2 <= m <= a(N+1) - max{0,(a-2)/2} (above 1); OriginSatellites needs
    1 <= m < (1-2a(N+1))^2/(4a(1-a(N+1))).
    """
    thr = 1.0 / (N + 1.0)
    if mechanism == "FormulaA":
        if not (0.0 < a < thr or thr < a < 0.5):
            raise OutOfRegime("formula A needs 0 < a < 1/(N+1) or "
                              "1/(N+1) < a < 1/2")
        if N < 1:
            return []
        ms = [m for m in range(2, int(math.ceil(N + 1.0)) + 1)
              if m < N + 1.0]
        n_is_int = abs(N - round(N)) < 1e-12
        if n_is_int:
            endpoint_ok = (a > thr) or (a >= 1.0 / (2.0 * (N + 1.0)))
            if endpoint_ok:
                ms.append(int(round(N)) + 1)
        return ms
    if mechanism == "FormulaB":
        if not 0.0 < a < thr:
            raise OutOfRegime("formula B needs 0 < a < 1/(N+1)")
        if N <= 1:
            return []
        top = 1.0 + f_appendix(a, N)
        return [m for m in range(2, int(math.floor(top + 1e-12)) + 1)]
    if mechanism == "FormulaC":
        if not a > max(1.0, 2.0 / (N + 1.0)):
            raise OutOfRegime("formula C needs a > max{1, 2/(N+1)}")
        budget = ((N + 1.0) * a / 2.0) ** 2 / (a * (N + 1.0) - 1.0)
        return [m for m in range(1, int(math.floor(budget + 1e-12)) + 1)]
    if mechanism == "EqualMasses":
        if not thr < a < 1.0:
            raise OutOfRegime("equal masses need 1/(N+1) < a < 1")
        bound = N + 1.0 - (N / (1.0 - a)) * max(0.0, 1.0 - 2.0 * a)
        return [m for m in range(2, int(math.ceil(bound)) + 1) if m < bound]
    if mechanism == "SumConstraint":
        if thr < a < 1.0:
            hi = N + 1.0 - max(0.0, (1.0 - 2.0 * a) / (2.0 * a))
        elif a > 1.0:
            if not a > 2.0 / (N + 1.0):
                raise OutOfRegime("sum constraint above 1 needs "
                                  "a > 2/(N+1)")
            hi = a * (N + 1.0) - max(0.0, (a - 2.0) / 2.0)
        else:
            raise OutOfRegime("sum constraint needs a > 1/(N+1)")
        return [m for m in range(2, int(math.floor(hi + 1e-12)) + 1)]
    if mechanism == ORIGIN_SATELLITES:
        if not 0.0 < a < 1.0 / (2.0 * (N + 1.0)):
            raise OutOfRegime("origin-plus-satellites needs "
                              "0 < a < 1/(2(N+1))")
        hi = (1.0 - 2.0 * a * (N + 1.0)) ** 2 \
            / (4.0 * a * (1.0 - a * (N + 1.0)))
        return [m for m in range(1, int(math.ceil(hi)) + 1) if m < hi]
    raise OutOfRegime("unknown mechanism %r" % (mechanism,))


# -- enumeration -------------------------------------------------------

def enumerate_values(p):
    """All admissible limiting-mass candidates for (a, N), per the
    blow-up/vanishing case analysis.  Conjectured-spurious entries (heavy
    multi-point variants of FormulaB/FormulaC, and the mirror FormulaA
    where an angle exceeds 2 pi) carry suspect=True rather than being
    filtered.  Entries are deduplicated on (mechanism, m, value) and
    sorted by value."""
    a, N = p.a, p.N
    if N <= 0:
        raise OutOfRegime("the catalog requires N > 0")
    if p.degenerate:
        raise DegenerateParameter("a = 1/(N+1): rigid case beta = 4(N+1)")
    if abs(a - 1.0) <= 1e-12:
        raise DegenerateParameter("a = 1 separates the case analysis")
    thr = 1.0 / (N + 1.0)
    lower = max(2.0 / a, 2.0 * (N + 1.0))
    out = {}

    def add(bv):
        if bv.value is not None and bv.value < lower - 1e-9:
            raise ValueError("catalog produced %g below the necessary "
                             "lower bound %g" % (bv.value, lower))
        key = (bv.mechanism, bv.m,
               None if bv.value is None else round(bv.value, 12),
               bv.interval)
        out.setdefault(key, bv)

    four_np1 = 4.0 * (N + 1.0)
    four_a = 4.0 / a
    if a < thr:
        # blow-up: mass escapes at the origin or the polygon
        if four_a - four_np1 > four_np1:
            add(BlowupValue("OriginMinusPolygon", value=four_a - four_np1,
                            constraints={"case": "blow-up",
                                         "a_below": "1/(2(N+1))"}))
        else:
            add(BlowupValue("PolygonOnly4N1", value=four_np1,
                            constraints={"case": "blow-up"}))
        # vanishing
        add(BlowupValue("FullMass4overA", value=four_a,
                        constraints={"case": "vanishing"}))
        if N >= 1:
            for m in m_ranges(a, N, "FormulaA"):
                add(BlowupValue("FormulaA", value=beta_formula_A(a, N, m),
                                m=m, constraints={"case": "vanishing"}))
            for m in m_ranges(a, N, "FormulaB"):
                add(BlowupValue(
                    "FormulaB", value=beta_formula_B(a, N, m), m=m,
                    constraints={"case": "vanishing",
                                 "companion": beta_b_companion(a, N, m)},
                    suspect=True))
    elif a < 1.0:
        # vanishing
        add(BlowupValue("PolygonOnly4N1", value=four_np1,
                        constraints={"case": "vanishing"}))
        # blow-up
        if N < 1:
            add(BlowupValue("FullMass4overA", value=four_a,
                            constraints={"case": "blow-up"}))
        else:
            if a <= 2.0 / (N + 1.0):
                add(BlowupValue("FullMass4overA", value=four_a,
                                constraints={"case": "blow-up"}))
            if a < 0.5:
                for m in m_ranges(a, N, "FormulaA"):
                    add(BlowupValue(
                        "FormulaA", value=beta_formula_A(a, N, m), m=m,
                        constraints={"case": "blow-up",
                                     "angle_note": "one cone angle exceeds "
                                     "2 pi; obstructions possible"},
                        suspect=True))
            ms = m_ranges(a, N, "SumConstraint")
            if ms:
                add(BlowupValue(
                    "SumConstraint", interval=(four_a, four_np1),
                    constraints={"case": "blow-up", "m_range": ms,
                                 "box": [4.0, four_a],
                                 "max_at_least": 2.0 / a},
                    suspect=True))
                for m in m_ranges(a, N, "EqualMasses"):
                    beta, each = beta_equal_masses(a, N, m)
                    add(BlowupValue("EqualMasses", value=beta, m=m,
                                    constraints={"case": "blow-up",
                                                 "beta_each": each}))
            if N > 1 and a > 2.0 / (N + 1.0):
                add(BlowupValue(
                    "Window06",
                    interval=(2.0 * (N + 1.0), four_np1 - four_a),
                    constraints={"case": "blow-up"}))
    else:
        # a > 1
        if N < 1 and a <= 2.0 / (N + 1.0):
            add(BlowupValue("FullMass4overA", value=four_a,
                            constraints={"case": "blow-up or vanishing"}))
            add(BlowupValue("PolygonOnly4N1", value=four_np1,
                            constraints={"case": "vanishing"}))
        if a > max(1.0, 2.0 / (N + 1.0)):
            add(BlowupValue("Window06",
                            interval=(2.0 * (N + 1.0), four_np1 - four_a),
                            constraints={"case": "blow-up or vanishing"}))
            add(BlowupValue("PolygonOnly4N1", value=four_np1,
                            constraints={"case": "vanishing"}))
            for m in m_ranges(a, N, "FormulaC"):
                add(BlowupValue(
                    "FormulaC", value=beta_formula_C(a, N, m), m=m,
                    constraints={"case": "vanishing",
                                 "refined_statement_needs": "a > 2"},
                    suspect=(m >= 2)))
            ms = m_ranges(a, N, "SumConstraint")
            if ms:
                add(BlowupValue(
                    "SumConstraint",
                    interval=(2.0 * (N + 1.0), four_np1),
                    constraints={"case": "vanishing", "m_range": ms,
                                 "box": [four_a, 4.0],
                                 "max_at_least": 2.0},
                    suspect=True))

    def sort_key(bv):
        v = bv.value if bv.value is not None else bv.interval[0]
        return (v, bv.mechanism, bv.m if bv.m is not None else -1)

    return sorted(out.values(), key=sort_key)
