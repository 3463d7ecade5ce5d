"""Algebraic conditions on blow-up point configurations.

A configuration of satellite blow-up points z_1..z_n (with an optional
origin mass beta0) must satisfy a balance system coupling each point to all
the others; summing the system gives a scalar count/mass identity, and the
zero sets of the balance system are exactly the rescaled roots-of-unity
polygons.  This module evaluates the residuals, the summed identity, the
roots-of-unity fit, and searches for balanced configurations numerically.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import CoincidentPoints

TAU_FIT = 1e-8


@dataclass(frozen=True)
class PointConfig:
    """Satellite points with the origin mass and regime case.

    case "a_below_1" uses the balance equation
      (2N - beta0)/z_i - 4 sum_{j != i} 1/(z_i - z_j) = 0;
    case "a_above_1" uses
      -beta0/z_i - (4/a) sum_{j != i} 1/(z_i - z_j) = 0
    and needs the coefficient a.
    """

    points: tuple
    beta0: float
    N: float
    case: str = "a_below_1"
    a: float = None

    def __post_init__(self):
        if self.case not in ("a_below_1", "a_above_1"):
            raise ValueError("unknown case %r" % (self.case,))
        if self.case == "a_above_1" and self.a is None:
            raise ValueError("case a_above_1 requires the coefficient a")


def _check_separated(points):
    pts = np.asarray(points, dtype=complex)
    scale = max(np.max(np.abs(pts)), 1e-300)
    if np.min(np.abs(pts)) < 1e-12 * scale:
        raise CoincidentPoints("a point sits at the origin")
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(pts[i] - pts[j]) < 1e-12 * scale:
                raise CoincidentPoints(
                    "points %d and %d coincide" % (i, j))
    return pts


def balance_residual(cfg):
    """Per-point residual of the applicable balance equation (complex
    vector; the zero vector characterizes admissible configurations)."""
    pts = _check_separated(cfg.points)
    n = len(pts)
    res = np.zeros(n, dtype=complex)
    for i in range(n):
        pair = sum(1.0 / (pts[i] - pts[j]) for j in range(n) if j != i)
        if cfg.case == "a_below_1":
            res[i] = (2.0 * cfg.N - cfg.beta0) / pts[i] - 4.0 * pair
        else:
            res[i] = cfg.beta0 / pts[i] + (4.0 / cfg.a) * pair
    return res


def sum_identity_check(cfg, tol=1e-9):
    """Scalar consequence of summing the balance system.

    case a_below_1: 4 n(n-1)/2 = (2N - beta0) n, equivalently
    beta0 = 2(N+1-n); case a_above_1: (2/a) n(n-1) = -beta0 n.
    """
    n = len(cfg.points)
    if cfg.case == "a_below_1":
        lhs = 4.0 * n * (n - 1) / 2.0
        rhs = (2.0 * cfg.N - cfg.beta0) * n
    else:
        lhs = (2.0 / cfg.a) * n * (n - 1)
        rhs = -cfg.beta0 * n
    return abs(lhs - rhs) <= tol * max(1.0, abs(lhs), abs(rhs))


def roots_of_unity_fit(points):
    """Fit a configuration to a common power: xi0 = (-1)^(n-1) prod(z_j)
    (the Vieta value when the z_j are the n-th roots of xi0); returns
    (xi0, max_j |z_j^n - xi0|).  A fit holds when the deviation is below
    TAU_FIT * |xi0|."""
    pts = _check_separated(points)
    n = len(pts)
    xi0 = (-1.0) ** (n - 1) * complex(np.prod(pts))
    max_dev = float(np.max(np.abs(pts ** n - xi0)))
    return xi0, max_dev


def is_roots_of_unity(points):
    xi0, dev = roots_of_unity_fit(points)
    return dev < TAU_FIT * abs(xi0)


def find_balanced_configs(N, n_points=None, beta0=0.0, n_starts=64, seed=0,
                          case="a_below_1", a=None):
    """Multistart least-squares search for zeros of the balance system.

    The system is homogeneous of degree -1 in all points simultaneously, so
    the objective normalizes the configuration to unit geometric-mean
    radius first (otherwise inflating the scale fakes a zero).  Returns the
    configurations (as PointConfig) whose normalized residual vanishes to
    solver accuracy; near-misses are dropped, not snapped.
    """
    if n_points is None:
        n_points = int(round(N)) + 1
    n = int(n_points)
    rng = np.random.default_rng(seed)
    found = []

    def normalize(pts):
        gm = np.exp(np.mean(np.log(np.abs(pts))))
        return pts / gm

    def objective(x):
        pts = x[:n] + 1j * x[n:]
        scale = np.max(np.abs(pts))
        if (np.min(np.abs(pts)) < 1e-9 * scale
                or min(abs(pts[i] - pts[j]) for i in range(n)
                       for j in range(i + 1, n)) < 1e-9 * scale):
            return np.full(2 * n, 1e6)
        pts = normalize(pts)
        cfg = PointConfig(points=tuple(pts), beta0=beta0, N=N,
                          case=case, a=a)
        r = balance_residual(cfg)
        return np.concatenate([r.real, r.imag])

    for _ in range(n_starts):
        z0 = rng.normal(size=n) + 1j * rng.normal(size=n)
        x0 = np.concatenate([z0.real, z0.imag])
        sol = least_squares(objective, x0, xtol=1e-15, ftol=1e-15,
                            gtol=1e-15, max_nfev=2000)
        if sol.cost < 1e-22:
            pts = normalize(sol.x[:n] + 1j * sol.x[n:])
            found.append(PointConfig(points=tuple(pts), beta0=beta0, N=N,
                                     case=case, a=a))
    return found


def regular_polygon(n, scale=1.0, phase=0.0):
    """The n-th roots of unity, scaled and rotated."""
    return tuple(scale * cmath.exp(1j * (phase + 2.0 * math.pi * k / n))
                 for k in range(n))
