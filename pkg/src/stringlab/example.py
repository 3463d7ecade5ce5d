"""Explicit non-radial blow-up family built from a two-exponential seed.

The construction: take the radial seed solution u0 of
-Delta U = e^{aU} + e^U with prescribed mass beta0, compose with the power
map and a Kelvin inversion,

  u(z) = u0(((m1+1)/conj(z))^(m1+1) - xi) - beta0 log|(conj(z)/(m1+1))^(m1+1)|,

and rescale by r_scale = (m1+1)|xi|^(-1/(m1+1)):

  v(z) = u(r_scale z) + (2/a) log(r_scale).

For beta0 = 2(m1+2)/((m1+1)a) the field u solves the weighted equation with
multiplicity N = (m1+2)(1-a)/a and total mass 2N/(1-a) = (m1+1) beta0; as
|xi| grows, v develops m1+1 peaks at the (m1+1)-th roots of a unimodular
number, each carrying concentration mass beta0.  This module builds the
family, samples it, checks the PDE residual on 2D patches, and measures the
per-peak concentration masses.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import (DisksOverlap, Inadmissible, OutOfDomain,
                     PatchTooCloseToOrigin)
from .radial import SolverConfig, solve_for_mass
from .regime import Params


def m_a(a):
    """Upper bound for the admissible power m1: 2a/(1-2a) on (1/4, 1/2),
    +inf at 1/2, 2(1-a)/(2a-1) on (1/2, 3/4).  Symmetric under a <-> 1-a."""
    if not (0.25 < a < 0.75):
        raise OutOfDomain("m_a requires 1/4 < a < 3/4")
    if a < 0.5:
        return 2.0 * a / (1.0 - 2.0 * a)
    if a == 0.5:
        return math.inf
    return 2.0 * (1.0 - a) / (2.0 * a - 1.0)


@dataclass(frozen=True)
class ExampleSpec:
    """Derived data of one family member.

    The power-map composition leaves a constant in front of the weighted
    term: the raw field solves -Delta u = e^{au} + raw_coeff |z|^{2N} e^u
    with raw_coeff = (m1+1)^{-2(m1+2)(1-a)/a} (absorbable by a dilation,
    tracked explicitly instead).  After the r_scale rescaling the
    coefficient becomes scale_factor = ((m1+1)|xi|)^{-2(1-a)/a}.
    """

    a: float
    m1: int
    xi: complex
    beta0: float
    N: float
    beta_total: float
    r_scale: float
    raw_coeff: float
    scale_factor: float

    @property
    def theta0(self):
        return cmath.phase(self.xi) % (2.0 * math.pi)

    def jsonable(self):
        return {"a": self.a, "m1": self.m1,
                "xi": [self.xi.real, self.xi.imag],
                "beta0": self.beta0, "N": self.N,
                "beta_total": self.beta_total, "r_scale": self.r_scale,
                "raw_coeff": self.raw_coeff,
                "scale_factor": self.scale_factor}


def make_spec(a, m1, xi):
    """Validate admissibility and compute all derived quantities."""
    if not (0.25 < a < 0.75):
        raise Inadmissible("need 1/4 < a < 3/4, got a=%g" % a)
    if m1 != int(m1) or m1 < 1:
        raise Inadmissible("need integer m1 >= 1, got %r" % (m1,))
    m1 = int(m1)
    bound = m_a(a)
    if not m1 < bound:
        raise Inadmissible("need m1 < m_a = %g, got m1=%d" % (bound, m1))
    xi = complex(xi)
    if xi == 0:
        raise Inadmissible("need xi != 0")
    beta0 = 2.0 * (m1 + 2.0) / ((m1 + 1.0) * a)
    # seed mass window, guaranteed by the admissibility bound
    lo = max(4.0, 4.0 * (1.0 - a) / a)
    assert lo < beta0 < 4.0 / a
    N = (m1 + 2.0) * (1.0 - a) / a
    r_scale = (m1 + 1.0) * abs(xi) ** (-1.0 / (m1 + 1.0))
    raw_coeff = (m1 + 1.0) ** (-2.0 * (m1 + 2.0) * (1.0 - a) / a)
    scale_factor = ((m1 + 1.0) * abs(xi)) ** (-2.0 * (1.0 - a) / a)
    return ExampleSpec(a=a, m1=m1, xi=xi, beta0=beta0, N=N,
                       beta_total=2.0 * N / (1.0 - a), r_scale=r_scale,
                       raw_coeff=raw_coeff, scale_factor=scale_factor)


def seed_profile(spec, cfg=None, tol_beta=1e-6):
    """The radial seed: solve the two-exponential problem (multiplicity 0)
    for mass beta0."""
    return solve_for_mass(Params(spec.a, 0.0), spec.beta0, cfg,
                          tol_beta=tol_beta)


# -- field evaluation --------------------------------------------------

def u_field(spec, seed, z):
    """The raw composed field u(z); z is a nonzero complex scalar/array."""
    z = np.asarray(z, dtype=complex)
    m1p = spec.m1 + 1.0
    eta = (m1p / np.conj(z)) ** (spec.m1 + 1) - spec.xi
    return (seed.u_at(np.abs(eta))
            + spec.beta0 * m1p * (math.log(m1p) - np.log(np.abs(z))))


def v_field(spec, seed, z):
    """The rescaled field v(z) = u(r_scale z) + (2/a) log r_scale,
    evaluated through the cancellation-free form
    v = u0(|xi| |conj(z)^-(m1+1) - xi/|xi||) - beta0 (m1+1) log|z|
        + (2/a) log(|xi|(m1+1))."""
    z = np.asarray(z, dtype=complex)
    m1p = spec.m1 + 1.0
    axi = abs(spec.xi)
    eta = axi * (np.conj(z) ** (-(spec.m1 + 1)) - spec.xi / axi)
    return (seed.u_at(np.abs(eta))
            - spec.beta0 * m1p * np.log(np.abs(z))
            + (2.0 / spec.a) * math.log(axi * m1p))


def peaks(spec):
    """The m1+1 rescaled peak locations e^{i(theta0 + 2 pi j)/(m1+1)}."""
    m1p = spec.m1 + 1
    return [cmath.exp(1j * (spec.theta0 + 2.0 * math.pi * j) / m1p)
            for j in range(m1p)]


# -- sampling and residuals --------------------------------------------

@dataclass(frozen=True)
class Patch:
    """A Cartesian sampling window [x0, x1] x [y0, y1] with nx x ny nodes."""

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int


@dataclass
class Field2D:
    """Sampled field values on a Patch.  kind selects which equation the
    residual check uses: "u" (raw field), "v" (rescaled field), "seed"
    (radial seed recentered at `center`)."""

    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    kind: str
    spec: ExampleSpec
    center: complex = 0.0


def build_field(spec, seed, patch, kind="v", center=0.0):
    """Sample the requested field on the patch.

    The raw composition is numerically delicate near the origin, so patches
    must stay outside an exclusion radius: 1e-6 * r_scale for the raw
    field, 1e-6 for the rescaled one.
    """
    x = np.linspace(patch.x0, patch.x1, patch.nx)
    y = np.linspace(patch.y0, patch.y1, patch.ny)
    X, Y = np.meshgrid(x, y, indexing="ij")
    Z = X + 1j * Y
    if kind in ("u", "v"):
        eps = 1e-6 * (spec.r_scale if kind == "u" else 1.0)
        if np.min(np.abs(Z)) < eps:
            raise PatchTooCloseToOrigin(
                "patch reaches |z| = %g < %g" % (np.min(np.abs(Z)), eps))
        vals = (u_field if kind == "u" else v_field)(spec, seed, Z)
    elif kind == "seed":
        vals = seed.u_at(np.abs(Z - center))
    else:
        raise ValueError("unknown field kind %r" % (kind,))
    return Field2D(x=x, y=y, values=vals, kind=kind, spec=spec,
                   center=center)


def _rhs(field2d, Z, V):
    spec = field2d.spec
    a = spec.a
    if field2d.kind == "u":
        return (np.exp(a * V) + spec.raw_coeff
                * np.abs(Z) ** (2.0 * spec.N) * np.exp(V))
    if field2d.kind == "v":
        return (np.exp(a * V) + spec.scale_factor
                * np.abs(Z) ** (2.0 * spec.N) * np.exp(V))
    return np.exp(a * V) + np.exp(V)


def residual_2d(field2d):
    """Five-point-Laplacian residual of the sampled field on interior
    nodes, normalized by max(1, |rhs|).  Requires equal, uniform grid
    spacing in both directions."""
    x, y, V = field2d.x, field2d.y, field2d.values
    hx = x[1] - x[0]
    hy = y[1] - y[0]
    if abs(hx - hy) > 1e-9 * max(hx, hy):
        raise ValueError("residual stencil needs square grid cells")
    lap = (V[2:, 1:-1] + V[:-2, 1:-1] + V[1:-1, 2:] + V[1:-1, :-2]
           - 4.0 * V[1:-1, 1:-1]) / (hx * hx)
    X, Y = np.meshgrid(x[1:-1], y[1:-1], indexing="ij")
    Z = X + 1j * Y
    rhs = _rhs(field2d, Z, V[1:-1, 1:-1])
    return (lap + rhs) / np.maximum(1.0, np.abs(rhs))


# -- peak detection and concentration masses ---------------------------

def find_peaks(spec, seed, n_angle=720, n_radius=41, refine=True):
    """Locate the peaks of the rescaled field by polar grid argmax near the
    unit circle plus local simplex refinement."""
    m1p = spec.m1 + 1
    rr = np.linspace(0.75, 1.25, n_radius)
    ph = np.linspace(0.0, 2.0 * math.pi, n_angle, endpoint=False)
    R, P = np.meshgrid(rr, ph, indexing="ij")
    Z = R * np.exp(1j * P)
    V = v_field(spec, seed, Z)
    # best grid node per angular sector around each expected peak count
    order = np.argsort(V.ravel())[::-1]
    cand = []
    for idx in order:
        z = Z.ravel()[idx]
        if all(abs(z - c) > 0.5 * 2.0 * math.pi / m1p for c in cand):
            cand.append(z)
        if len(cand) == m1p:
            break
    if not refine:
        return cand
    out = []
    for z0 in cand:
        res = minimize(lambda p: -float(v_field(spec, seed,
                                                complex(p[0], p[1]))),
                       [z0.real, z0.imag], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14,
                                "maxiter": 4000})
        out.append(complex(res.x[0], res.x[1]))
    return out


def seed_mass_within(seed, radius):
    """Reference value: (1/2 pi) integral of e^{a u0} + e^{u0} over the
    disk of the given radius, from the radial profile itself."""
    m1, m2 = seed.mass_within(radius)
    return m1 + m2


def concentration_masses(spec, seed, centers=None, delta=0.3,
                         n_radial=64, n_angle=64):
    """Measure (1/2 pi) int_{B_delta(z_j)} e^{av} + scale_factor |z|^{2N}
    e^{v} for each peak.

    The integrand is a spike of width ~1/((m1+1)|xi|) around each center,
    so the tensorized Gauss-Legendre rule is applied in the local blow-up
    coordinate eta = (m1+1)|xi| (z - center), where it is smooth: a linear
    radial panel covers the core and a log-radius panel covers the
    algebraic decay out to delta (m1+1)|xi|.  The actual 2D field is
    evaluated at the mapped points.
    """
    if centers is None:
        centers = peaks(spec)
    centers = [complex(c) for c in centers]
    for i, ci in enumerate(centers):
        if abs(ci) <= delta:
            raise DisksOverlap("disk %d reaches the origin" % i)
        for j in range(i + 1, len(centers)):
            if abs(ci - centers[j]) <= 2.0 * delta:
                raise DisksOverlap("disks %d and %d overlap" % (i, j))
    s = (spec.m1 + 1.0) * abs(spec.xi)
    R = delta * s
    xg, wg = np.polynomial.legendre.leggauss(n_radial)
    ag, awg = np.polynomial.legendre.leggauss(n_angle)
    phi = math.pi * (ag + 1.0)          # angles on (0, 2 pi)
    wphi = math.pi * awg
    rho_mid = min(16.0, R)
    # linear panel (0, rho_mid]
    rho1 = 0.5 * rho_mid * (xg + 1.0)
    w1 = 0.5 * rho_mid * wg
    panels = [(rho1, w1)]
    if R > rho_mid:
        # logarithmic panel [rho_mid, R]
        lo, hi = math.log(rho_mid), math.log(R)
        t = 0.5 * (hi - lo) * (xg + 1.0) + lo
        rho2 = np.exp(t)
        w2 = 0.5 * (hi - lo) * wg * rho2
        panels.append((rho2, w2))
    out = []
    for c in centers:
        total = 0.0
        for rho, wr in panels:
            RR, PP = np.meshgrid(rho, phi, indexing="ij")
            WW = np.outer(wr, wphi)
            Z = c + (RR / s) * np.exp(1j * PP)
            V = v_field(spec, seed, Z)
            F = (np.exp(spec.a * V) + spec.scale_factor
                 * np.abs(Z) ** (2.0 * spec.N) * np.exp(V))
            total += np.sum(WW * F * RR) / (s * s)
        out.append(total / (2.0 * math.pi))
    return out


# -- serialization -----------------------------------------------------

def field_to_csv(field2d, path):
    """Write the sampled field as CSV rows (x, y, value)."""
    import csv
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "value"])
        for i, xv in enumerate(field2d.x):
            for j, yv in enumerate(field2d.y):
                w.writerow(["%.17g" % xv, "%.17g" % yv,
                            "%.17g" % field2d.values[i, j]])
