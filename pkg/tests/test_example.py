"""Tests for the explicit non-radial blow-up family."""

import cmath
import math

import numpy as np
import pytest

from stringlab import example
from stringlab.errors import (DisksOverlap, Inadmissible, OutOfDomain,
                              PatchTooCloseToOrigin)
from stringlab.example import (Patch, build_field, concentration_masses,
                               field_to_csv, find_peaks, m_a, make_spec,
                               peaks, residual_2d, seed_mass_within,
                               seed_profile, u_field, v_field)
from stringlab.polygon import roots_of_unity_fit


@pytest.fixture(scope="module")
def family():
    spec = make_spec(1.0 / 3.0, 1, 1e6)
    seed = seed_profile(spec)
    return spec, seed


def test_m_a_cases():
    assert m_a(1.0 / 3.0) == pytest.approx(2.0)
    assert m_a(0.5) == math.inf
    assert m_a(0.7) == pytest.approx(2.0 * 0.3 / 0.4)
    with pytest.raises(OutOfDomain):
        m_a(0.2)


def test_make_spec_values(family):
    spec, _ = family
    assert spec.beta0 == pytest.approx(9.0, rel=1e-14)
    assert spec.N == pytest.approx(6.0, rel=1e-14)
    assert spec.beta_total == pytest.approx(18.0, rel=1e-12)
    assert spec.r_scale == pytest.approx(2.0e-3, rel=1e-12)


def test_make_spec_admissibility():
    with pytest.raises(Inadmissible):
        make_spec(1.0 / 3.0, 2, 1e6)   # m1 >= m_a
    with pytest.raises(Inadmissible):
        make_spec(0.2, 1, 1e6)         # a outside (1/4, 3/4)
    with pytest.raises(Inadmissible):
        make_spec(1.0 / 3.0, 1, 0.0)
    sp = make_spec(0.5, 3, 1e4)        # m_a infinite at a = 1/2
    assert sp.beta0 == pytest.approx(2.0 * 5.0 / (4.0 * 0.5))
    assert sp.N == pytest.approx(5.0)


def test_seed_profile(family):
    spec, seed = family
    assert seed.beta == pytest.approx(9.0, abs=1e-3)
    assert seed.slope_inf == pytest.approx(spec.beta0, abs=1e-3)
    # closed-form split at N=0: beta1 = a beta (beta-4)/(4(1-a))
    assert seed.masses.beta1 == pytest.approx(45.0 / 8.0, abs=1e-3)
    assert seed.masses.beta2 == pytest.approx(27.0 / 8.0, abs=1e-3)


def test_raw_and_rescaled_fields_consistent(family):
    spec, seed = family
    for z in (1.1 + 0.3j, 0.8 - 0.5j, -1.2 + 0.1j):
        v1 = float(v_field(spec, seed, z))
        v2 = float(u_field(spec, seed, spec.r_scale * z)
                   + (2.0 / spec.a) * math.log(spec.r_scale))
        assert v1 == pytest.approx(v2, abs=1e-10)


def test_peak_value_identity(family):
    spec, seed = family
    want = seed.u_at(0.0) + (2.0 / spec.a) * math.log(
        abs(spec.xi) * (spec.m1 + 1))
    for z in peaks(spec):
        assert float(v_field(spec, seed, z)) == pytest.approx(want,
                                                              abs=1e-10)


def test_kelvin_values_match_on_unit_circle(family):
    # on |z| = 1 the log term of the raw composition vanishes
    spec, seed = family
    z = cmath.exp(0.37j)
    m1p = spec.m1 + 1
    eta = ((m1p / z.conjugate()) ** m1p - spec.xi)
    direct = seed.u_at(abs(eta)) + spec.beta0 * m1p * math.log(m1p)
    assert float(u_field(spec, seed, z)) == pytest.approx(direct,
                                                          abs=1e-10)


def test_find_peaks_roots_of_unity(family):
    spec, seed = family
    pk = find_peaks(spec, seed)
    assert len(pk) == spec.m1 + 1
    xi0, dev = roots_of_unity_fit(pk)
    assert dev < 1e-6 * abs(xi0)
    analytic = peaks(spec)
    for z in pk:
        assert min(abs(z - w) for w in analytic) < 1e-6


def test_equivariance():
    spec = make_spec(1.0 / 3.0, 1, 1e6)
    seed = seed_profile(spec)
    phase = 0.7
    rotated = make_spec(1.0 / 3.0, 1,
                        1e6 * cmath.exp(1j * (spec.m1 + 1) * phase))
    for z in (1.1 + 0.3j, -0.4 + 0.9j, 0.8 - 0.8j):
        v1 = float(v_field(rotated, seed, z))
        v2 = float(v_field(spec, seed, z * cmath.exp(-1j * phase)))
        assert v1 == pytest.approx(v2, abs=1e-12)


def test_residual_seed_patch(family):
    spec, seed = family
    patch = Patch(1.0, 1.1, 1.0, 1.1, 101, 101)  # h = 1e-3
    f = build_field(spec, seed, patch, kind="seed")
    res = residual_2d(f)
    assert float(np.max(np.abs(res))) < 1e-6


def test_residual_rescaled_field_second_order():
    spec = make_spec(1.0 / 3.0, 1, 1e3)
    seed = seed_profile(spec)
    maxima = []
    for h, n in ((2e-3, 51), (1e-3, 101)):
        span = h * (n - 1)
        patch = Patch(0.5, 0.5 + span, 0.3, 0.3 + span, n, n)
        f = build_field(spec, seed, patch, kind="v")
        maxima.append(float(np.max(np.abs(residual_2d(f)))))
    assert maxima[1] < 1e-3
    assert maxima[1] < 0.4 * maxima[0]   # roughly second order


def test_residual_raw_field():
    # moderate family parameter: the raw composition is stiff for stencil
    # checks at large |xi| (that is what the rescaled form is for)
    spec = make_spec(1.0 / 3.0, 1, 1e3)
    seed = seed_profile(spec)
    r = spec.r_scale
    patch = Patch(0.5 * r, 0.6 * r, 0.3 * r, 0.4 * r, 101, 101)
    f = build_field(spec, seed, patch, kind="u")
    assert float(np.max(np.abs(residual_2d(f)))) < 1e-3


def test_patch_origin_exclusion(family):
    spec, seed = family
    with pytest.raises(PatchTooCloseToOrigin):
        build_field(spec, seed, Patch(-0.1, 0.1, -0.1, 0.1, 11, 11),
                    kind="v")


def test_concentration_masses(family):
    spec, seed = family
    masses = concentration_masses(spec, seed, delta=0.3)
    assert len(masses) == 2
    for mj in masses:
        assert mj == pytest.approx(spec.beta0, rel=0.05)
    assert sum(masses) == pytest.approx(spec.beta_total, rel=0.02)
    # reference: direct radial quadrature of the seed over the same disk
    ref = seed_mass_within(seed, 0.3 * (spec.m1 + 1) * abs(spec.xi))
    assert masses[0] == pytest.approx(ref, rel=1e-3)


def test_concentration_error_shrinks(family):
    spec_small = make_spec(1.0 / 3.0, 1, 1e4)
    seed = seed_profile(spec_small)
    errs = []
    for delta, xi in ((0.4, 1e4), (0.2, 1e6), (0.1, 1e8)):
        sp = make_spec(1.0 / 3.0, 1, xi)
        m = concentration_masses(sp, seed, delta=delta)
        errs.append(abs(m[0] - sp.beta0))
    assert errs[0] > errs[1] > errs[2]


def test_disks_overlap(family):
    spec, seed = family
    with pytest.raises(DisksOverlap):
        concentration_masses(spec, seed, delta=1.2)
    with pytest.raises(DisksOverlap):
        concentration_masses(spec, seed, centers=[0.5 + 0j, -1.0 + 0j],
                             delta=0.6)


def test_field_csv_export(tmp_path, family):
    spec, seed = family
    patch = Patch(0.5, 0.6, 0.5, 0.6, 5, 5)
    f = build_field(spec, seed, patch, kind="v")
    path = tmp_path / "field.csv"
    field_to_csv(f, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == 1 + 25
