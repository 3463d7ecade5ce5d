"""Tests for the conical-singularity solvability reduction."""

import math

import pytest

from stringlab.errors import AngleNonPositive
from stringlab.geometry import (angles_from_case, claim_never_scan,
                                equivalence_scan, gauss_bonnet_mass,
                                troyanov_check)


def test_angles_values():
    cd = angles_from_case(0.125, 3.0, 2)
    assert cd.thetas == (-0.25, -0.25)
    assert cd.theta0 is None
    # theta_inf = -4am(1-a(N+1))/(1+sqrt(1-4am(1-a(N+1))))
    rad = 1.0 - 4.0 * 0.125 * 2.0 * 0.5
    want = -4.0 * 0.125 * 2.0 * 0.5 / (1.0 + math.sqrt(rad))
    assert cd.theta_inf == pytest.approx(want, rel=1e-14)
    assert cd.theta_inf == pytest.approx(-0.2928932, abs=1e-7)
    assert not cd.sufficient_only


def test_angles_with_origin():
    cd = angles_from_case(0.05, 1.0, 1, include_origin=True)
    assert cd.theta0 == pytest.approx(-0.2)
    assert len(cd.thetas) == 1
    with pytest.raises(AngleNonPositive):
        angles_from_case(0.3, 1.0, 1, include_origin=True)


def test_angle_failures():
    with pytest.raises(AngleNonPositive):
        angles_from_case(0.6, 3.0, 1)      # satellite angle needs a < 1/2
    # radicand exactly zero drives theta_inf to -1 (degenerate sphere end)
    with pytest.raises(AngleNonPositive):
        angles_from_case(0.125, 3.0, 4)


def test_gauss_bonnet_mass():
    cd = angles_from_case(0.125, 3.0, 2)
    want = 2.0 - 0.5 + cd.theta_inf
    assert gauss_bonnet_mass(cd) == pytest.approx(want, rel=1e-14)
    assert gauss_bonnet_mass(cd) > 0


def test_troyanov_known_cases():
    # inside the admissible multiplicity band
    res = troyanov_check(angles_from_case(0.1, 3.0, 2))
    assert res.ok and res.min_margin > 0
    # m = 1 fails the pairwise inequality
    res1 = troyanov_check(angles_from_case(0.1, 3.0, 1))
    assert not res1.ok
    # m just above the band fails (via the mass positivity condition)
    res5 = troyanov_check(angles_from_case(0.02, 3.0, 5))
    assert not res5.ok


def test_equivalence_scan_clean():
    report = equivalence_scan()
    assert report.checked > 100
    assert report.violations == []


def test_claim_never_scan_clean():
    report = claim_never_scan()
    assert report.checked > 100
    assert report.violations == []
    assert report.empty_points == []


def test_scan_report_jsonable():
    report = claim_never_scan(grid_a=[0.01], grid_N=[1.0])
    doc = report.jsonable()
    assert set(doc) == {"grid", "checked", "violations",
                        "near_boundary_excluded", "empty_points"}
