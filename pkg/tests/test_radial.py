"""Tests for the radial solver: oracles, masses, identities, sweeps."""

import json
import math

import numpy as np
import pytest

from stringlab import radial
from stringlab.errors import (NonBracketed, Overflow, StepTooLarge,
                              TargetOutsideInterval)
from stringlab.radial import (LiouvilleParams, SolverConfig, integrate,
                              liouville_closed_form, pohozaev_local_residual,
                              series_start, solve_for_mass, sweep_endpoints)
from stringlab.regime import Params, mass_split, pohozaev_global_residual


def rk4_reference(s, p, r_end, n_steps=40000, weights=(1.0, 1.0)):
    """Independent oracle: classic fixed-step RK4 in t = log r starting
    from the series head at r = 1e-6."""
    w1, w2 = weights
    a, N = p.a, p.N

    def f(t, y):
        u, v = y
        return np.array([v, -(w1 * math.exp(a * u + 2.0 * t)
                              + w2 * math.exp(u + (2.0 * N + 2.0) * t))])

    r0 = 1e-6
    u0, v0 = series_start(s, p, r0, weights)
    t = math.log(r0)
    h = (math.log(r_end) - t) / n_steps
    y = np.array([u0, v0])
    for _ in range(n_steps):
        k1 = f(t, y)
        k2 = f(t + h / 2.0, y + h / 2.0 * k1)
        k3 = f(t + h / 2.0, y + h / 2.0 * k2)
        k4 = f(t + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return y


def test_against_fixed_step_rk4():
    p = Params(1.0 / 3.0, 1.0)
    prof = integrate(0.0, p)
    for r_end in (1.0, 100.0):
        u_ref, v_ref = rk4_reference(0.0, p, r_end)
        assert prof.u_at(r_end) == pytest.approx(u_ref, abs=1e-7)
        assert prof.v_at(r_end) == pytest.approx(v_ref, abs=1e-7)


def test_liouville_closed_form_oracle():
    # disabling the e^{au} term reduces to the one-term problem with b=1
    for N in (0.0, 1.0, 2.0):
        lp = LiouvilleParams(b=1.0, N=N, mu=1.0)
        s = liouville_closed_form(lp, 0.0)
        prof = integrate(s, Params(0.5, N), weights=(0.0, 1.0))
        assert prof.masses.beta2 == pytest.approx(4.0 * (N + 1.0),
                                                  abs=1e-6)
        assert prof.masses.beta1 == 0.0
        for r in (0.01, 1.0, 3.7, 50.0, 1e4):
            assert prof.u_at(r) == pytest.approx(
                liouville_closed_form(lp, r), abs=1e-7)


def test_liouville_params_validation():
    with pytest.raises(ValueError):
        LiouvilleParams(b=-1.0, N=1.0, mu=1.0)
    with pytest.raises(ValueError):
        LiouvilleParams(b=1.0, N=1.5, mu=1.0, c=1.0)
    LiouvilleParams(b=1.0, N=2.0, mu=1.0, c=1.0 + 1.0j)


def test_series_start_step_too_large():
    p = Params(0.5, 1.0)
    with pytest.raises(StepTooLarge):
        series_start(10.0, p, 0.5, tol=1e-9)


def test_rigid_case_mass():
    p = Params(0.5, 1.0)
    for s in (-5.0, 0.0, 5.0):
        prof = integrate(s, p)
        assert prof.beta == pytest.approx(8.0, abs=1e-3)


def test_masses_match_closed_form_split():
    p = Params(1.0 / 3.0, 1.0)
    prof = integrate(0.0, p)
    sp = mass_split(p, prof.beta)
    assert prof.masses.beta1 == pytest.approx(sp.beta1, abs=1e-3)
    assert prof.masses.beta2 == pytest.approx(sp.beta2, abs=1e-3)
    assert pohozaev_global_residual(p, prof.masses) < 1e-6


def test_pohozaev_local():
    p = Params(0.2, 2.0)
    prof = integrate(-3.0, p)
    for r in (0.1, 1.0, 10.0, 100.0, 1000.0):
        assert pohozaev_local_residual(prof, r) < 1e-6


def test_mass_within_consistency():
    p = Params(1.0 / 3.0, 1.0)
    prof = integrate(0.0, p)
    m1, m2 = prof.mass_within(1e9)  # beyond r_max: analytic continuation
    assert m1 + m2 == pytest.approx(prof.beta, abs=1e-4)
    m1a, m2a = prof.mass_within(1.0)
    m1b, m2b = prof.mass_within(10.0)
    assert m1b > m1a and m2b > m2a


def test_interp_continuity_across_segments():
    # centered second difference stays tiny across each branch switch
    p = Params(1.0 / 3.0, 1.0)
    prof = integrate(0.0, p)
    for r in (prof.grid[0], prof.grid[-1]):
        jump = (prof.u_at(r * 1.000001) + prof.u_at(r * 0.999999)
                - 2.0 * prof.u_at(r))
        assert abs(jump) < 1e-8
        vjump = prof.v_at(r * 1.000001) - prof.v_at(r * 0.999999)
        assert abs(vjump) < 1e-6


def test_no_decay_when_far_field_unreached():
    # cutting the domain short leaves the tail mass non-negligible
    p = Params(1.0 / 3.0, 1.0)
    from stringlab.errors import NoDecay
    with pytest.raises(NoDecay):
        integrate(0.0, p, SolverConfig(r_max=5.0))


def test_solve_for_mass():
    p = Params(1.0 / 3.0, 1.0)
    prof = solve_for_mass(p, 10.0)
    assert prof.beta == pytest.approx(10.0, abs=1e-6)
    with pytest.raises(TargetOutsideInterval):
        solve_for_mass(p, 13.0)
    with pytest.raises(TargetOutsideInterval):
        solve_for_mass(Params(0.5, 1.0), 8.0)  # degenerate point


def test_sweep_endpoints_basic():
    p = Params(1.0 / 3.0, 1.0)
    res = sweep_endpoints(p, -20.0, 20.0, 21)
    assert res.monotone_decreasing
    assert res.endpoint_high == pytest.approx(12.0, abs=0.1)
    assert res.endpoint_low == pytest.approx(8.0, abs=0.1)
    assert res.matches_interval
    with pytest.raises(ValueError):
        sweep_endpoints(p, 2.0, -2.0, 21)


def test_serialization(tmp_path):
    p = Params(1.0 / 3.0, 1.0)
    prof = integrate(0.0, p)
    csv_path = tmp_path / "prof.csv"
    json_path = tmp_path / "prof.json"
    radial.profile_to_csv(prof, csv_path)
    radial.profile_to_json(prof, json_path,
                           residuals={"pohozaev_global": 0.0})
    header = csv_path.read_text().splitlines()[0]
    assert header == "r,u,ru_prime"
    doc = json.loads(json_path.read_text())
    assert doc["params"] == {"a": p.a, "N": p.N}
    assert doc["masses"]["beta"] == pytest.approx(prof.beta)
    # byte-identical on re-write
    first = json_path.read_bytes()
    radial.profile_to_json(prof, json_path,
                           residuals={"pohozaev_global": 0.0})
    assert json_path.read_bytes() == first
