"""Tests for blow-up point configuration algebra."""

import cmath
import math

import numpy as np
import pytest

from stringlab.errors import CoincidentPoints
from stringlab.polygon import (PointConfig, balance_residual,
                               find_balanced_configs, is_roots_of_unity,
                               regular_polygon, roots_of_unity_fit,
                               sum_identity_check)


def test_regular_polygon_balance_residual():
    rng = np.random.default_rng(3)
    for N in range(1, 6):
        scale = float(rng.uniform(0.2, 5.0))
        phase = float(rng.uniform(0.0, 2.0 * math.pi))
        pts = regular_polygon(N + 1, scale=scale, phase=phase)
        cfg = PointConfig(points=pts, beta0=0.0, N=float(N))
        res = balance_residual(cfg)
        assert float(np.max(np.abs(res))) < 1e-12
        assert sum_identity_check(cfg)


def test_perturbed_polygon_residual_nonzero():
    pts = list(regular_polygon(3, scale=1.0))
    pts[0] *= 1.05
    cfg = PointConfig(points=tuple(pts), beta0=0.0, N=2.0)
    assert float(np.max(np.abs(balance_residual(cfg)))) > 1e-3


def test_above_one_case():
    # beta0 = -(2/a)(n-1) balances the n-gon in the heavy-coefficient case
    a, n = 2.5, 3
    beta0 = -(2.0 / a) * (n - 1.0)
    pts = regular_polygon(n, scale=1.3, phase=0.4)
    cfg = PointConfig(points=pts, beta0=beta0, N=1.0, case="a_above_1",
                      a=a)
    assert float(np.max(np.abs(balance_residual(cfg)))) < 1e-12
    assert sum_identity_check(cfg)
    with pytest.raises(ValueError):
        PointConfig(points=pts, beta0=beta0, N=1.0, case="a_above_1")


def test_roots_of_unity_fit():
    pts = regular_polygon(4, scale=1.1, phase=0.2)
    xi0, dev = roots_of_unity_fit(pts)
    assert dev < 1e-12 * abs(xi0)
    assert abs(xi0) == pytest.approx(1.1 ** 4, rel=1e-12)
    assert is_roots_of_unity(pts)
    bad = tuple(z * (1.0 + 0.01 * k) for k, z in enumerate(pts))
    assert not is_roots_of_unity(bad)


def test_coincident_points_raise():
    with pytest.raises(CoincidentPoints):
        balance_residual(PointConfig(points=(1.0, 1.0 + 0j), beta0=0.0,
                                     N=1.0))
    with pytest.raises(CoincidentPoints):
        balance_residual(PointConfig(points=(0.0, 1.0 + 0j), beta0=0.0,
                                     N=1.0))


def test_multistart_finds_only_roots_of_unity():
    for N in (1.0, 2.0, 3.0):
        configs = find_balanced_configs(N, n_starts=16, seed=5)
        assert configs
        for cfg in configs:
            xi0, dev = roots_of_unity_fit(cfg.points)
            assert dev < 1e-8 * abs(xi0)
            assert float(np.max(np.abs(balance_residual(cfg)))) < 1e-9


def test_unknown_case_rejected():
    with pytest.raises(ValueError):
        PointConfig(points=(1.0 + 0j,), beta0=0.0, N=1.0, case="bogus")
