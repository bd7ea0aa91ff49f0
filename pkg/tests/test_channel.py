import numpy as np
import pytest
from scipy import stats

from cogdiv import (
    ConfigError,
    FadingRealization,
    NetworkConfig,
    compute_sinr,
    draw_realization,
)

from conftest import heterogeneous_config


def test_draw_is_deterministic(hetero_cfg):
    a = draw_realization(hetero_cfg, 7)
    b = draw_realization(hetero_cfg, 7)
    assert a.g_sq.tobytes() == b.g_sq.tobytes()
    assert a.h_sq.tobytes() == b.h_sq.tobytes()


def test_distinct_trials_differ(hetero_cfg):
    a = draw_realization(hetero_cfg, 0)
    b = draw_realization(hetero_cfg, 1)
    assert not np.array_equal(a.g_sq, b.g_sq)


def test_unit_mean_exponential_gains():
    cfg = NetworkConfig.homogeneous(25_000, 4, 0, 10.0, seed=5)
    pooled = draw_realization(cfg, 0).g_sq.ravel()
    assert pooled.size == 100_000
    assert 0.98 <= pooled.mean() <= 1.02


def test_trials_uncorrelated():
    cfg = NetworkConfig.homogeneous(25_000, 4, 0, 10.0, seed=5)
    a = draw_realization(cfg, 0).g_sq.ravel()
    b = draw_realization(cfg, 1).g_sq.ravel()
    corr = np.corrcoef(a, b)[0, 1]
    assert abs(corr) < 0.02


def test_exp1_ks_distance():
    cfg = NetworkConfig.homogeneous(25_000, 4, 0, 10.0, seed=9)
    pooled = draw_realization(cfg, 0).g_sq.ravel()
    assert stats.kstest(pooled, "expon").statistic < 0.01


def test_sinr_interference_free():
    # K=0, eta=1, Ps=10, N0=1, g=1 -> SINR = 10
    cfg = NetworkConfig.homogeneous(1, 1, 0, 10.0)
    real = FadingRealization(g_sq=np.ones((1, 1)), h_sq=np.ones((1, 1, 0)))
    table = compute_sinr(cfg, real)
    assert table.sinr[0, 0] == pytest.approx(10.0, rel=1e-12)


def test_sinr_hand_value_with_interference():
    # Ps=10, N0=1, Pp=10, K=1, gamma=eta=1, g=h=1 -> 10/11
    cfg = NetworkConfig.homogeneous(1, 1, 1, 10.0, pp_over_ps=1.0)
    real = FadingRealization(g_sq=np.ones((1, 1)), h_sq=np.ones((1, 1, 1)))
    table = compute_sinr(cfg, real)
    assert table.sinr[0, 0] == pytest.approx(10.0 / 11.0, rel=1e-12)


def test_homogeneous_bounds_collapse(homog_cfg):
    table = compute_sinr(homog_cfg, draw_realization(homog_cfg, 3))
    assert np.allclose(table.s_lower, table.sinr, rtol=1e-12)
    assert np.allclose(table.s_upper, table.sinr, rtol=1e-12)


def test_sandwich_invariant(hetero_cfg):
    for t in range(200):
        table = compute_sinr(hetero_cfg, draw_realization(hetero_cfg, t))
        tol = 1e-9 * np.abs(table.sinr)
        assert np.all(table.s_lower <= table.sinr + tol)
        assert np.all(table.sinr <= table.s_upper + tol)


def test_order_statistic_interleaving(hetero_cfg):
    # Sorted rows of the bound tables bracket the sorted SINR row.
    for t in range(1000):
        table = compute_sinr(hetero_cfg, draw_realization(hetero_cfg, t))
        lo = -np.sort(-table.s_lower, axis=1)
        mid = -np.sort(-table.sinr, axis=1)
        hi = -np.sort(-table.s_upper, axis=1)
        tol = 1e-9 * np.abs(mid)
        assert np.all(lo <= mid + tol)
        assert np.all(mid <= hi + tol)


def test_dimension_mismatch_rejected(hetero_cfg):
    real = draw_realization(hetero_cfg, 0)
    small = heterogeneous_config(num_secondary=10)
    with pytest.raises(ConfigError):
        compute_sinr(small, real)
