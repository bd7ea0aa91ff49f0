import math

import numpy as np
import pytest

from cogdiv import (
    NetworkConfig,
    SinrTable,
    ThresholdTable,
    allocate_distributed,
    build_candidate_sets,
    build_threshold_table,
    candidacy_probability,
    claim_channel,
    compute_sinr,
    draw_realization,
    optimal_assignment_matching,
    resolve_contention,
)

from conftest import heterogeneous_config


def table_from(sinr):
    sinr = np.asarray(sinr, dtype=float)
    return SinrTable(sinr=sinr, s_lower=sinr, s_upper=sinr)


def thresholds(lam, big_n=10):
    return ThresholdTable(lam=np.asarray(lam, dtype=float), population_size=big_n)


def test_claim_picks_largest_normalized():
    # ratios [0.5, 1.3] -> claims band 1
    t = table_from([[1.0], [1.3]])
    th = thresholds([[2.0], [1.0]])
    assert claim_channel(0, t, th) == 1


def test_no_claim_when_all_below_threshold():
    t = table_from([[0.5], [0.9]])
    th = thresholds([[1.0], [1.0]])
    assert claim_channel(0, t, th) is None


def test_single_band_claim_probability():
    cfg = NetworkConfig.homogeneous(50, 1, 4, 10.0, seed=21)
    th = build_threshold_table(cfg)
    trials = 2000
    claims = 0
    for t_idx in range(trials):
        table = compute_sinr(cfg, draw_realization(cfg, t_idx))
        claims += int(np.count_nonzero(build_candidate_sets(table, th).claims >= 0))
    total = trials * cfg.num_secondary
    p_hat = claims / total
    sigma = math.sqrt(0.02 * 0.98 / total)
    assert abs(p_hat - 1.0 / 50.0) <= 3 * sigma


def test_candidate_sets_hand_case():
    # 3 users, 2 bands; ratios: u0 -> band0 (1.5), u1 -> none, u2 -> band1 (2.0)
    t = table_from([[1.5, 0.4, 0.3], [1.0, 0.8, 2.0]])
    th = thresholds(np.ones((2, 3)))
    cs = build_candidate_sets(t, th)
    assert cs.sets == ((0,), (2,))
    assert list(cs.claims) == [0, -1, 1]


def test_candidate_sets_disjoint_and_consistent(hetero_cfg):
    th = build_threshold_table(hetero_cfg)
    for t_idx in range(100):
        table = compute_sinr(hetero_cfg, draw_realization(hetero_cfg, t_idx))
        cs = build_candidate_sets(table, th)
        seen = set()
        for m, members in enumerate(cs.sets):
            for n in members:
                assert n not in seen
                seen.add(n)
                ratio = table.sinr[:, n] / th.lam[:, n]
                assert table.sinr[m, n] >= th.lam[m, n]
                assert m == int(np.argmax(ratio))
                assert claim_channel(n, table, th) == m


def test_resolve_contention_singleton():
    rng = np.random.default_rng(0)
    assert resolve_contention({7}, rng) == 7


def test_resolve_contention_uniform():
    rng = np.random.default_rng(5)
    wins = {1: 0, 2: 0, 3: 0}
    for _ in range(30_000):
        wins[resolve_contention((1, 2, 3), rng)] += 1
    sigma = math.sqrt(30_000 * (1 / 3) * (2 / 3))
    for count in wins.values():
        assert abs(count - 10_000) <= 3 * sigma


def test_resolve_contention_deterministic():
    a = resolve_contention((4, 9, 2), np.random.default_rng(99))
    b = resolve_contention((4, 9, 2), np.random.default_rng(99))
    assert a == b


def test_resolve_contention_empty_rejected():
    with pytest.raises(ValueError):
        resolve_contention((), np.random.default_rng(0))


def test_allocate_with_no_claims():
    t = table_from(np.full((3, 5), 0.1))
    th = thresholds(np.ones((3, 5)), big_n=5)
    out = allocate_distributed(t, th, np.random.default_rng(0))
    assert out.assignment.sum_rate == 0.0
    assert out.assignment.pairs == ()
    assert out.info_bits == 0.0
    assert out.idle_bands == (0, 1, 2)


def test_allocation_feasible_and_dominated(hetero_cfg):
    th = build_threshold_table(hetero_cfg)
    rng = np.random.default_rng(123)
    for t_idx in range(100):
        table = compute_sinr(hetero_cfg, draw_realization(hetero_cfg, t_idx))
        out = allocate_distributed(table, th, rng)
        bands = [m for m, _ in out.assignment.pairs]
        users = [u for _, u in out.assignment.pairs]
        assert len(set(bands)) == len(bands)
        assert len(set(users)) == len(users)
        for m, u in out.assignment.pairs:
            assert u in out.candidate_sets.sets[m]
        assert out.assignment.sum_rate <= optimal_assignment_matching(table).sum_rate + 1e-12
        claimants = int(np.count_nonzero(out.candidate_sets.claims >= 0))
        assert out.info_bits == claimants * math.log2(hetero_cfg.num_bands)


def test_info_bits_zero_for_single_band():
    cfg = NetworkConfig.homogeneous(20, 1, 2, 10.0, seed=4)
    th = build_threshold_table(cfg)
    table = compute_sinr(cfg, draw_realization(cfg, 0))
    out = allocate_distributed(table, th, np.random.default_rng(0))
    assert out.info_bits == 0.0


def test_mean_candidate_union_size():
    cfg = NetworkConfig.homogeneous(200, 4, 4, 10.0, seed=31)
    th = build_threshold_table(cfg)
    trials = 3000
    total = 0
    for t_idx in range(trials):
        table = compute_sinr(cfg, draw_realization(cfg, t_idx))
        total += int(np.count_nonzero(build_candidate_sets(table, th).claims >= 0))
    omega = candidacy_probability(200, 4)
    expected = 200 * omega
    stderr = math.sqrt(200 * omega * (1 - omega) / trials)
    assert abs(total / trials - expected) <= 4 * stderr


def test_candidacy_probability_values():
    assert candidacy_probability(1, 1) == 1.0
    assert candidacy_probability(50, 4) == pytest.approx(1.0 - 0.98**4, rel=1e-12)
    assert candidacy_probability(50, 4) == pytest.approx(0.077632, abs=1e-6)


def test_candidacy_probability_limit():
    n = 10_000
    assert abs(n * candidacy_probability(n, 4) - 4.0) < 0.001
