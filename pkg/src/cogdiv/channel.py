"""Random network realizations and per-realization SINR tables.

Squared channel magnitudes |g|^2 and |h|^2 are drawn directly as
unit-mean exponentials (|CN(0,1)|^2), which is distributionally
identical to drawing complex Gaussians and cheaper.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ConfigError, NetworkConfig


@dataclass(frozen=True)
class FadingRealization:
    """One draw of all squared channel gains."""

    g_sq: np.ndarray   # (M, N) secondary-link gains
    h_sq: np.ndarray   # (M, N, max K_m) primary-interference gains


@dataclass(frozen=True)
class SinrTable:
    """SINR of every (band, user) pair plus its analytic bound variables."""

    sinr: np.ndarray      # (M, N)
    s_lower: np.ndarray   # (M, N), S_l <= SINR
    s_upper: np.ndarray   # (M, N), SINR <= S_u


def draw_realization(cfg: NetworkConfig, trial_index: int) -> FadingRealization:
    """Draw one fading realization.

    Deterministic for fixed (cfg.seed, trial_index); distinct trial
    indices use independent counter-derived substreams.
    """
    if trial_index < 0:
        raise ConfigError("trial_index must be non-negative")
    rng = np.random.default_rng((cfg.seed, trial_index))
    m, n, k = cfg.num_bands, cfg.num_secondary, cfg.k_max()
    g_sq = rng.exponential(size=(m, n))
    h_sq = rng.exponential(size=(m, n, k)) if k else np.zeros((m, n, 0))
    g_sq.setflags(write=False)
    h_sq.setflags(write=False)
    return FadingRealization(g_sq=g_sq, h_sq=h_sq)


def compute_sinr(cfg: NetworkConfig, real: FadingRealization) -> SinrTable:
    """SINR and bound tables for one realization.

    Bands with fewer primary users than max K_m only see their first
    K_m interference terms.
    """
    m, n, k = cfg.num_bands, cfg.num_secondary, cfg.k_max()
    if real.g_sq.shape != (m, n) or real.h_sq.shape != (m, n, k):
        raise ConfigError(
            f"realization shape {real.g_sq.shape}/{real.h_sq.shape} does not "
            f"match config ({m}, {n}, {k})"
        )
    rho = cfg.snr()
    ratio = cfg.pp_over_ps()

    # Per-band interference sums, weighted (for SINR) and raw (for bounds).
    weighted = np.zeros((m, n))
    raw = np.zeros((m, n))
    for band, k_m in enumerate(cfg.primary_count):
        if k_m:
            h = real.h_sq[band, :, :k_m]
            weighted[band] = np.sum(h * cfg.gamma[:, :k_m], axis=1)
            raw[band] = np.sum(h, axis=1)

    sinr = (cfg.power_secondary * cfg.eta[None, :] * real.g_sq) / (
        cfg.noise_power + cfg.power_primary * weighted
    )
    s_lower = real.g_sq / (1.0 / (rho * cfg.eta_min()) + ratio * cfg.gamma_max() * raw)
    s_upper = real.g_sq / (1.0 / (rho * cfg.eta_max()) + ratio * cfg.gamma_min() * raw)
    for arr in (sinr, s_lower, s_upper):
        arr.setflags(write=False)
    return SinrTable(sinr=sinr, s_lower=s_lower, s_upper=s_upper)
