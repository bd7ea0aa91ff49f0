"""Static network parameters for the underlay spectrum-sharing scenario."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ConfigError(ValueError):
    """Inconsistent or out-of-range network parameters."""


def _frozen_array(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    if shape is not None:
        arr = arr.reshape(shape)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class NetworkConfig:
    """All static parameters of one network scenario.

    Powers are in linear watts.  ``eta[n]`` is the path-loss/shadowing
    factor of the n-th secondary link; ``gamma[n, j]`` the factor from
    the j-th primary transmitter to the n-th secondary receiver.  Fading
    itself is drawn per trial, not stored here.
    """

    num_secondary: int                 # N
    num_bands: int                     # M
    primary_count: tuple[int, ...]     # K_m per band
    power_secondary: float             # P_s
    power_primary: float               # P_p
    noise_power: float                 # N_0
    eta: np.ndarray                    # shape (N,)
    gamma: np.ndarray                  # shape (N, max K_m)
    seed: int = 0

    def __post_init__(self):
        n, m = self.num_secondary, self.num_bands
        if n < 1:
            raise ConfigError("num_secondary must be positive")
        if m < 1:
            raise ConfigError("num_bands must be positive")
        if m > n:
            raise ConfigError(f"num_bands ({m}) must not exceed num_secondary ({n})")
        counts = tuple(int(k) for k in np.atleast_1d(self.primary_count))
        if len(counts) != m:
            raise ConfigError(f"primary_count needs {m} entries, got {len(counts)}")
        if any(k < 0 for k in counts):
            raise ConfigError("primary_count entries must be non-negative")
        object.__setattr__(self, "primary_count", counts)
        for name in ("power_secondary", "power_primary", "noise_power"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be strictly positive")
        eta = _frozen_array(self.eta, (n,))
        if not np.all(eta > 0):
            raise ConfigError("eta entries must be strictly positive")
        k_max = max(counts) if counts else 0
        gamma = _frozen_array(self.gamma, (n, k_max))
        if k_max and not np.all(gamma > 0):
            raise ConfigError("gamma entries must be strictly positive")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "seed", int(self.seed))

    # -- derived quantities -------------------------------------------------

    def snr(self) -> float:
        """Transmit SNR rho = P_s / N_0."""
        return self.power_secondary / self.noise_power

    def pp_over_ps(self) -> float:
        return self.power_primary / self.power_secondary

    def k_max(self) -> int:
        return max(self.primary_count) if self.primary_count else 0

    def eta_min(self) -> float:
        return float(self.eta.min())

    def eta_max(self) -> float:
        return float(self.eta.max())

    def gamma_min(self) -> float:
        """Smallest gamma[n, j] / eta[n]; 0 when no primary users exist."""
        if self.k_max() == 0:
            return 0.0
        return float((self.gamma / self.eta[:, None]).min())

    def gamma_max(self) -> float:
        """Largest gamma[n, j] / eta[n]; 0 when no primary users exist."""
        if self.k_max() == 0:
            return 0.0
        return float((self.gamma / self.eta[:, None]).max())

    # -- construction helpers ----------------------------------------------

    @classmethod
    def homogeneous(cls, num_secondary, num_bands, primary_count, snr_db,
                    pp_over_ps=1.0, eta=1.0, gamma=1.0, seed=0) -> "NetworkConfig":
        """Build a config with identical path-loss factors for every link."""
        if np.ndim(primary_count) == 0:
            primary_count = (int(primary_count),) * num_bands
        k_max = max(primary_count) if len(primary_count) else 0
        p_s = 10.0 ** (snr_db / 10.0)
        return cls(
            num_secondary=num_secondary,
            num_bands=num_bands,
            primary_count=tuple(primary_count),
            power_secondary=p_s,
            power_primary=pp_over_ps * p_s,
            noise_power=1.0,
            eta=np.full(num_secondary, float(eta)),
            gamma=np.full((num_secondary, k_max), float(gamma)),
            seed=seed,
        )

    def with_population(self, num_secondary: int, seed=None) -> "NetworkConfig":
        """Same scenario with a different number of secondary pairs.

        Path-loss vectors are cycled to the new length, so a homogeneous
        template stays homogeneous at every population size.
        """
        return NetworkConfig(
            num_secondary=num_secondary,
            num_bands=self.num_bands,
            primary_count=self.primary_count,
            power_secondary=self.power_secondary,
            power_primary=self.power_primary,
            noise_power=self.noise_power,
            eta=np.resize(self.eta, num_secondary),
            gamma=np.resize(self.gamma, (num_secondary, self.k_max())),
            seed=self.seed if seed is None else seed,
        )

    def __eq__(self, other):
        if not isinstance(other, NetworkConfig):
            return NotImplemented
        return (
            self.num_secondary == other.num_secondary
            and self.num_bands == other.num_bands
            and self.primary_count == other.primary_count
            and self.power_secondary == other.power_secondary
            and self.power_primary == other.power_primary
            and self.noise_power == other.noise_power
            and np.array_equal(self.eta, other.eta)
            and np.array_equal(self.gamma, other.gamma)
            and self.seed == other.seed
        )
