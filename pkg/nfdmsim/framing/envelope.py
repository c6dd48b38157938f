from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from nfdmsim.errors import InvalidInputError, UsageError

Units = Literal["physical", "normalized"]

# share of the grid, at each end, inspected for wrapped energy
EDGE_FRACTION = 0.025
EDGE_LIMIT = 1e-4


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid t0 + n*dt, n = 0..n-1."""

    t0: float
    dt: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidInputError(f"time grid needs at least 2 samples, got {self.n}")
        if not self.dt > 0:
            raise InvalidInputError(f"time step must be positive, got {self.dt}")

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.n - 1)

    def mirrored(self) -> TimeGrid:
        # t -> -t, the optical frame lives on the mirror of the QAM grid
        return TimeGrid(t0=-self.t_end, dt=self.dt, n=self.n)

    def index_of(self, t: float) -> int:
        return int(np.rint((t - self.t0) / self.dt))

    def scaled(self, factor: float) -> TimeGrid:
        return TimeGrid(t0=self.t0 * factor, dt=self.dt * factor, n=self.n)


@dataclass(frozen=True)
class ComplexEnvelope:
    samples: np.ndarray
    grid: TimeGrid
    units: Units = "normalized"

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.shape[0] != self.grid.n:
            raise InvalidInputError(f"expected {self.grid.n} samples, got shape {samples.shape}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def t0(self) -> float:
        return self.grid.t0

    @property
    def dt(self) -> float:
        return self.grid.dt

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.dt)

    def with_samples(self, samples: np.ndarray) -> ComplexEnvelope:
        return ComplexEnvelope(samples=samples, grid=self.grid, units=self.units)

    def require(self, units: Units) -> None:
        if self.units != units:
            raise UsageError(f"expected a {units} envelope, got a {self.units} one")


@dataclass(frozen=True)
class NormalizationScales:
    """
    Scales mapping j*A_z = (beta2/2)*A_tt - gamma*|A|^2*A onto the normalized
    focusing equation j*q_z + q_tt + 2|q|^2*q = 0 (anomalous dispersion).
    """

    T0: float
    Z0: float
    P0: float
    beta2: float = field(default=0.0, compare=False)
    gamma: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        if not (self.T0 > 0 and self.Z0 > 0 and self.P0 > 0):
            raise InvalidInputError(f"scales must be positive: T0={self.T0}, Z0={self.Z0}, P0={self.P0}")

    @classmethod
    def from_fiber(cls, T0: float, beta2: float, gamma: float) -> NormalizationScales:
        if beta2 == 0 or gamma <= 0:
            raise InvalidInputError("normalization needs beta2 != 0 and gamma > 0")
        Z0 = 2.0 * T0**2 / abs(beta2)
        P0 = 2.0 / (gamma * Z0)
        return cls(T0=T0, Z0=Z0, P0=P0, beta2=beta2, gamma=gamma)

    def is_consistent(self, rtol: float = 1e-12) -> bool:
        Z0 = 2.0 * self.T0**2 / abs(self.beta2)
        P0 = 2.0 / (self.gamma * Z0)
        return bool(np.isclose(Z0, self.Z0, rtol=rtol, atol=0) and np.isclose(P0, self.P0, rtol=rtol, atol=0))

    def length(self, L: float) -> float:
        return L / self.Z0


def normalize(env: ComplexEnvelope, scales: NormalizationScales) -> ComplexEnvelope:
    env.require("physical")
    grid = env.grid.scaled(1.0 / scales.T0)
    return ComplexEnvelope(samples=env.samples / np.sqrt(scales.P0), grid=grid, units="normalized")


def denormalize(env: ComplexEnvelope, scales: NormalizationScales) -> ComplexEnvelope:
    env.require("normalized")
    grid = env.grid.scaled(scales.T0)
    return ComplexEnvelope(samples=env.samples * np.sqrt(scales.P0), grid=grid, units="physical")


def edge_energy_ratio(samples: np.ndarray) -> float:
    """Energy in the first and last EDGE_FRACTION of the samples over the total."""
    power = np.abs(samples) ** 2
    total = float(power.sum())
    if total == 0:
        return 0.0
    m = max(1, int(EDGE_FRACTION * samples.shape[0]))
    return float((power[:m].sum() + power[-m:].sum()) / total)
