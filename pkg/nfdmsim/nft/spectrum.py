from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from nfdmsim.errors import InvalidInputError
from nfdmsim.framing.envelope import TimeGrid


@dataclass(frozen=True)
class LambdaGrid:
    lam0: float
    dlam: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 2 or not self.dlam > 0:
            raise InvalidInputError(f"lambda grid needs n >= 2 and dlam > 0, got n={self.n}, dlam={self.dlam}")

    @property
    def lambdas(self) -> np.ndarray:
        return self.lam0 + self.dlam * np.arange(self.n)

    @classmethod
    def for_time_grid(cls, grid: TimeGrid) -> LambdaGrid:
        """
        Image of the DFT frequencies of grid under lambda = -omega/2:
        n points spanning [-pi/(2 dt), pi/(2 dt)).
        """
        dlam = np.pi / (grid.n * grid.dt)
        return cls(lam0=-dlam * (grid.n // 2), dlam=dlam, n=grid.n)

    @classmethod
    def uniform(cls, lam_min: float, lam_max: float, n: int) -> LambdaGrid:
        return cls(lam0=lam_min, dlam=(lam_max - lam_min) / (n - 1), n=n)


@dataclass(frozen=True)
class NftGrid:
    time: TimeGrid
    lam: LambdaGrid

    @classmethod
    def for_time_grid(cls, grid: TimeGrid) -> NftGrid:
        return cls(time=grid, lam=LambdaGrid.for_time_grid(grid))


@dataclass(frozen=True)
class ContinuousSpectrum:
    lam: LambdaGrid
    rho: np.ndarray
    a: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        for name in ("rho", "a", "b"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = np.asarray(arr, dtype=np.complex128)
            if arr.shape != (self.lam.n,):
                raise InvalidInputError(f"{name} has shape {arr.shape}, expected ({self.lam.n},)")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def lambdas(self) -> np.ndarray:
        return self.lam.lambdas

    def with_rho(self, rho: np.ndarray) -> ContinuousSpectrum:
        return ContinuousSpectrum(lam=self.lam, rho=rho)

    def ratio_error(self) -> float:
        """Max relative mismatch between rho and b/a."""
        if self.a is None or self.b is None:
            return 0.0
        ref = self.b / self.a
        return float(np.max(np.abs(self.rho - ref) / np.maximum(np.abs(ref), 1e-300)))

    def unimodularity_error(self) -> float:
        if self.a is None or self.b is None:
            raise InvalidInputError("spectrum carries no scattering pair")
        return float(np.max(np.abs(np.abs(self.a) ** 2 + np.abs(self.b) ** 2 - 1.0)))

    def nonlinear_energy(self) -> float:
        """(1/pi) * integral of ln(1 + |rho|^2) over lambda (trapezoid)."""
        return float(np.trapezoid(np.log1p(np.abs(self.rho) ** 2), dx=self.lam.dlam) / np.pi)
