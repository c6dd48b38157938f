from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Any

import numpy as np

from nfdmsim.errors import ConfigError
from nfdmsim.framing.envelope import EDGE_FRACTION, NormalizationScales, TimeGrid

DB_PER_NEPER = 10.0 / np.log(10.0)
# symbols kept clear beyond the dispersion memory on each side of the burst
GUARD_MARGIN_SYMBOLS = 8


@dataclass(frozen=True)
class SystemConfig:
    """Physical and numerical parameters of one NFDM link (SI units)."""

    Rs: float = 50e9
    L: float = 400e3
    beta2: float = -20.39e-27
    alpha_db_km: float = 0.2
    gamma: float = 1.22e-3
    eta_sp: float = 4.0
    B_dacadc: float = 100e9
    Nb: int = 16
    Ng: int = 600
    samples_per_symbol: int = 16
    nz: int = 400
    power_dbm: float = -4.0
    seed: int = 1
    pulse_rms_width: float = 0.2
    qam_order: int = 16
    noise_on: bool = True
    nu: float = 193.41e12
    fnft_oversampling: int = 8
    glm_dense_max: int = 192

    @property
    def Ts(self) -> float:
        return 1.0 / self.Rs

    @property
    def alpha(self) -> float:
        # power attenuation in 1/m
        return self.alpha_db_km / DB_PER_NEPER / 1e3

    @property
    def fs(self) -> float:
        return self.samples_per_symbol * self.Rs

    @property
    def power_w(self) -> float:
        return 1e-3 * 10.0 ** (self.power_dbm / 10.0)

    @property
    def scales(self) -> NormalizationScales:
        # T0 = Ts
        return NormalizationScales.from_fiber(T0=self.Ts, beta2=self.beta2, gamma=self.gamma)

    @property
    def L_norm(self) -> float:
        return self.scales.length(self.L)

    @property
    def dispersion_memory(self) -> float:
        """Group delay (s) at the edge of the DAC/ADC band after the full link."""
        return 2.0 * np.pi * self.B_dacadc * abs(self.beta2) * self.L

    def min_guard_symbols(self) -> int:
        """
        Smallest even Ng for which each half of the guard, less the edge band
        inspected by the wraparound check, holds the dispersion memory plus
        GUARD_MARGIN_SYMBOLS. The frame spans Nb + Ng symbols.
        """
        memory = self.dispersion_memory * self.Rs + GUARD_MARGIN_SYMBOLS
        need = int(np.ceil((memory + EDGE_FRACTION * self.Nb) / (0.5 - EDGE_FRACTION) - 1e-9))
        return need + need % 2

    def frame_grid(self) -> TimeGrid:
        """
        Normalized QAM-domain grid: symbol k (1-based) is centred at k-1, the
        guard is split evenly around the burst.
        """
        sps = self.samples_per_symbol
        return TimeGrid(t0=-0.5 - self.Ng / 2.0, dt=1.0 / sps, n=(self.Nb + self.Ng) * sps)

    def replace(self, **changes: Any) -> SystemConfig:
        data = asdict(self)
        data.update(changes)
        return SystemConfig.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SystemConfig:
        known = {f.name: f for f in fields(cls)}
        problems: list[str] = []
        kwargs: dict[str, Any] = {}
        for key, value in data.items():
            if key not in known:
                problems.append(f"system.{key}: unknown parameter")
                continue
            target = known[key].type
            try:
                if target == "bool":
                    if not isinstance(value, bool):
                        raise TypeError("expected true or false")
                    kwargs[key] = value
                elif target == "int":
                    if isinstance(value, bool) or float(value) != int(value):
                        raise TypeError("expected an integer")
                    kwargs[key] = int(value)
                else:
                    kwargs[key] = float(value)
            except (TypeError, ValueError) as e:
                problems.append(f"system.{key}: {value!r} is invalid ({e})")
        if problems:
            raise ConfigError(problems)
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        problems: list[str] = []
        positive = ("Rs", "L", "gamma", "eta_sp", "B_dacadc", "nu", "pulse_rms_width")
        for name in positive:
            if not getattr(self, name) > 0:
                problems.append(f"system.{name}: must be positive, got {getattr(self, name)}")
        if self.alpha_db_km < 0:
            problems.append(f"system.alpha_db_km: must be non-negative, got {self.alpha_db_km}")
        if not self.beta2 < 0:
            problems.append(f"system.beta2: must be negative (anomalous dispersion), got {self.beta2}")
        for name in ("Nb", "samples_per_symbol", "nz", "fnft_oversampling", "glm_dense_max"):
            if getattr(self, name) < 1:
                problems.append(f"system.{name}: must be >= 1, got {getattr(self, name)}")
        if self.Ng < 0 or self.Ng % 2:
            problems.append(f"system.Ng: must be a non-negative even number, got {self.Ng}")
        k = int(round(np.log2(self.qam_order))) if self.qam_order > 0 else 0
        if 2**k != self.qam_order or k % 2 or k < 2:
            problems.append(f"system.qam_order: must be a power of 4, got {self.qam_order}")
        if self.samples_per_symbol * self.Rs < 2 * self.B_dacadc:
            problems.append(
                f"system.samples_per_symbol: sampling rate {self.samples_per_symbol * self.Rs:.3g} Hz "
                f"is below twice the DAC/ADC bandwidth {self.B_dacadc:.3g} Hz"
            )
        if not problems and self.Ng < self.min_guard_symbols():
            problems.append(
                f"system.Ng: {self.Ng} guard symbols cannot hold a dispersion memory of "
                f"{self.dispersion_memory * self.Rs:.1f} symbols on each side of the burst, "
                f"need at least {self.min_guard_symbols()}"
            )
        if problems:
            raise ConfigError(problems)
