from __future__ import annotations

import numpy as np

from nfdmsim.errors import ConfigError, InvalidInputError
from nfdmsim.framing.envelope import ComplexEnvelope, TimeGrid
from nfdmsim.framing.qam import SymbolBurst
from nfdmsim.framing.system import SystemConfig

# energy outside +-4 widths is erfc(4), about 1.5e-8
TRUNCATION = 4.0


def gaussian_pulse(t: np.ndarray, rms_width: float) -> np.ndarray:
    """Unit-energy Gaussian, amplitude standard deviation rms_width, zero beyond TRUNCATION widths."""
    t = np.asarray(t, dtype=float)
    g = (np.pi * rms_width**2) ** -0.25 * np.exp(-(t**2) / (2.0 * rms_width**2))
    return np.where(np.abs(t) <= TRUNCATION * rms_width, g, 0.0)


def launch_amplitude(cfg: SystemConfig) -> float:
    """Normalized amplitude giving mean power power_dbm over the burst."""
    return float(np.sqrt(cfg.power_w / cfg.scales.P0))


def shape_symbols(symbols: np.ndarray, grid: TimeGrid, rms_width: float) -> np.ndarray:
    t = grid.times
    centers = np.arange(len(symbols), dtype=float)
    # (n_symbols, n_t) is fine at the frame sizes used here
    return np.asarray(symbols, dtype=np.complex128) @ gaussian_pulse(t[None, :] - centers[:, None], rms_width)


def shape_pulses(burst: SymbolBurst, cfg: SystemConfig, amplitude: float = 1.0) -> ComplexEnvelope:
    """
    Normalized QAM signal on the frame grid of cfg. Bursts shorter than cfg.Nb
    are zero-padded at the end, which is how trial prefixes share the frame.
    """
    if len(burst) == 0:
        raise InvalidInputError("cannot shape an empty burst")
    if len(burst) > cfg.Nb:
        raise ConfigError([f"system.Nb: frame holds {cfg.Nb} symbols, burst has {len(burst)}"])
    grid = cfg.frame_grid()
    samples = amplitude * shape_symbols(burst.symbols, grid, cfg.pulse_rms_width)
    return ComplexEnvelope(samples=samples, grid=grid, units="normalized")
