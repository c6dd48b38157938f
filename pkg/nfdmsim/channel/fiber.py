from __future__ import annotations

import logging
import time
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.constants import h as PLANCK

from nfdmsim.errors import GuardViolationError, InvalidInputError
from nfdmsim.framing.envelope import EDGE_LIMIT, ComplexEnvelope, edge_energy_ratio
from nfdmsim.framing.system import SystemConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChannelParams:
    """Fiber link with ideal distributed amplification (SI units)."""

    beta2: float
    gamma: float
    alpha: float
    L: float
    eta_sp: float
    nz: int
    noise_on: bool = True
    seed: int = 0
    nu: float = 193.41e12

    def __post_init__(self) -> None:
        if self.nz < 1:
            raise InvalidInputError(f"step count must be >= 1, got {self.nz}")
        if self.L < 0:
            raise InvalidInputError(f"link length must be non-negative, got {self.L}")

    @classmethod
    def from_config(cls, cfg: SystemConfig) -> ChannelParams:
        return cls(
            beta2=cfg.beta2,
            gamma=cfg.gamma,
            alpha=cfg.alpha,
            L=cfg.L,
            eta_sp=cfg.eta_sp,
            nz=cfg.nz,
            noise_on=cfg.noise_on,
            seed=cfg.seed,
            nu=cfg.nu,
        )

    @property
    def dz(self) -> float:
        return self.L / self.nz

    def noise_psd(self) -> float:
        """ASE power spectral density accumulated over the link (W/Hz)."""
        return self.eta_sp * PLANCK * self.nu * self.alpha * self.L

    def step_variance(self, fs: float) -> float:
        return self.eta_sp * PLANCK * self.nu * self.alpha * self.dz * fs

    def reversed(self) -> ChannelParams:
        return replace(self, beta2=-self.beta2, gamma=-self.gamma, noise_on=False)


def _omega(env: ComplexEnvelope) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(env.grid.n, d=env.dt)


def linear_propagate(samples: np.ndarray, omega: np.ndarray, beta2: float, length: float) -> np.ndarray:
    return np.fft.ifft(np.fft.fft(samples) * np.exp(0.5j * beta2 * omega**2 * length))


def check_guard(env: ComplexEnvelope, p: ChannelParams) -> None:
    """Linear-dispersion estimate of wraparound at z = 0, L/2, L."""
    omega = _omega(env)
    worst = edge_energy_ratio(env.samples)
    for z in (0.5 * p.L, p.L):
        worst = max(worst, edge_energy_ratio(linear_propagate(env.samples, omega, p.beta2, z)))
    if worst > EDGE_LIMIT:
        raise GuardViolationError(edge_ratio=worst, limit=EDGE_LIMIT)


def ssfm_propagate(
    q: ComplexEnvelope,
    p: ChannelParams,
    rng: Optional[np.random.Generator] = None,
    check_wraparound: bool = True,
) -> ComplexEnvelope:
    """
    Symmetric split-step integration of j A_z = (beta2/2) A_tt - gamma |A|^2 A.
    Loss is exactly compensated; with noise_on, circular white Gaussian noise of
    variance eta_sp h nu alpha dz fs is added after every step.
    """
    q.require("physical")
    if check_wraparound:
        check_guard(q, p)
    t_start = time.time()

    omega = _omega(q)
    half_step = np.exp(0.5j * p.beta2 * omega**2 * (0.5 * p.dz))
    nl_step = p.gamma * p.dz
    add_noise = p.noise_on and p.alpha > 0 and p.eta_sp > 0
    if add_noise:
        rng = rng if rng is not None else np.random.default_rng(p.seed)
        sigma = np.sqrt(0.5 * p.step_variance(1.0 / q.dt))

    field = np.array(q.samples, dtype=np.complex128)
    for _ in range(p.nz):
        field = np.fft.ifft(np.fft.fft(field) * half_step)
        field = field * np.exp(1j * nl_step * np.abs(field) ** 2)
        field = np.fft.ifft(np.fft.fft(field) * half_step)
        if add_noise:
            field = field + sigma * (rng.standard_normal(field.shape) + 1j * rng.standard_normal(field.shape))

    logger.debug(
        "ssfm.done",
        extra={"nz": p.nz, "n_t": q.grid.n, "noise_on": add_noise, "duration_ms": int((time.time() - t_start) * 1000)},
    )
    return q.with_samples(field)


def dbp(q: ComplexEnvelope, p: ChannelParams) -> ComplexEnvelope:
    """
    Noiseless backward propagation (beta2 -> -beta2, gamma -> -gamma). The input
    carries ASE across the whole grid, so it is not screened for wraparound.
    """
    return ssfm_propagate(q, p.reversed(), check_wraparound=False)


def edc(q: ComplexEnvelope, p: ChannelParams) -> ComplexEnvelope:
    """Inverse of the linear channel: multiply by exp(-j (beta2/2) omega^2 L)."""
    return q.with_samples(linear_propagate(q.samples, _omega(q), -p.beta2, p.L))
