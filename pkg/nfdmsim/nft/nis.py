from __future__ import annotations

from typing import Optional

import numpy as np

from nfdmsim.errors import InvalidInputError
from nfdmsim.framing.envelope import ComplexEnvelope, TimeGrid
from nfdmsim.nft.spectrum import ContinuousSpectrum, LambdaGrid

_CHUNK = 512


def _dft_bins(grid: TimeGrid) -> np.ndarray:
    # omega_k = -2 lambda_k lands on DFT bin (n//2 - k) mod n
    k = np.arange(grid.n)
    return (grid.n // 2 - k) % grid.n


def _is_native(lam: LambdaGrid, grid: TimeGrid) -> bool:
    ref = LambdaGrid.for_time_grid(grid)
    return lam.n == ref.n and np.isclose(lam.dlam, ref.dlam, rtol=1e-12) and np.isclose(lam.lam0, ref.lam0, rtol=1e-12)


def nis_encode(s: ComplexEnvelope, lam: Optional[LambdaGrid] = None) -> ContinuousSpectrum:
    """rho(lambda) = S(-2 lambda), S(omega) = integral of s(t) exp(-j omega t) dt."""
    s.require("normalized")
    lam = lam or LambdaGrid.for_time_grid(s.grid)
    omega = -2.0 * lam.lambdas

    if _is_native(lam, s.grid):
        spectrum = np.fft.fft(s.samples)[_dft_bins(s.grid)]
        rho = s.dt * np.exp(-1j * omega * s.t0) * spectrum
        return ContinuousSpectrum(lam=lam, rho=rho)

    t = s.times
    rho = np.empty(lam.n, dtype=np.complex128)
    for start in range(0, lam.n, _CHUNK):
        w = omega[start : start + _CHUNK]
        rho[start : start + _CHUNK] = s.dt * (np.exp(-1j * w[:, None] * t[None, :]) @ s.samples)
    return ContinuousSpectrum(lam=lam, rho=rho)


def nis_decode(spec: ContinuousSpectrum, grid: TimeGrid) -> ComplexEnvelope:
    """Exact inverse of nis_encode on the native lambda grid of `grid`."""
    if not _is_native(spec.lam, grid):
        raise InvalidInputError(f"lambda grid {spec.lam} is not the native grid of {grid}")
    omega = -2.0 * spec.lambdas
    spectrum = np.empty(grid.n, dtype=np.complex128)
    spectrum[_dft_bins(grid)] = spec.rho * np.exp(1j * omega * grid.t0) / grid.dt
    return ComplexEnvelope(samples=np.fft.ifft(spectrum), grid=grid, units="normalized")


def precompensate(spec: ContinuousSpectrum, L_norm: float) -> ContinuousSpectrum:
    """rho -> rho * exp(+j 4 lambda^2 L): undoes the channel ahead of time."""
    if L_norm < 0:
        raise InvalidInputError(f"normalized length must be non-negative, got {L_norm}")
    if L_norm == 0:
        return spec.with_rho(spec.rho)
    return spec.with_rho(spec.rho * np.exp(4j * spec.lambdas**2 * L_norm))


def propagate_spectrum(spec: ContinuousSpectrum, L_norm: float) -> ContinuousSpectrum:
    """Noiseless channel acting on the continuous spectrum: rho -> rho * exp(-j 4 lambda^2 L)."""
    if L_norm < 0:
        raise InvalidInputError(f"normalized length must be non-negative, got {L_norm}")
    if L_norm == 0:
        return spec.with_rho(spec.rho)
    return spec.with_rho(spec.rho * np.exp(-4j * spec.lambdas**2 * L_norm))
