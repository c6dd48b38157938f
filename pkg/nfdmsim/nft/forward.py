from __future__ import annotations

import logging
import time

import numpy as np
from scipy.signal import resample

from nfdmsim.errors import InvalidInputError, SingularSpectrumError
from nfdmsim.framing.envelope import ComplexEnvelope
from nfdmsim.nft.spectrum import ContinuousSpectrum, NftGrid

logger = logging.getLogger(__name__)

A_FLOOR = 1e-12


def _check_grid(q: ComplexEnvelope, grid: NftGrid) -> None:
    g = grid.time
    if g.n != q.grid.n or not np.isclose(g.dt, q.dt, rtol=1e-12) or not np.isclose(g.t0, q.t0, rtol=1e-12, atol=1e-12 * g.dt):
        raise InvalidInputError(f"envelope grid {q.grid} does not match NFT grid {g}")


def zs_scatter(samples: np.ndarray, t0: float, dt: float, lambdas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Scattering data of v_t = [[-j lam, -q*], [q, j lam]] v for a potential held
    constant on each cell [t_n - dt/2, t_n + dt/2], t_n = t0 + n dt. Each cell
    is crossed with its exact 2x2 exponential cos(k h) I + sin(k h)/k P.
    """
    lam = np.asarray(lambdas, dtype=float)
    t_start = t0 - 0.5 * dt
    t_end = t0 + (len(samples) - 0.5) * dt

    phi1 = np.exp(-1j * lam * t_start)
    phi2 = np.zeros_like(phi1)
    jlam = 1j * lam
    lam2 = lam**2
    for qn in samples:
        kappa = np.sqrt(lam2 + abs(qn) ** 2)
        c = np.cos(kappa * dt)
        s = dt * np.sinc(kappa * dt / np.pi)
        p1 = -jlam * phi1 - np.conj(qn) * phi2
        p2 = qn * phi1 + jlam * phi2
        phi1, phi2 = c * phi1 + s * p1, c * phi2 + s * p2

    a = phi1 * np.exp(1j * lam * t_end)
    b = phi2 * np.exp(-1j * lam * t_end)
    return a, b


def fnft_continuous(q: ComplexEnvelope, grid: NftGrid, oversampling: int = 1) -> ContinuousSpectrum:
    """
    Continuous spectrum a, b, rho = b/a on grid.lam. Discrete eigenvalues are
    not searched for. oversampling > 1 refines the potential by band-limited
    (FFT) interpolation before scattering.
    """
    q.require("normalized")
    _check_grid(q, grid)
    if oversampling < 1:
        raise InvalidInputError(f"oversampling must be >= 1, got {oversampling}")

    t_start = time.time()
    samples = np.asarray(q.samples)
    dt = q.dt
    if oversampling > 1:
        samples = resample(samples, len(samples) * oversampling)
        dt = dt / oversampling

    lambdas = grid.lam.lambdas
    a, b = zs_scatter(samples, q.t0, dt, lambdas)

    abs_a = np.abs(a)
    bad = np.nonzero(abs_a < A_FLOOR)[0]
    if bad.size:
        raise SingularSpectrumError(lam=float(lambdas[bad[0]]), abs_a=float(abs_a[bad[0]]))

    logger.debug(
        "fnft.done",
        extra={"n_t": len(samples), "n_lambda": len(lambdas), "duration_ms": int((time.time() - t_start) * 1000)},
    )
    return ContinuousSpectrum(lam=grid.lam, rho=b / a, a=a, b=b)
