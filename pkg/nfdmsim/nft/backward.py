from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import hankel, solve
from scipy.signal import fftconvolve
from scipy.sparse.linalg import LinearOperator, cg

from nfdmsim.errors import FramingError, GuardViolationError, InvalidInputError, NumericalFailureError
from nfdmsim.framing.envelope import EDGE_LIMIT, ComplexEnvelope, TimeGrid, edge_energy_ratio
from nfdmsim.nft.spectrum import ContinuousSpectrum

logger = logging.getLogger(__name__)

COND_LIMIT = 1e12
EDGE_RATIO = 1e-3
SUPPORT_TOL = 1e-13
CG_RTOL = 1e-12
_CHUNK = 512


@dataclass
class GlmSolveCounter:
    """Number of GLM point solves (one per output time)."""

    count: int = 0

    def add(self, n: int = 1) -> None:
        self.count += n


def glm_kernel(spec: ContinuousSpectrum, grid: TimeGrid) -> np.ndarray:
    """
    F(x) = (1/2pi) * integral of rho(lambda) exp(j lambda x) d lambda at
    x_p = 2 t0 + p dt, p = 0 .. 2n-2, with t0, dt, n from grid. On a lambda
    grid of spacing dlam the result is periodic in x with period 2pi/dlam.
    """
    lam = spec.lam
    n_x = 2 * grid.n - 1
    x0 = 2.0 * grid.t0
    x = x0 + grid.dt * np.arange(n_x)

    nfft = 2.0 * np.pi / (lam.dlam * grid.dt)
    nfft_int = int(round(nfft))
    if abs(nfft - nfft_int) < 1e-9 * nfft and nfft_int >= max(lam.n, n_x):
        weights = spec.rho * np.exp(1j * np.arange(lam.n) * lam.dlam * x0)
        series = np.fft.ifft(weights, n=nfft_int)[:n_x] * nfft_int
        return lam.dlam / (2.0 * np.pi) * np.exp(1j * lam.lam0 * x) * series

    lambdas = lam.lambdas
    F = np.empty(n_x, dtype=np.complex128)
    for start in range(0, n_x, _CHUNK):
        xs = x[start : start + _CHUNK]
        F[start : start + _CHUNK] = np.exp(1j * xs[:, None] * lambdas[None, :]) @ spec.rho
    return lam.dlam / (2.0 * np.pi) * F


def _hankel_matvec(c: np.ndarray, v: np.ndarray) -> np.ndarray:
    # (H v)_i = sum_s c[i + s] v[s]
    n = v.shape[0]
    return fftconvolve(c, v[::-1])[n - 1 : 2 * n - 1]


class GlmSolver:
    """
    Nystrom solver of the GLM system for the continuous spectrum `spec`, one
    output time at a time.

    With the scattering convention of zs_scatter, the Jost solution fixed at
    +inf is psi = (0, 1) e^(j lam t) + int_t^inf K(t, y) e^(j lam y) dy, its
    partner is (psi2*, -psi1*), and phi / a = psi_bar + rho psi gives, for y > t,

        K2*(t, y) = -int_t^inf K1(t, s) F(s + y) ds
        K1*(t, y) =  F(t + y) + int_t^inf K2(t, s) F(s + y) ds

    and q(t) = 2 K1*(t, t). For output index n (time t) the unknowns are
    u(y) = K1*(t, y) on y = t + i dt; eliminating K2 and weighting with the
    trapezoid rule W gives the Hermitian positive-definite system

        (I + G G^H) v = W^(1/2) f,   G = W^(1/2) H W^(1/2),   u = W^(-1/2) v,

    with H[i, s] = F(2t + (i + s) dt), f[i] = F(2t + i dt) and q(t) = 2 u(t).

    F is periodic over the output grid, so a signal reaching the grid edges
    folds back onto itself; that is refused with GuardViolationError.
    """

    def __init__(
        self,
        spec: ContinuousSpectrum,
        grid: TimeGrid,
        dense_max: int = 192,
        counter: Optional[GlmSolveCounter] = None,
    ) -> None:
        self.grid = grid
        self.dense_max = dense_max
        self.counter = counter
        self.F = glm_kernel(spec, grid)

        wrapped = edge_energy_ratio(self.F)
        if wrapped > EDGE_LIMIT:
            raise GuardViolationError(edge_ratio=wrapped, limit=EDGE_LIMIT)

        peak = float(np.max(np.abs(self.F))) if self.F.size else 0.0
        support = np.nonzero(np.abs(self.F) > SUPPORT_TOL * peak)[0] if peak > 0 else np.array([], dtype=int)
        self.p_hi = int(support[-1]) if support.size else -1

        rho_abs = np.abs(spec.rho)
        rho_max = float(rho_abs.max())
        if rho_max > 0 and max(rho_abs[0], rho_abs[-1]) > EDGE_RATIO * rho_max:
            logger.warning(
                "glm.spectrum_not_decaying",
                extra={"edge_ratio": float(max(rho_abs[0], rho_abs[-1]) / rho_max)},
            )

    def system_size(self, n: int) -> int:
        return max(0, min(self.grid.n - n, (self.p_hi - 2 * n) // 2 + 1))

    def solve(self, n: int) -> complex:
        if self.counter is not None:
            self.counter.add()

        size = self.system_size(n)
        if size == 0:
            return 0j
        c = self.F[2 * n : 2 * n + 2 * size - 1]
        if size == 1:
            return complex(2.0 * c[0])

        t = self.grid.t0 + n * self.grid.dt
        w = np.full(size, self.grid.dt)
        w[0] = w[-1] = 0.5 * self.grid.dt
        d = np.sqrt(w)

        fro2 = float(np.sum(np.abs(c) ** 2 * fftconvolve(w, w)))
        if 1.0 + fro2 > COND_LIMIT:
            raise NumericalFailureError(t=t, reason=f"condition bound {1.0 + fro2:.3e} exceeds {COND_LIMIT:.0e}")

        rhs = d * c[:size]
        if size <= self.dense_max:
            G = d[:, None] * hankel(c[:size], c[size - 1 :]) * d[None, :]
            A = np.eye(size) + G @ G.conj().T
            v = solve(A, rhs, assume_a="pos")
        else:
            c_conj = np.conj(c)

            def matvec(x: np.ndarray) -> np.ndarray:
                x = np.asarray(x).reshape(-1)
                gh = d * _hankel_matvec(c_conj, d * x)
                return x + d * _hankel_matvec(c, d * gh)

            op = LinearOperator((size, size), matvec=matvec, dtype=np.complex128)
            v, info = cg(op, rhs, rtol=CG_RTOL, atol=0.0, maxiter=10 * size)
            if info != 0:
                raise NumericalFailureError(t=t, reason=f"conjugate gradient did not converge (info={info})")
        return complex(2.0 * v[0] / d[0])

    def solve_range(self, start: int, stop: int) -> np.ndarray:
        return np.array([self.solve(n) for n in range(start, stop)], dtype=np.complex128)


def bnft_glm(
    spec: ContinuousSpectrum,
    out_grid: TimeGrid,
    dense_max: int = 192,
    counter: Optional[GlmSolveCounter] = None,
) -> ComplexEnvelope:
    """Backward NFT of a continuous spectrum (no discrete eigenvalues) on out_grid."""
    t_start = time.time()
    solver = GlmSolver(spec, out_grid, dense_max=dense_max, counter=counter)
    samples = solver.solve_range(0, out_grid.n)
    logger.debug(
        "glm.full",
        extra={"n_t": out_grid.n, "support": solver.p_hi, "duration_ms": int((time.time() - t_start) * 1000)},
    )
    return ComplexEnvelope(samples=samples, grid=out_grid, units="normalized")


def window_indices(grid: TimeGrid, t_start: float, t_end: float) -> tuple[int, int]:
    """Inclusive sample indices of [t_start, t_end], edges snapped to the nearest sample."""
    if t_start > t_end:
        raise InvalidInputError(f"window start {t_start} is after its end {t_end}")
    i0, i1 = grid.index_of(t_start), grid.index_of(t_end)
    if i0 < 0 or i1 >= grid.n:
        raise FramingError(f"window [{t_start}, {t_end}] falls outside the grid [{grid.t0}, {grid.t_end}]")
    return i0, i1


def bnft_windowed(
    spec: ContinuousSpectrum,
    out_grid: TimeGrid,
    t_start: float,
    t_end: float,
    dense_max: int = 192,
    counter: Optional[GlmSolveCounter] = None,
    solver: Optional[GlmSolver] = None,
) -> np.ndarray:
    """Samples of bnft_glm(spec, out_grid) restricted to [t_start, t_end]; same per-t solve."""
    i0, i1 = window_indices(out_grid, t_start, t_end)
    solver = solver or GlmSolver(spec, out_grid, dense_max=dense_max, counter=counter)
    return solver.solve_range(i0, i1 + 1)
