from __future__ import annotations

import logging
import time
from typing import Optional

import numpy as np

from nfdmsim.framing import ComplexEnvelope, SymbolBurst, SystemConfig, qam_alphabet
from nfdmsim.nft import GlmSolveCounter, bnft_windowed, encode_burst, propagate_spectrum, window_indices
from nfdmsim.receivers.detection import DetectionResult

logger = logging.getLogger(__name__)


def detection_window(k: int) -> tuple[float, float]:
    """Normalized window [-t_k, -t_(k-1)] of symbol k (1-based), t_k = k - 1/2."""
    return -(k - 0.5), -(k - 1.5)


def trial_waveform(
    prefix: np.ndarray,
    cfg: SystemConfig,
    amplitude: float,
    window: tuple[float, float],
    counter: Optional[GlmSolveCounter] = None,
) -> np.ndarray:
    """
    Noiseless received waveform of a symbol prefix over `window`: the TX chain
    followed by the channel acting on the continuous spectrum.
    """
    burst = SymbolBurst(indices=prefix, alphabet=qam_alphabet(cfg.qam_order))
    spec = propagate_spectrum(encode_burst(burst, cfg, amplitude, cfg.L_norm), cfg.L_norm)
    return bnft_windowed(spec, cfg.frame_grid().mirrored(), *window, dense_max=cfg.glm_dense_max, counter=counter)


def df_bnft_receiver(
    q_rx: ComplexEnvelope,
    cfg: SystemConfig,
    amplitude: float,
    counter: Optional[GlmSolveCounter] = None,
    feedback_override: Optional[dict[int, int]] = None,
) -> DetectionResult:
    """
    Decision-feedback BNFT detection. For k = 1..Nb every candidate X_i is
    appended to the decided prefix, its trial waveform is computed on the
    symbol-k window only, and the candidate with the least windowed squared
    distance to q_rx wins (lowest index on ties). feedback_override[k] forces
    the symbol fed back after step k.
    """
    t_start = time.time()
    q_rx.require("normalized")
    counter = counter if counter is not None else GlmSolveCounter()
    solves_before = counter.count
    alphabet = qam_alphabet(cfg.qam_order)
    grid = cfg.frame_grid().mirrored()
    received = np.asarray(q_rx.samples)
    feedback_override = feedback_override or {}

    decided = np.zeros(cfg.Nb, dtype=np.int64)
    feedback = np.zeros(cfg.Nb, dtype=np.int64)
    metric = np.zeros(cfg.Nb)
    for k in range(1, cfg.Nb + 1):
        window = detection_window(k)
        i0, i1 = window_indices(grid, *window)
        target = received[i0 : i1 + 1]

        scores = np.empty(alphabet.order)
        for i in range(alphabet.order):
            prefix = np.append(feedback[: k - 1], i)
            trial = trial_waveform(prefix, cfg, amplitude, window, counter=counter)
            scores[i] = np.trapezoid(np.abs(target - trial) ** 2, dx=grid.dt)

        best = int(np.argmin(scores))
        decided[k - 1] = best
        metric[k - 1] = scores[best]
        feedback[k - 1] = feedback_override.get(k, best)

    elapsed = time.time() - t_start
    solves = counter.count - solves_before
    logger.debug("rx.df_bnft.done", extra={"Nb": cfg.Nb, "glm_solves": solves, "duration_ms": int(elapsed * 1000)})
    return DetectionResult(decided=decided, metric=metric, elapsed=elapsed, glm_solves=solves)
