from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from nfdmsim.errors import InvalidInputError
from nfdmsim.framing import ComplexEnvelope, QamAlphabet, SystemConfig, gaussian_pulse, qam_alphabet


@dataclass(frozen=True)
class DetectionResult:
    decided: np.ndarray  # alphabet indices, length Nb
    metric: np.ndarray  # winning metric per symbol
    elapsed: float
    glm_solves: int = 0

    def __len__(self) -> int:
        return int(self.decided.shape[0])


def matched_filter_outputs(s_hat: ComplexEnvelope, cfg: SystemConfig, amplitude: float) -> np.ndarray:
    """Correlate with the TX pulse and sample at the pulse centres (k-1) Ts."""
    s_hat.require("normalized")
    if not amplitude > 0:
        raise InvalidInputError(f"amplitude must be positive, got {amplitude}")
    centers = np.arange(cfg.Nb, dtype=float)
    pulses = gaussian_pulse(s_hat.times[None, :] - centers[:, None], cfg.pulse_rms_width)
    return (pulses @ s_hat.samples) * s_hat.dt / amplitude


def common_phase_correction(y: np.ndarray, alphabet: QamAlphabet) -> np.ndarray:
    """Blind fourth-power estimate of a common phase rotation (pi/2 ambiguity, |phase| < pi/4)."""
    ref = np.mean(alphabet.points**4)
    acc = np.mean(y**4)
    if abs(acc) == 0:
        return y
    phase = np.angle(acc / ref) / 4.0
    return y * np.exp(-1j * phase)


def matched_filter_decide(
    s_hat: ComplexEnvelope,
    cfg: SystemConfig,
    amplitude: float,
    correct_phase: bool = False,
) -> DetectionResult:
    alphabet = qam_alphabet(cfg.qam_order)
    y = matched_filter_outputs(s_hat, cfg, amplitude)
    if correct_phase:
        y = common_phase_correction(y, alphabet)
    decided, dist = alphabet.nearest(y)
    return DetectionResult(decided=decided, metric=dist, elapsed=0.0)
