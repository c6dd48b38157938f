from __future__ import annotations

from typing import Optional

from nfdmsim.framing import ComplexEnvelope, SymbolBurst, SystemConfig, shape_pulses
from nfdmsim.nft.backward import GlmSolveCounter, bnft_glm
from nfdmsim.nft.nis import nis_encode, precompensate
from nfdmsim.nft.spectrum import ContinuousSpectrum


def encode_burst(burst: SymbolBurst, cfg: SystemConfig, amplitude: float, L_norm: float) -> ContinuousSpectrum:
    """shape_pulses -> nis_encode -> precompensate."""
    s = shape_pulses(burst, cfg, amplitude)
    return precompensate(nis_encode(s), L_norm)


def nfdm_transmit(
    burst: SymbolBurst,
    cfg: SystemConfig,
    amplitude: float,
    L_norm: Optional[float] = None,
    counter: Optional[GlmSolveCounter] = None,
) -> ComplexEnvelope:
    """Normalized optical frame q(0, t) on the mirror of the QAM frame grid."""
    L_norm = cfg.L_norm if L_norm is None else L_norm
    spec = encode_burst(burst, cfg, amplitude, L_norm)
    return bnft_glm(spec, cfg.frame_grid().mirrored(), dense_max=cfg.glm_dense_max, counter=counter)
