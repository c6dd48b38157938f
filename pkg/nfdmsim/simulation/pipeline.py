from __future__ import annotations

from typing import Optional

import numpy as np

from nfdmsim.channel import ChannelParams, ideal_lowpass, ssfm_propagate
from nfdmsim.errors import UsageError
from nfdmsim.framing import (
    ComplexEnvelope,
    SymbolBurst,
    SystemConfig,
    denormalize,
    map_bits_to_burst,
    normalize,
    qam_alphabet,
    shape_pulses,
)
from nfdmsim.nft import GlmSolveCounter, nfdm_transmit
from nfdmsim.receivers import DetectionResult, conventional_receiver, df_bnft_receiver, fnft_receiver

NFDM_RECEIVERS = ("fnft", "df-bnft")
CONVENTIONAL_RECEIVERS = ("edc", "dbp")


def frame_rng(seed: int, cell: int, frame: int) -> np.random.Generator:
    """Independent stream per (seed, cell, frame), so results do not depend on scheduling."""
    return np.random.default_rng(np.random.SeedSequence([seed, cell, frame]))


def draw_burst(cfg: SystemConfig, rng: np.random.Generator) -> SymbolBurst:
    alphabet = qam_alphabet(cfg.qam_order)
    bits = rng.integers(0, 2, size=cfg.Nb * alphabet.bits_per_symbol, dtype=np.uint8)
    return map_bits_to_burst(bits, alphabet)


def transmit(
    burst: SymbolBurst,
    cfg: SystemConfig,
    receiver: str,
    amplitude: float,
    counter: Optional[GlmSolveCounter] = None,
) -> ComplexEnvelope:
    """Physical launch field after the DAC filter."""
    if receiver in NFDM_RECEIVERS:
        q = nfdm_transmit(burst, cfg, amplitude, counter=counter)
    elif receiver in CONVENTIONAL_RECEIVERS:
        q = shape_pulses(burst, cfg, amplitude)
    else:
        raise UsageError(f"unknown receiver {receiver!r}")
    return ideal_lowpass(denormalize(q, cfg.scales), cfg.B_dacadc)


def receive(
    q_rx: ComplexEnvelope,
    cfg: SystemConfig,
    receiver: str,
    amplitude: float,
    counter: Optional[GlmSolveCounter] = None,
) -> DetectionResult:
    """ADC filter then detection; q_rx is the physical field at the fiber output."""
    q_rx = ideal_lowpass(q_rx, cfg.B_dacadc)
    if receiver in CONVENTIONAL_RECEIVERS:
        return conventional_receiver(q_rx, cfg, receiver, amplitude)

    # back onto the exact optical frame grid, free of T0 round-off
    q_norm = ComplexEnvelope(
        samples=normalize(q_rx, cfg.scales).samples,
        grid=cfg.frame_grid().mirrored(),
        units="normalized",
    )
    if receiver == "fnft":
        return fnft_receiver(q_norm, cfg, amplitude)
    if receiver == "df-bnft":
        return df_bnft_receiver(q_norm, cfg, amplitude, counter=counter)
    raise UsageError(f"unknown receiver {receiver!r}")


def simulate_frame(
    cfg: SystemConfig,
    receiver: str,
    amplitude: float,
    rng: np.random.Generator,
    counter: Optional[GlmSolveCounter] = None,
) -> tuple[SymbolBurst, DetectionResult]:
    """One burst through TX, DAC, fiber, ADC and the chosen receiver."""
    burst = draw_burst(cfg, rng)
    tx = transmit(burst, cfg, receiver, amplitude, counter=counter)
    rx = ssfm_propagate(tx, ChannelParams.from_config(cfg), rng=rng)
    return burst, receive(rx, cfg, receiver, amplitude, counter=counter)
