from __future__ import annotations

import logging
import os
from typing import Any, Optional

import numpy as np
import pandas as pd

from nfdmsim.errors import InvalidInputError
from nfdmsim.framing import SymbolBurst, SystemConfig, launch_amplitude, qam_alphabet
from nfdmsim.nft import GlmSolveCounter, nfdm_transmit

logger = logging.getLogger(__name__)

CAUSALITY_COLUMNS = ["time", "abs_q8", "abs_q6"]


def demo_causality(
    cfg: SystemConfig,
    out_dir: Optional[str] = None,
    n_long: int = 8,
    n_short: int = 6,
    margin: float = 0.5,
    seed: Optional[int] = None,
) -> dict[str, Any]:
    """
    BNFT of an n_long-symbol burst and of its first n_short symbols, without
    precompensation. Past -t_short the two waveforms coincide; before it the
    extra symbols leave a tail. Deviations are relative to max|q_long|, the
    "after" figure is taken from -t_short + margin on to stay clear of the
    pulse overlap at the symbol boundary.
    """
    if not 0 < n_short <= n_long:
        raise InvalidInputError(f"need 0 < n_short <= n_long, got {n_short}, {n_long}")
    cfg = cfg.replace(Nb=n_long)
    alphabet = qam_alphabet(cfg.qam_order)
    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    indices = rng.integers(0, alphabet.order, size=n_long)
    amplitude = launch_amplitude(cfg)

    counter = GlmSolveCounter()
    q_long = nfdm_transmit(SymbolBurst(indices, alphabet), cfg, amplitude, L_norm=0.0, counter=counter)
    q_short = nfdm_transmit(SymbolBurst(indices[:n_short], alphabet), cfg, amplitude, L_norm=0.0, counter=counter)

    t = q_long.times
    a_long, a_short = np.abs(q_long.samples), np.abs(q_short.samples)
    diff = np.abs(q_long.samples - q_short.samples)
    scale = float(a_long.max())
    t_short = n_short - 0.5
    after = t > -t_short + margin
    before = t < -t_short

    summary: dict[str, Any] = {
        "deviation_after": float(diff[after].max() / scale) if after.any() else 0.0,
        "deviation_before": float(diff[before].max() / scale) if before.any() else 0.0,
        "glm_solves": counter.count,
        "csv": None,
    }
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "causality.csv")
        pd.DataFrame({"time": t, "abs_q8": a_long, "abs_q6": a_short}, columns=CAUSALITY_COLUMNS).to_csv(path, index=False)
        summary["csv"] = path

    logger.info("causality.done", extra={k: v for k, v in summary.items() if k != "csv"})
    return summary
