from __future__ import annotations

import logging
import time
from typing import Literal

from nfdmsim.channel import ChannelParams, dbp, edc
from nfdmsim.errors import UsageError
from nfdmsim.framing import ComplexEnvelope, SystemConfig, normalize
from nfdmsim.receivers.detection import DetectionResult, matched_filter_decide

logger = logging.getLogger(__name__)

ConventionalMode = Literal["edc", "dbp"]


def conventional_receiver(
    q_rx: ComplexEnvelope,
    cfg: SystemConfig,
    mode: ConventionalMode,
    amplitude: float,
) -> DetectionResult:
    """Linear-domain reference receiver for a QAM burst launched without any NFT processing."""
    t_start = time.time()
    q_rx.require("physical")
    params = ChannelParams.from_config(cfg)
    if mode == "edc":
        compensated = edc(q_rx, params)
    elif mode == "dbp":
        compensated = dbp(q_rx, params)
    else:
        raise UsageError(f"unknown conventional receiver {mode!r}")

    result = matched_filter_decide(normalize(compensated, cfg.scales), cfg, amplitude, correct_phase=True)
    elapsed = time.time() - t_start
    logger.debug(f"rx.{mode}.done", extra={"Nb": cfg.Nb, "duration_ms": int(elapsed * 1000)})
    return DetectionResult(decided=result.decided, metric=result.metric, elapsed=elapsed)
