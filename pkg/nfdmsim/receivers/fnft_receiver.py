from __future__ import annotations

import logging
import time

from nfdmsim.framing import ComplexEnvelope, SystemConfig
from nfdmsim.nft import NftGrid, fnft_continuous, nis_decode
from nfdmsim.receivers.detection import DetectionResult, matched_filter_decide

logger = logging.getLogger(__name__)


def fnft_receiver(q_rx: ComplexEnvelope, cfg: SystemConfig, amplitude: float) -> DetectionResult:
    """
    Conventional NIS detection: FNFT of the received frame, inverse NIS map,
    matched filter and symbol-by-symbol decisions. The channel phase was
    removed at the transmitter by precompensation.
    """
    t_start = time.time()
    q_rx.require("normalized")
    spec = fnft_continuous(q_rx, NftGrid.for_time_grid(q_rx.grid), oversampling=cfg.fnft_oversampling)
    s_hat = nis_decode(spec, cfg.frame_grid())
    result = matched_filter_decide(s_hat, cfg, amplitude)
    elapsed = time.time() - t_start
    logger.debug("rx.fnft.done", extra={"Nb": cfg.Nb, "duration_ms": int(elapsed * 1000)})
    return DetectionResult(decided=result.decided, metric=result.metric, elapsed=elapsed)
