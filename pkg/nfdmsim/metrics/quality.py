from __future__ import annotations

from typing import Union

import numpy as np
from scipy.special import erfcinv

from nfdmsim.errors import InvalidInputError, UnmeasurableError
from nfdmsim.framing import QamAlphabet, SymbolBurst
from nfdmsim.receivers import DetectionResult

SymbolsLike = Union[SymbolBurst, DetectionResult, np.ndarray]


def fold_error_rate(Pb: float) -> float:
    """Fold a bit error rate onto [0, 0.5]: min(Pb, 1 - Pb)."""
    if not 0.0 <= Pb <= 1.0:
        raise InvalidInputError(f"bit error rate must lie in [0, 1], got {Pb}")
    return min(Pb, 1.0 - Pb)


def qfactor_db2(Pb: float) -> float:
    """Q^2 in dB, 20 log10(sqrt(2) erfcinv(2 Pb)), defined on 0 < Pb < 0.5."""
    if not 0.0 < Pb < 0.5:
        raise UnmeasurableError(f"bit error probability {Pb} is outside (0, 0.5)")
    return float(20.0 * np.log10(np.sqrt(2.0) * erfcinv(2.0 * Pb)))


def rate_efficiency(Nb: int, Ng: int) -> float:
    if Nb < 0 or Ng < 0:
        raise InvalidInputError(f"symbol counts must be non-negative, got Nb={Nb}, Ng={Ng}")
    if Nb + Ng == 0:
        return 0.0
    return Nb / (Ng + Nb)


def _indices(x: SymbolsLike) -> np.ndarray:
    if isinstance(x, SymbolBurst):
        return np.asarray(x.indices)
    if isinstance(x, DetectionResult):
        return np.asarray(x.decided)
    return np.asarray(x, dtype=np.int64)


def count_bit_errors(tx: SymbolsLike, rx: SymbolsLike, alphabet: QamAlphabet) -> tuple[int, int]:
    """Gray-demap both symbol sequences and count differing bits: (errors, bits)."""
    a, b = _indices(tx), _indices(rx)
    if a.shape != b.shape:
        raise InvalidInputError(f"symbol sequences differ in length: {a.shape} vs {b.shape}")
    diff = alphabet.bit_map[a] != alphabet.bit_map[b]
    return int(diff.sum()), int(a.size * alphabet.bits_per_symbol)
