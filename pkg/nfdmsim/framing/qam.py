from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from nfdmsim.errors import InvalidInputError


@dataclass(frozen=True)
class QamAlphabet:
    """
    Square M-QAM with unit mean energy and per-quadrature reflected Gray labels.
    Point i carries label i: the high log2(M)/2 bits select the in-phase level,
    the low bits the quadrature level.
    """

    order: int
    points: np.ndarray
    bit_map: np.ndarray  # (M, log2 M) uint8

    @property
    def bits_per_symbol(self) -> int:
        return int(np.log2(self.order))

    def nearest(self, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Minimum-distance decision; ties go to the lowest index."""
        values = np.asarray(values, dtype=np.complex128)
        dist = np.abs(values[:, None] - self.points[None, :]) ** 2
        idx = np.argmin(dist, axis=1)
        return idx, dist[np.arange(values.shape[0]), idx]

    def neighbor_pairs(self) -> list[tuple[int, int]]:
        d = np.abs(self.points[:, None] - self.points[None, :])
        dmin = np.min(d[d > 0])
        i, j = np.nonzero(np.isclose(d, dmin, rtol=1e-9))
        return [(int(a), int(b)) for a, b in zip(i, j) if a < b]


def _gray(n: np.ndarray) -> np.ndarray:
    return n ^ (n >> 1)


@lru_cache(maxsize=8)
def qam_alphabet(order: int = 16) -> QamAlphabet:
    k = int(round(np.log2(order))) if order > 0 else 0
    if order < 4 or 2**k != order or k % 2 != 0:
        raise InvalidInputError(f"QAM order must be a power of 4, got {order}")

    side = int(np.sqrt(order))
    half = k // 2
    levels = 2.0 * np.arange(side) - (side - 1)
    # level index l is labelled gray(l)
    level_of_label = np.empty(side, dtype=int)
    level_of_label[_gray(np.arange(side))] = np.arange(side)

    labels = np.arange(order)
    i_part = level_of_label[labels >> half]
    q_part = level_of_label[labels & (side - 1)]
    points = levels[i_part] + 1j * levels[q_part]
    points = points / np.sqrt(2.0 * (order - 1) / 3.0)
    points.setflags(write=False)

    bit_map = ((labels[:, None] >> np.arange(k - 1, -1, -1)[None, :]) & 1).astype(np.uint8)
    bit_map.setflags(write=False)
    return QamAlphabet(order=order, points=points, bit_map=bit_map)


@dataclass(frozen=True)
class SymbolBurst:
    indices: np.ndarray
    alphabet: QamAlphabet

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        if idx.ndim != 1 or (idx.size and (idx.min() < 0 or idx.max() >= self.alphabet.order)):
            raise InvalidInputError("symbol indices must lie in [0, M)")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def symbols(self) -> np.ndarray:
        return self.alphabet.points[self.indices]

    def __len__(self) -> int:
        return int(self.indices.shape[0])

    def bits(self) -> np.ndarray:
        return self.alphabet.bit_map[self.indices].reshape(-1)


def map_bits_to_burst(bits: np.ndarray, alphabet: QamAlphabet) -> SymbolBurst:
    bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
    k = alphabet.bits_per_symbol
    if bits.size % k != 0:
        raise InvalidInputError(f"bit count {bits.size} is not a multiple of {k}")
    if np.any(bits > 1):
        raise InvalidInputError("bits must be 0 or 1")
    words = bits.reshape(-1, k).astype(np.int64)
    labels = words @ (1 << np.arange(k - 1, -1, -1))
    return SymbolBurst(indices=labels, alphabet=alphabet)


def demap_burst(burst: SymbolBurst) -> np.ndarray:
    return burst.bits()
