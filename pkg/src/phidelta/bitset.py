"""Integer bitsets over element indices and their numpy mask views."""
from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np


def make_bits(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << int(idx)
    return value


def iter_bits(value: int) -> Iterator[int]:
    index = 0
    while value:
        if value & 1:
            yield index
        value >>= 1
        index += 1


def count_bits(value: int) -> int:
    return value.bit_count()


def bits_to_mask(value: int, n: int) -> np.ndarray:
    nbytes = max(1, (n + 7) // 8)
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def mask_to_bits(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def full_bits(n: int) -> int:
    return (1 << n) - 1


def close_ideal_mask(add: np.ndarray, mul: np.ndarray, seeds: Iterable[int]) -> np.ndarray:
    """Smallest subset containing 0 and ``seeds`` closed under + and R-multiplication.

    Iterates the two closure steps to a fixpoint. Negation needs no separate
    step: in a finite additive group, -x is a repeated sum of x.
    """
    n = add.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    for g in seeds:
        mask[int(g)] = True
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[mul[:, idx].ravel()] = True
        idx = np.flatnonzero(grown)
        grown[add[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, mask):
            return mask
        mask = grown
