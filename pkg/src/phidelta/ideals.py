"""Ideals of a finite ring as bitsets, with the arithmetic the predicates consume."""
from __future__ import annotations

import json
from functools import cached_property, lru_cache
from typing import Any, Iterable, Union

import numpy as np

from .bitset import bits_to_mask, close_ideal_mask, count_bits, full_bits, iter_bits, make_bits, mask_to_bits
from .rings import Ring


class IdealError(ValueError):
    """An ideal literal is malformed or not closed under the ideal axioms."""


class RingMismatch(IdealError):
    """Operands live in different rings."""


class _Empty:
    """The empty image of the empty reduction: contains nothing, below everything."""

    _instance = None
    bits = 0
    gens = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __contains__(self, x: int) -> bool:
        return False

    def __iter__(self):
        return iter(())

    def __len__(self) -> int:
        return 0

    def __le__(self, other: Any) -> bool:
        return True

    def __lt__(self, other: Any) -> bool:
        return other is not self

    def __ge__(self, other: Any) -> bool:
        return other.bits == 0

    def __repr__(self) -> str:
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())

    is_empty = True

    def to_json(self) -> None:
        return None


EMPTY = _Empty()


class Ideal:
    """An ideal of ``ring`` stored as an integer bitset over element indices."""

    is_empty = False

    def __init__(self, ring: Ring, bits: int, gens: Iterable[int] | None = None):
        self.ring = ring
        self.bits = bits
        self.gens = tuple(gens) if gens is not None else None

    @cached_property
    def mask(self) -> np.ndarray:
        return bits_to_mask(self.bits, self.ring.order)

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    @cached_property
    def index(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool((self.bits >> int(x)) & 1)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return count_bits(self.bits)

    def _check(self, other: Any) -> None:
        if isinstance(other, Ideal) and other.ring != self.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __le__(self, other: Any) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Any) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: Any) -> bool:
        self._check(other)
        return other.bits & ~self.bits == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ideal) and other.ring == self.ring and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((self.ring, self.bits))

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __and__(self, other: Ideal) -> Ideal:
        return ideal_intersect(self, other)

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self

    @property
    def is_zero(self) -> bool:
        return self.bits == 1

    @property
    def is_whole(self) -> bool:
        return self.bits == full_bits(self.ring.order)

    def to_json(self) -> dict:
        if self.gens is not None:
            return {"gens": list(self.gens)}
        return {"members": list(self.members)}

    def __repr__(self) -> str:
        if self.gens is not None:
            inner = ",".join(self.ring.label(g) for g in self.gens)
            return f"({inner})"
        return "{" + ",".join(self.ring.label(x) for x in self.members) + "}"


ReductionImage = Union[Ideal, _Empty]


def _same_ring(*ideals: Ideal) -> Ring:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring != ring:
            raise RingMismatch(f"{ring.name} vs {other.ring.name}")
    return ring


def _from_mask(ring: Ring, mask: np.ndarray, gens=None) -> Ideal:
    return Ideal(ring, mask_to_bits(mask), gens)


def generate(ring: Ring, gens: Iterable[int] = ()) -> Ideal:
    """Smallest ideal containing ``gens``."""
    gens = tuple(int(g) for g in gens)
    for g in gens:
        if not 0 <= g < ring.order:
            raise IdealError(f"generator {g} is not an element of {ring.name}")
    return _from_mask(ring, close_ideal_mask(ring.add_table, ring.mul_table, gens), gens)


def principal(ring: Ring, x: int) -> Ideal:
    return generate(ring, (x,))


def zero_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, 1, ())


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, full_bits(ring.order), (ring.one,))


def is_ideal_mask(ring: Ring, mask: np.ndarray) -> bool:
    idx = np.flatnonzero(mask)
    if not mask[0]:
        return False
    if not mask[ring.add_table[np.ix_(idx, idx)]].all():
        return False
    if not mask[ring.neg_table[idx]].all():
        return False
    return bool(mask[ring.mul_table[:, idx]].all())


def from_members(ring: Ring, members: Iterable[int]) -> Ideal:
    """Validate an explicit member list as an ideal."""
    members = [int(x) for x in members]
    for x in members:
        if not 0 <= x < ring.order:
            raise IdealError(f"{x} is not an element of {ring.name}")
    bits = make_bits(members)
    if not is_ideal_mask(ring, bits_to_mask(bits, ring.order)):
        raise IdealError(f"{sorted(set(members))} is not an ideal of {ring.name}")
    return Ideal(ring, bits)


def ideal_from_json(obj: Any, ring: Ring) -> Ideal:
    """Parse ``{"gens": [...]}`` or ``{"members": [...]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or len(obj) != 1 or not set(obj) <= {"gens", "members"}:
        raise IdealError(f'ideal literal must be {{"gens": [...]}} or {{"members": [...]}}, got {obj!r}')
    (key, values), = obj.items()
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise IdealError(f"ideal {key} must be a list of element indices")
    if key == "gens":
        return generate(ring, values)
    return from_members(ring, values)


@lru_cache(maxsize=None)
def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.add_table[np.ix_(I.index, J.index)].ravel()] = True
    gens = I.gens + J.gens if I.gens is not None and J.gens is not None else None
    return _from_mask(ring, mask, gens)


@lru_cache(maxsize=None)
def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    seeds = np.unique(ring.mul_table[np.ix_(I.index, J.index)])
    return _from_mask(ring, close_ideal_mask(ring.add_table, ring.mul_table, seeds))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, I.bits & J.bits)


@lru_cache(maxsize=None)
def ideal_power(I: Ideal, k: int) -> Ideal:
    if k < 1:
        raise ValueError("ideal powers start at 1")
    result = I
    for _ in range(k - 1):
        result = ideal_product(result, I)
    return result


def scale(s: int, I: ReductionImage, ring: Ring | None = None) -> ReductionImage:
    """The set s*I (an ideal when I is)."""
    if I is EMPTY:
        return EMPTY
    ring = I.ring
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.mul_table[s, I.index]] = True
    return _from_mask(ring, mask)


@lru_cache(maxsize=None)
def _colon(I: Ideal, x: int) -> Ideal:
    return _from_mask(I.ring, I.mask[I.ring.mul_table[:, x]])


def colon(I: ReductionImage, x: int) -> ReductionImage:
    """(I : x) = {r : r x in I}; the colon of the empty image is empty."""
    if I is EMPTY:
        return EMPTY
    return _colon(I, int(x))


@lru_cache(maxsize=None)
def _colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return _from_mask(ring, I.mask[ring.mul_table[:, J.index]].all(axis=1))


def colon_ideal(I: ReductionImage, J: Ideal) -> ReductionImage:
    """(I : J) = {r : r J subset of I}."""
    if I is EMPTY:
        return EMPTY
    return _colon_ideal(I, J)


@lru_cache(maxsize=None)
def _radical(I: Ideal) -> Ideal:
    ring = I.ring
    ar = np.arange(ring.order)
    powers = ar.copy()
    hit = I.mask[powers]
    # element powers cycle within `order` steps
    for _ in range(ring.order):
        powers = ring.mul_table[powers, ar]
        hit |= I.mask[powers]
    return _from_mask(ring, hit)


def radical(I: ReductionImage) -> ReductionImage:
    """{x : x^k in I for some k <= order}."""
    if I is EMPTY:
        return EMPTY
    return _radical(I)


@lru_cache(maxsize=None)
def enumerate_ideals(ring: Ring) -> tuple[Ideal, ...]:
    """All ideals, sorted by bitset value; join-closure of the principal ideals."""
    mul = ring.mul_table
    found: dict[int, tuple[int, ...]] = {}
    for x in range(ring.order):
        mask = np.zeros(ring.order, dtype=bool)
        mask[mul[x]] = True
        bits = mask_to_bits(mask)
        found.setdefault(bits, (x,) if x else ())
    frontier = list(found)
    while frontier:
        fresh = []
        current = list(found)
        for a in frontier:
            for b in current:
                s = ideal_sum(Ideal(ring, a, found[a]), Ideal(ring, b, found[b]))
                if s.bits not in found:
                    found[s.bits] = s.gens
                    fresh.append(s.bits)
        frontier = fresh
    return tuple(Ideal(ring, bits, found[bits]) for bits in sorted(found))


def proper_ideals(ring: Ring) -> tuple[Ideal, ...]:
    return tuple(I for I in enumerate_ideals(ring) if I.is_proper)


def nilradical(ring: Ring) -> Ideal:
    return radical(zero_ideal(ring))


def maximal_ideals(ring: Ring) -> tuple[Ideal, ...]:
    props = proper_ideals(ring)
    return tuple(M for M in props if not any(M < N for N in props))


def canonical(I: Ideal) -> Ideal:
    """The lattice copy of ``I`` (carries minimal generators when known)."""
    for J in enumerate_ideals(I.ring):
        if J.bits == I.bits:
            return J
    raise IdealError(f"{I!r} is not an ideal of {I.ring.name}")


def split_ideal(I: Ideal) -> tuple[Ideal, Ideal]:
    """Factor an ideal of a product ring as I1 x I2 (every ideal of R1 x R2 has this shape)."""
    ring = I.ring
    left, right = ring.left, ring.right
    m = right.order
    first = _from_mask(left, I.mask[0::m][: left.order].copy())
    second = _from_mask(right, I.mask[:m].copy())
    return first, second


def join_ideals(ring: Ring, first: Ideal, second: Ideal) -> Ideal:
    """The product ideal first x second inside ``ring`` = left x right."""
    if first.ring != ring.left or second.ring != ring.right:
        raise RingMismatch(f"factors do not match {ring.name}")
    return _from_mask(ring, np.logical_and.outer(first.mask, second.mask).ravel())
