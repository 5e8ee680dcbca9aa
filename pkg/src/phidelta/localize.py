"""Multiplicative sets, localization S^-1 R as a finite ring, saturation, and localized maps."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable

import numpy as np

from .bitset import bits_to_mask, iter_bits, make_bits, mask_to_bits
from .ideals import EMPTY, Ideal, IdealError, ReductionImage, enumerate_ideals, generate
from .maps import Expansion, Reduction, TableExpansion, TableReduction
from .rings import Ring, RingError, TableRing, units


class MultSetError(ValueError):
    """A multiplicative-set literal is malformed or not multiplicatively closed."""


class IllDefined(ValueError):
    """The localized map formula assigns two values to one localized ideal."""

    def __init__(self, first: Ideal, second: Ideal, which: str):
        self.first, self.second, self.which = first, second, which
        super().__init__(
            f"{which}_S is ill-defined: S^-1{first!r} = S^-1{second!r} "
            f"but their {which}-images extend differently"
        )


@dataclass(frozen=True)
class MultSet:
    """A multiplicatively closed subset containing 1, stored as a bitset."""

    ring: Ring
    bits: int
    gens: tuple[int, ...] | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultSet) and other.ring == self.ring and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((self.ring, self.bits))

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    @cached_property
    def mask(self) -> np.ndarray:
        return bits_to_mask(self.bits, self.ring.order)

    def __contains__(self, x: int) -> bool:
        return bool((self.bits >> int(x)) & 1)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: MultSet) -> bool:
        return self.bits & ~other.bits == 0

    def meets(self, I: ReductionImage) -> bool:
        return bool(self.bits & I.bits)

    @property
    def contains_zero(self) -> bool:
        return bool(self.bits & 1)

    def to_json(self) -> dict:
        if self.gens is not None:
            return {"gens": list(self.gens)}
        return {"members": list(self.members)}

    def __repr__(self) -> str:
        return "{" + ",".join(self.ring.label(x) for x in self.members) + "}"


def mult_closure(ring: Ring, gens: Iterable[int] = ()) -> MultSet:
    """Smallest multiplicatively closed set containing ``gens`` and 1."""
    gens = tuple(int(g) for g in gens)
    for g in gens:
        if not 0 <= g < ring.order:
            raise MultSetError(f"{g} is not an element of {ring.name}")
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.one] = True
    mask[list(gens)] = True
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[ring.mul_table[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, mask):
            return MultSet(ring, mask_to_bits(mask), gens)
        mask = grown


def mult_from_members(ring: Ring, members: Iterable[int]) -> MultSet:
    members = sorted({int(x) for x in members})
    for x in members:
        if not 0 <= x < ring.order:
            raise MultSetError(f"{x} is not an element of {ring.name}")
    if ring.one not in members:
        raise MultSetError("a multiplicative set must contain 1")
    S = MultSet(ring, make_bits(members))
    idx = np.array(members)
    if not S.mask[ring.mul_table[np.ix_(idx, idx)]].all():
        raise MultSetError(f"{members} is not multiplicatively closed")
    return S


def multset_from_json(obj: Any, ring: Ring) -> MultSet:
    """Parse ``{"gens": [...]}``, ``{"members": [...]}`` or either wrapped in ``{"mult_set": ...}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, dict) and set(obj) == {"mult_set"}:
        obj = obj["mult_set"]
    if not isinstance(obj, dict) or len(obj) != 1 or not set(obj) <= {"gens", "members"}:
        raise MultSetError(f'mult set literal must be {{"gens": [...]}} or {{"members": [...]}}, got {obj!r}')
    (key, values), = obj.items()
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise MultSetError(f"mult set {key} must be a list of element indices")
    if key == "gens":
        return mult_closure(ring, values)
    return mult_from_members(ring, values)


def trivial_multset(ring: Ring) -> MultSet:
    return MultSet(ring, 1 << ring.one, ())


def cyclic_multsets(ring: Ring, generators: Iterable[int] | None = None,
                    allow_zero: bool = False) -> tuple[MultSet, ...]:
    """Distinct closures of single elements (all elements by default), in generator order."""
    seen: dict[int, MultSet] = {}
    for g in (range(ring.order) if generators is None else generators):
        S = mult_closure(ring, (g,))
        if S.contains_zero and not allow_zero:
            continue
        seen.setdefault(S.bits, S)
    return tuple(seen.values())


def unit_multsets(ring: Ring) -> tuple[MultSet, ...]:
    return cyclic_multsets(ring, sorted(units(ring)))


def enumerate_multsets(ring: Ring, max_order: int = 16) -> tuple[MultSet, ...]:
    """Every multiplicatively closed subset containing 1 (exhaustive, so small rings only)."""
    if ring.order > max_order:
        raise MultSetError(f"refusing to enumerate 2^{ring.order - 1} subsets")
    others = [x for x in range(ring.order) if x != ring.one]
    mul = ring.mul_table
    found = []
    for code in range(1 << len(others)):
        members = [ring.one] + [x for k, x in enumerate(others) if code >> k & 1]
        idx = np.array(members)
        bits = make_bits(members)
        mask = bits_to_mask(bits, ring.order)
        if mask[mul[np.ix_(idx, idx)]].all():
            found.append(MultSet(ring, bits))
    return tuple(sorted(found, key=lambda S: S.bits))


@lru_cache(maxsize=None)
def annihilated_by(S: MultSet) -> np.ndarray:
    """Mask of {r : t r = 0 for some t in S}, the kernel of r -> r/1."""
    ring = S.ring
    return (ring.mul_table[list(S.members)] == 0).any(axis=0)


class LocalizedRing:
    """S^-1 R built from pair classes (r, s); classes are indexed by their least pair r*n + s."""

    def __init__(self, source: Ring, S: MultSet):
        if S.ring != source:
            raise MultSetError("mult set lives in a different ring")
        if S.contains_zero:
            raise RingError("localizing at a set containing 0 gives the zero ring")
        self.source = source
        self.S = S
        n = source.order
        add, mul = source.add_table, source.mul_table
        dens = np.array(S.members, dtype=np.intp)
        rs = np.repeat(np.arange(n, dtype=np.intp), len(dens))
        ss = np.tile(dens, n)
        # pairs are listed in increasing r*n + s order already
        null = annihilated_by(S)
        # cross[i, j] = r_i s_j - r_j s_i
        cross = add[mul[np.ix_(rs, ss)], source.neg_table[mul[np.ix_(ss, rs)]]]
        equiv = null[cross]
        klass = np.full(len(rs), -1, dtype=np.intp)
        reps: list[int] = []
        for i in range(len(rs)):
            if klass[i] < 0:
                klass[equiv[i] & (klass < 0)] = len(reps)
                reps.append(i)
        self._pair_class = klass
        self._dens = dens
        self._dpos = {int(d): k for k, d in enumerate(dens)}
        m = len(reps)
        rep_r = rs[reps]
        rep_s = ss[reps]
        num_add = add[mul[np.ix_(rep_r, rep_s)], mul[np.ix_(rep_s, rep_r)]]
        den = mul[np.ix_(rep_s, rep_s)]
        num_mul = mul[np.ix_(rep_r, rep_r)]
        add_t = self._classes(num_add, den)
        mul_t = self._classes(num_mul, den)
        self.rep_pairs = [(int(r), int(s)) for r, s in zip(rep_r, rep_s)]
        labels = [f"{source.label(r)}/{source.label(s)}" for r, s in self.rep_pairs]
        desc = ("localization", source.desc, S.bits)
        self.ring_name = f"S^-1({source.name})"
        self.ring = TableRing(desc, add_t, mul_t, self.pair_class(source.one, source.one), labels, self.ring_name)
        self.to_local_table = np.array([self.pair_class(r, source.one) for r in range(n)], dtype=np.intp)
        if m < 2:
            raise RingError("localization collapsed to the zero ring")

    def _classes(self, nums: np.ndarray, dens: np.ndarray) -> np.ndarray:
        pos = np.vectorize(self._dpos.__getitem__, otypes=[np.intp])(dens)
        return self._pair_class[nums * len(self._dens) + pos]

    def pair_class(self, r: int, s: int) -> int:
        return int(self._pair_class[int(r) * len(self._dens) + self._dpos[int(s)]])

    def to_local(self, r: int) -> int:
        return int(self.to_local_table[r])

    def __repr__(self) -> str:
        return f"<LocalizedRing {self.ring_name} order={self.ring.order}>"


@lru_cache(maxsize=None)
def localize(ring: Ring, S: MultSet) -> LocalizedRing:
    return LocalizedRing(ring, S)


def extend_ideal(L: LocalizedRing, I: ReductionImage) -> ReductionImage:
    """S^-1 I: the ideal generated by the images r/1 of I."""
    if I is EMPTY:
        return EMPTY
    if I.ring != L.source:
        raise IdealError("ideal does not live in the localized ring's source")
    return generate(L.ring, sorted({int(x) for x in L.to_local_table[I.index]}))


def contract_ideal(L: LocalizedRing, K: Ideal) -> Ideal:
    """Preimage of a localized ideal under r -> r/1."""
    if K.ring != L.ring:
        raise IdealError("ideal does not live in the localized ring")
    return Ideal(L.source, mask_to_bits(K.mask[L.to_local_table]))


def saturation(ring: Ring, S: MultSet) -> MultSet:
    """S* = {r : r/1 is a unit of S^-1 R}; all of R when 0 is in S (the zero ring)."""
    if S.contains_zero:
        return MultSet(ring, (1 << ring.order) - 1)
    L = localize(ring, S)
    U = units(L.ring)
    return MultSet(ring, make_bits(r for r in range(ring.order) if L.to_local(r) in U))


def localized_maps(L: LocalizedRing, delta: Expansion, phi: Reduction) -> tuple[Expansion, Reduction]:
    """delta_S(S^-1 J) = S^-1 delta(J) and phi_S(S^-1 J) = S^-1 phi(J), checked for well-definedness."""
    d_table: dict[int, int] = {}
    p_table: dict[int, int | None] = {}
    d_src: dict[int, Ideal] = {}
    p_src: dict[int, Ideal] = {}
    for J in enumerate_ideals(L.source):
        key = extend_ideal(L, J).bits
        d_val = extend_ideal(L, delta(J)).bits
        p_img = extend_ideal(L, phi(J))
        p_val = None if p_img is EMPTY else p_img.bits
        if key in d_table and d_table[key] != d_val:
            raise IllDefined(d_src[key], J, "delta")
        if key in p_table and p_table[key] != p_val:
            raise IllDefined(p_src[key], J, "phi")
        d_table.setdefault(key, d_val)
        p_table.setdefault(key, p_val)
        d_src.setdefault(key, J)
        p_src.setdefault(key, J)
    return (
        TableExpansion(L.ring, d_table, f"{delta}_S"),
        TableReduction(L.ring, p_table, f"{phi}_S"),
    )
