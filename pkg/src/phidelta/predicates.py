"""Decision procedures for the primary-type ideal classes, with witness extraction.

Every predicate quantifies over all pairs of ring elements, so the work is a
handful of boolean array operations over the cached multiplication table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .bitset import mask_to_bits
from .ideals import EMPTY, Ideal, IdealError, ReductionImage, enumerate_ideals
from .localize import MultSet, trivial_multset
from .maps import IDENTITY, PHI_EMPTY, PHI_ZERO, RADICAL, Expansion, PowerReduction, Reduction


class PredicateError(IdealError):
    """Base for violated standing hypotheses of a predicate."""


class NotProper(PredicateError):
    """The ideal is the whole ring."""


class MeetsS(PredicateError):
    """The ideal meets the multiplicative set."""


class PreconditionFailed(PredicateError):
    """The ideal pair does not satisfy AB <= I and AB not <= phi(I)."""


def image_mask(J: ReductionImage, n: int) -> np.ndarray:
    """Membership mask; the empty image contains nothing."""
    if J is EMPTY:
        return np.zeros(n, dtype=bool)
    return J.mask


@dataclass(frozen=True)
class Counterexample:
    """A pair (a, b) with ab in I - phi(I), sa not in I and sb not in delta(I)."""

    s: int
    a: int
    b: int
    ab: int
    ab_in_phi: bool
    sa: int
    sb: int

    def to_json(self) -> dict:
        return {
            "s": self.s, "a": self.a, "b": self.b,
            "ab": self.ab, "ab_in_I": True, "ab_in_phi": self.ab_in_phi,
            "sa": self.sa, "sa_in_I": False, "sb": self.sb, "sb_in_delta": False,
        }


@dataclass(frozen=True)
class TwinZero:
    a: int
    b: int

    def to_json(self) -> list[int]:
        return [self.a, self.b]


@dataclass
class WitnessReport:
    """All s in S validating the predicate, and a counterexample when there are none."""

    witnesses: tuple[int, ...]
    failures: dict[int, Counterexample] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return bool(self.witnesses)

    @property
    def counterexample(self) -> Optional[Counterexample]:
        if self.witnesses or not self.failures:
            return None
        return self.failures[min(self.failures)]

    def __contains__(self, s: int) -> bool:
        return s in self.witnesses

    def to_json(self) -> dict:
        cx = self.counterexample
        return {"witnesses": list(self.witnesses), "counterexample": None if cx is None else cx.to_json()}


def _check_standing(I: Ideal, S: MultSet) -> None:
    if not I.is_proper:
        raise NotProper(f"ideal {I!r} is not proper")
    if S.ring != I.ring:
        raise PredicateError("mult set and ideal live in different rings")
    if S.meets(I):
        raise MeetsS(f"ideal {I!r} meets S")


@lru_cache(maxsize=None)
def _bad_pairs(I: Ideal, phi_image: ReductionImage) -> np.ndarray:
    """Mask of pairs (a, b) with ab in I - phi(I)."""
    mul = I.ring.mul_table
    return I.mask[mul] & ~image_mask(phi_image, I.ring.order)[mul]


def condition_failures(I: Ideal, phi: Reduction, delta: Expansion, s: int) -> np.ndarray:
    """Mask of pairs (a, b) breaking the defining implication for ``s``."""
    ring = I.ring
    row = ring.mul_table[s]
    sa_ok = I.mask[row]
    sb_ok = delta(I).mask[row]
    return _bad_pairs(I, phi(I)) & ~sa_ok[:, None] & ~sb_ok[None, :]


@lru_cache(maxsize=None)
def witness_set(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet) -> frozenset[int]:
    """All s in S with: ab in I - phi(I) implies sa in I or sb in delta(I)."""
    _check_standing(I, S)
    ring = I.ring
    rows = ring.mul_table[list(S.members)]
    sa_ok = I.mask[rows]
    sb_ok = delta(I).mask[rows]
    bad = _bad_pairs(I, phi(I))
    # any bad pair for s: exists a with ~sa_ok and b with ~sb_ok and bad[a, b]
    reach = (bad[None, :, :] & ~sb_ok[:, None, :]).any(axis=2)
    failing = (reach & ~sa_ok).any(axis=1)
    return frozenset(int(s) for s, f in zip(S.members, failing) if not f)


def condition_holds(I: Ideal, phi: Reduction, delta: Expansion, s: int) -> bool:
    """The defining implication for one s, without the standing hypotheses on I."""
    return not condition_failures(I, phi, delta, s).any()


def first_failure(I: Ideal, phi: Reduction, delta: Expansion, s: int) -> Optional[Counterexample]:
    """Row-major first failing pair for ``s``, with its condition trace."""
    bad = condition_failures(I, phi, delta, s)
    if not bad.any():
        return None
    a, b = (int(x) for x in np.unravel_index(int(np.argmax(bad.ravel())), bad.shape))
    ring = I.ring
    ab = ring.mul(a, b)
    return Counterexample(s=int(s), a=a, b=b, ab=ab, ab_in_phi=ab in phi(I), sa=ring.mul(s, a), sb=ring.mul(s, b))


def is_phi_delta_S_primary(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet | None = None) -> WitnessReport:
    S = trivial_multset(I.ring) if S is None else S
    wit = witness_set(I, phi, delta, S)
    failures = {}
    for s in S.members:
        if s not in wit:
            failures[s] = first_failure(I, phi, delta, s)
    return WitnessReport(tuple(sorted(wit)), failures)


def is_delta_S_primary(I: Ideal, delta: Expansion, S: MultSet | None = None) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_EMPTY, delta, S)


def is_prime(I: Ideal) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_EMPTY, IDENTITY)


def is_primary(I: Ideal) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_EMPTY, RADICAL)


def is_weakly_prime(I: Ideal) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_ZERO, IDENTITY)


def is_weakly_primary(I: Ideal) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_ZERO, RADICAL)


def is_S_prime(I: Ideal, S: MultSet) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_EMPTY, IDENTITY, S)


def is_S_primary(I: Ideal, S: MultSet) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_EMPTY, RADICAL, S)


def is_weakly_S_prime(I: Ideal, S: MultSet) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_ZERO, IDENTITY, S)


def is_weakly_S_primary(I: Ideal, S: MultSet) -> WitnessReport:
    return is_phi_delta_S_primary(I, PHI_ZERO, RADICAL, S)


def is_almost_S_primary(I: Ideal, S: MultSet) -> WitnessReport:
    return is_phi_delta_S_primary(I, PowerReduction(2), RADICAL, S)


def _colon_matrix(J: ReductionImage, n: int, mul: np.ndarray) -> np.ndarray:
    # column a holds the mask of (J : a)
    return image_mask(J, n)[mul]


def char_colon_delta(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, s: int) -> bool:
    """For every a outside (delta(I):s): (I:a) <= (I:s) or (I:a) = (phi(I):a)."""
    _check_standing(I, S)
    ring = I.ring
    n, mul = ring.order, ring.mul_table
    phiI = phi(I)
    col_I = _colon_matrix(I, n, mul)
    col_phi = _colon_matrix(phiI, n, mul)
    I_s = col_I[:, s]
    domain = ~delta(I).mask[mul[s]]
    inside = ~(col_I & ~I_s[:, None]).any(axis=0)
    # (EMPTY : a) is EMPTY, never equal to an ideal
    equal = (col_I == col_phi).all(axis=0) if phiI is not EMPTY else np.zeros(n, dtype=bool)
    return bool((inside | equal)[domain].all())


def char_colon_I(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, s: int) -> bool:
    """For every a outside (I:s): (I:a) <= (delta(I):s) or (I:a) = (phi(I):a)."""
    _check_standing(I, S)
    ring = I.ring
    n, mul = ring.order, ring.mul_table
    phiI = phi(I)
    col_I = _colon_matrix(I, n, mul)
    col_phi = _colon_matrix(phiI, n, mul)
    dI_s = delta(I).mask[mul[:, s]]
    domain = ~I.mask[mul[s]]
    inside = ~(col_I & ~dI_s[:, None]).any(axis=0)
    equal = (col_I == col_phi).all(axis=0) if phiI is not EMPTY else np.zeros(n, dtype=bool)
    return bool((inside | equal)[domain].all())


def _pair_products(A: Ideal, B: Ideal) -> np.ndarray:
    return A.ring.mul_table[np.ix_(A.index, B.index)]


@lru_cache(maxsize=None)
def _product_sets(ring) -> tuple[tuple[Ideal, ...], tuple[tuple[int, ...], ...]]:
    """Bitsets of {ab : a in A, b in B} for every pair of ideals; AB <= J iff this set is."""
    ideals = enumerate_ideals(ring)
    mul = ring.mul_table
    table = []
    for A in ideals:
        rows = mul[A.index]
        table.append(tuple(mask_to_bits(np.isin(np.arange(ring.order), rows[:, B.index])) for B in ideals))
    return ideals, tuple(table)


def _image_bits(img: ReductionImage) -> int:
    return 0 if img is EMPTY else img.bits


def _qualifying_pairs(I: Ideal, phi: Reduction):
    """Index pairs (A, B) with AB <= I and AB not <= phi(I)."""
    ideals, table = _product_sets(I.ring)
    outside_I, outside_phi = ~I.bits, ~_image_bits(phi(I))
    for i, row in enumerate(table):
        for j, prods in enumerate(row):
            if not prods & outside_I and prods & outside_phi:
                yield ideals[i], ideals[j]


def char_ideal_pairs(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, s: int) -> bool:
    """For all ideals A, B: AB <= I and AB not <= phi(I) imply sA <= I or sB <= delta(I)."""
    _check_standing(I, S)
    ideals = enumerate_ideals(I.ring)
    row = I.ring.mul_table[s]
    in_I, in_dI = I.mask[row], delta(I).mask[row]
    # sA <= I and sB <= delta(I), keyed by ideal
    left = {A.bits: bool(in_I[A.index].all()) for A in ideals}
    right = {B.bits: bool(in_dI[B.index].all()) for B in ideals}
    for A, B in _qualifying_pairs(I, phi):
        if not left[A.bits] and not right[B.bits]:
            return False
    return True


def twin_zeros(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, s: int) -> list[TwinZero]:
    """All (a, b) with ab in phi(I), sa not in I, sb not in delta(I), row-major."""
    if S.meets(I):
        raise MeetsS(f"ideal {I!r} meets S")
    ring = I.ring
    phiI = phi(I)
    if phiI is EMPTY:
        return []
    mul = ring.mul_table
    row = mul[s]
    mask = phiI.mask[mul] & ~I.mask[row][:, None] & ~delta(I).mask[row][None, :]
    return [TwinZero(int(a), int(b)) for a, b in zip(*np.nonzero(mask))]


def twin_zero_mask(I: Ideal, phi: Reduction, delta: Expansion, s: int) -> np.ndarray:
    ring = I.ring
    mul = ring.mul_table
    row = mul[s]
    return image_mask(phi(I), ring.order)[mul] & ~I.mask[row][:, None] & ~delta(I).mask[row][None, :]


def is_free_twin_zero(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, s: int, A: Ideal, B: Ideal) -> bool:
    """No pair of A x B is a twin zero of I; requires AB <= I and AB not <= phi(I)."""
    prods = _pair_products(A, B)
    if not I.mask[prods].all():
        raise PreconditionFailed("AB is not contained in I")
    if image_mask(phi(I), I.ring.order)[prods].all():
        raise PreconditionFailed("AB is contained in phi(I)")
    if S.meets(I):
        raise MeetsS(f"ideal {I!r} meets S")
    mask = twin_zero_mask(I, phi, delta, s)
    return not mask[np.ix_(A.index, B.index)].any()


def is_free_twin_zero_global(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, s: int) -> bool:
    """Freeness with respect to every pair of ideals A, B with AB <= I and AB not <= phi(I)."""
    if S.meets(I):
        raise MeetsS(f"ideal {I!r} meets S")
    mask = twin_zero_mask(I, phi, delta, s)
    for A, B in _qualifying_pairs(I, phi):
        if mask[A.index][:, B.index].any():
            return False
    return True
