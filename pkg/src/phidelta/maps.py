"""Expansion functions (delta) and reduction functions (phi) on ideal lattices.

Expansions satisfy ``I <= delta(I)`` and are monotone. Reductions satisfy
``phi(I) <= I`` and are monotone, and may return :data:`EMPTY`, which sits
below every ideal.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .ideals import (
    EMPTY,
    Ideal,
    IdealError,
    ReductionImage,
    RingMismatch,
    colon_ideal,
    enumerate_ideals,
    ideal_from_json,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    join_ideals,
    radical,
    split_ideal,
    zero_ideal,
)
from .rings import ProductRing, Ring


class MapError(ValueError):
    """A map literal is malformed or its parameters do not fit the ring."""


def _param_json(J: Ideal) -> dict:
    return J.to_json()


class Expansion:
    """Base class for expansion functions; call it on an ideal."""

    def __call__(self, I: Ideal) -> Ideal:
        raise NotImplementedError

    def to_json(self) -> Any:
        raise NotImplementedError

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass(frozen=True)
class IdentityExpansion(Expansion):
    def __call__(self, I: Ideal) -> Ideal:
        return I

    def to_json(self):
        return "identity"


@dataclass(frozen=True)
class RadicalExpansion(Expansion):
    def __call__(self, I: Ideal) -> Ideal:
        return radical(I)

    def to_json(self):
        return "radical"


@dataclass(frozen=True)
class PlusExpansion(Expansion):
    """I -> I + J for a fixed proper ideal J."""

    J: Ideal

    def __post_init__(self):
        if not self.J.is_proper:
            raise MapError("plus(J) needs a proper ideal J")

    def __call__(self, I: Ideal) -> Ideal:
        if I.ring != self.J.ring:
            raise RingMismatch(f"plus parameter lives in {self.J.ring.name}, ideal in {I.ring.name}")
        return ideal_sum(I, self.J)

    def to_json(self):
        return {"plus": _param_json(self.J)}


@dataclass(frozen=True)
class ColonExpansion(Expansion):
    """I -> (I : J) for a fixed proper ideal J."""

    J: Ideal

    def __post_init__(self):
        if not self.J.is_proper:
            raise MapError("colon_by(J) needs a proper ideal J")

    def __call__(self, I: Ideal) -> Ideal:
        if I.ring != self.J.ring:
            raise RingMismatch(f"colon parameter lives in {self.J.ring.name}, ideal in {I.ring.name}")
        return colon_ideal(I, self.J)

    def to_json(self):
        return {"colon_by": _param_json(self.J)}


@dataclass(frozen=True)
class SumExpansion(Expansion):
    first: Expansion
    second: Expansion

    def __call__(self, I: Ideal) -> Ideal:
        return ideal_sum(self.first(I), self.second(I))

    def to_json(self):
        return {"sum": [self.first.to_json(), self.second.to_json()]}


@dataclass(frozen=True)
class MeetExpansion(Expansion):
    parts: tuple[Expansion, ...]

    def __post_init__(self):
        if not self.parts:
            raise MapError("meet needs at least one expansion")

    def __call__(self, I: Ideal) -> Ideal:
        result = self.parts[0](I)
        for part in self.parts[1:]:
            result = ideal_intersect(result, part(I))
        return result

    def to_json(self):
        return {"meet": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class ComposeExpansion(Expansion):
    """I -> outer(inner(I))."""

    outer: Expansion
    inner: Expansion

    def __call__(self, I: Ideal) -> Ideal:
        return self.outer(self.inner(I))

    def to_json(self):
        return {"compose": [self.outer.to_json(), self.inner.to_json()]}


@dataclass(frozen=True, eq=False)
class TableExpansion(Expansion):
    """An expansion given pointwise by a bitset table over one ring's ideals."""

    ring: Ring
    table: Mapping[int, int] = field(repr=False)
    label: str = "table"

    def __call__(self, I: Ideal) -> Ideal:
        if I.ring != self.ring:
            raise RingMismatch(f"table map lives in {self.ring.name}, ideal in {I.ring.name}")
        try:
            return Ideal(self.ring, self.table[I.bits])
        except KeyError:
            raise MapError(f"table map has no entry for {I!r}") from None

    def to_json(self):
        return {"table": [[list(Ideal(self.ring, k).members), list(Ideal(self.ring, v).members)]
                          for k, v in sorted(self.table.items())]}

    def __eq__(self, other):
        return isinstance(other, TableExpansion) and other.ring == self.ring and dict(other.table) == dict(self.table)

    def __hash__(self):
        return hash((self.ring, frozenset(self.table.items())))


class Reduction:
    """Base class for reduction functions; call it on an ideal."""

    def __call__(self, I: Ideal) -> ReductionImage:
        raise NotImplementedError

    def to_json(self) -> Any:
        raise NotImplementedError

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass(frozen=True)
class EmptyReduction(Reduction):
    def __call__(self, I: Ideal) -> ReductionImage:
        return EMPTY

    def to_json(self):
        return "empty"


@dataclass(frozen=True)
class ZeroReduction(Reduction):
    def __call__(self, I: Ideal) -> ReductionImage:
        return zero_ideal(I.ring)

    def to_json(self):
        return "zero"


@dataclass(frozen=True)
class PowerReduction(Reduction):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise MapError(f"power reduction needs n >= 2, got {self.n!r}")

    def __call__(self, I: Ideal) -> ReductionImage:
        return ideal_power(I, self.n)

    def to_json(self):
        return {"power": self.n}


@dataclass(frozen=True)
class OmegaReduction(Reduction):
    """Intersection of all powers; iterated until the powers stabilize."""

    def __call__(self, I: Ideal) -> ReductionImage:
        current = I
        while True:
            nxt = ideal_product(current, I)
            if nxt == current:
                return current
            current = nxt

    def to_json(self):
        return "omega"


@dataclass(frozen=True)
class IdentityReduction(Reduction):
    def __call__(self, I: Ideal) -> ReductionImage:
        return I

    def to_json(self):
        return "identity"


@dataclass(frozen=True, eq=False)
class TableReduction(Reduction):
    """A reduction given pointwise; ``None`` entries stand for the empty image."""

    ring: Ring
    table: Mapping[int, int | None] = field(repr=False)
    label: str = "table"

    def __call__(self, I: Ideal) -> ReductionImage:
        if I.ring != self.ring:
            raise RingMismatch(f"table map lives in {self.ring.name}, ideal in {I.ring.name}")
        try:
            bits = self.table[I.bits]
        except KeyError:
            raise MapError(f"table map has no entry for {I!r}") from None
        return EMPTY if bits is None else Ideal(self.ring, bits)

    def to_json(self):
        rows = []
        for k, v in sorted(self.table.items()):
            rows.append([list(Ideal(self.ring, k).members), None if v is None else list(Ideal(self.ring, v).members)])
        return {"table": rows}

    def __eq__(self, other):
        return isinstance(other, TableReduction) and other.ring == self.ring and dict(other.table) == dict(self.table)

    def __hash__(self):
        return hash((self.ring, frozenset(self.table.items())))


@dataclass(frozen=True)
class ProductExpansion(Expansion):
    """delta1 x delta2 acting factorwise on ideals of a product ring."""

    ring: ProductRing
    left: Expansion
    right: Expansion

    def __call__(self, I: Ideal) -> Ideal:
        first, second = split_ideal(I)
        return join_ideals(self.ring, self.left(first), self.right(second))

    def to_json(self):
        return {"product": [self.left.to_json(), self.right.to_json()]}


@dataclass(frozen=True)
class ProductReduction(Reduction):
    """phi1 x phi2 acting factorwise; an empty factor image makes the whole image empty."""

    ring: ProductRing
    left: Reduction
    right: Reduction

    def __call__(self, I: Ideal) -> ReductionImage:
        first, second = split_ideal(I)
        a, b = self.left(first), self.right(second)
        if a is EMPTY or b is EMPTY:
            return EMPTY
        return join_ideals(self.ring, a, b)

    def to_json(self):
        return {"product": [self.left.to_json(), self.right.to_json()]}


IDENTITY = IdentityExpansion()
RADICAL = RadicalExpansion()
PHI_EMPTY = EmptyReduction()
PHI_ZERO = ZeroReduction()
PHI_OMEGA = OmegaReduction()
PHI_IDENTITY = IdentityReduction()


def phi_power(n: int) -> PowerReduction:
    return PowerReduction(n)


def apply_expansion(delta: Expansion, I: Ideal) -> Ideal:
    return delta(I)


def apply_reduction(phi: Reduction, I: Ideal) -> ReductionImage:
    return phi(I)


def _table_rows(rows: Any, ring: Ring, allow_empty: bool) -> dict:
    from .ideals import from_members

    if not isinstance(rows, list):
        raise MapError("table must be a list of [ideal_members, image_members] rows")
    table = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 2:
            raise MapError(f"bad table row {row!r}")
        key = from_members(ring, row[0]).bits
        if row[1] is None:
            if not allow_empty:
                raise MapError("expansions cannot take the empty image")
            table[key] = None
        else:
            table[key] = from_members(ring, row[1]).bits
    missing = [I for I in enumerate_ideals(ring) if I.bits not in table]
    if missing:
        raise MapError(f"table is missing ideals {missing}")
    return table


def expansion_from_json(obj: Any, ring: Ring) -> Expansion:
    """Parse a delta literal such as ``"radical"`` or ``{"plus": {"gens": [6]}}``.

    Table literals must pass :func:`check_expansion_axioms` before they are returned.
    """
    if isinstance(obj, str) and obj.strip().startswith(("{", "[", '"')):
        obj = json.loads(obj)
    if isinstance(obj, dict) and set(obj) == {"delta"}:
        obj = obj["delta"]
    if isinstance(obj, str):
        names = {"identity": IDENTITY, "radical": RADICAL}
        if obj not in names:
            raise MapError(f"unknown expansion {obj!r}")
        return names[obj]
    if not isinstance(obj, dict) or len(obj) != 1:
        raise MapError(f"expansion literal must be a name or a one-key object, got {obj!r}")
    (key, value), = obj.items()
    try:
        if key == "plus":
            return PlusExpansion(ideal_from_json(value, ring))
        if key == "colon_by":
            return ColonExpansion(ideal_from_json(value, ring))
        if key == "sum":
            if not isinstance(value, list) or len(value) != 2:
                raise MapError("sum takes exactly two expansions")
            return SumExpansion(expansion_from_json(value[0], ring), expansion_from_json(value[1], ring))
        if key == "meet":
            if not isinstance(value, list) or not value:
                raise MapError("meet takes a nonempty list of expansions")
            return MeetExpansion(tuple(expansion_from_json(v, ring) for v in value))
        if key == "compose":
            if not isinstance(value, list) or len(value) != 2:
                raise MapError("compose takes [outer, inner]")
            return ComposeExpansion(expansion_from_json(value[0], ring), expansion_from_json(value[1], ring))
        if key == "product":
            if not isinstance(ring, ProductRing) or not isinstance(value, list) or len(value) != 2:
                raise MapError("product expansions take [left, right] on a product ring")
            return ProductExpansion(ring, expansion_from_json(value[0], ring.left),
                                    expansion_from_json(value[1], ring.right))
        if key == "table":
            fn = TableExpansion(ring, _table_rows(value, ring, allow_empty=False))
            if not check_expansion_axioms(fn, ring):
                raise MapError("table expansion fails the expansion axioms")
            return fn
    except IdealError as exc:
        raise MapError(str(exc)) from exc
    raise MapError(f"unknown expansion {key!r}")


def reduction_from_json(obj: Any, ring: Ring | None = None) -> Reduction:
    """Parse a phi literal such as ``"empty"``, ``"omega"`` or ``{"power": 2}``."""
    if isinstance(obj, str) and obj.strip().startswith(("{", "[", '"')):
        obj = json.loads(obj)
    if isinstance(obj, dict) and set(obj) == {"phi"}:
        obj = obj["phi"]
    if isinstance(obj, str):
        names = {"empty": PHI_EMPTY, "zero": PHI_ZERO, "omega": PHI_OMEGA, "identity": PHI_IDENTITY}
        if obj not in names:
            raise MapError(f"unknown reduction {obj!r}")
        return names[obj]
    if not isinstance(obj, dict) or len(obj) != 1:
        raise MapError(f"reduction literal must be a name or a one-key object, got {obj!r}")
    (key, value), = obj.items()
    if key == "power":
        if not isinstance(value, int) or isinstance(value, bool):
            raise MapError("power takes an integer exponent")
        return PowerReduction(value)
    if key == "product":
        if not isinstance(ring, ProductRing) or not isinstance(value, list) or len(value) != 2:
            raise MapError("product reductions take [left, right] on a product ring")
        return ProductReduction(ring, reduction_from_json(value[0], ring.left),
                                reduction_from_json(value[1], ring.right))
    if key == "table":
        if ring is None:
            raise MapError("table reductions need a ring")
        try:
            fn = TableReduction(ring, _table_rows(value, ring, allow_empty=True))
        except IdealError as exc:
            raise MapError(str(exc)) from exc
        if not check_reduction_axioms(fn, ring):
            raise MapError("table reduction fails the reduction axioms")
        return fn
    raise MapError(f"unknown reduction {key!r}")


def check_expansion_axioms(delta: Expansion, ring: Ring) -> bool:
    """I <= delta(I) and monotonicity over every pair of ideals of ``ring``."""
    ideals = enumerate_ideals(ring)
    images = {I.bits: delta(I) for I in ideals}
    for I in ideals:
        if not I <= images[I.bits]:
            return False
    for I in ideals:
        for K in ideals:
            if I <= K and not images[I.bits] <= images[K.bits]:
                return False
    return True


def check_reduction_axioms(phi: Reduction, ring: Ring) -> bool:
    """phi(P) <= P and monotonicity, with the empty image below everything."""
    ideals = enumerate_ideals(ring)
    images = {I.bits: phi(I) for I in ideals}
    for P in ideals:
        if not images[P.bits] <= P:
            return False
    for P in ideals:
        for Q in ideals:
            if P <= Q and not images[P.bits] <= images[Q.bits]:
                return False
    return True


def leq(f: Expansion | Reduction, g: Expansion | Reduction, ring: Ring) -> bool:
    """Pointwise containment f(I) <= g(I) over all ideals of ``ring``."""
    if isinstance(f, Expansion) != isinstance(g, Expansion):
        raise MapError("leq compares two expansions or two reductions")
    return all(f(I) <= g(I) for I in enumerate_ideals(ring))


def default_reductions() -> tuple[Reduction, ...]:
    """The reduction catalog, ordered from the empty map up to the identity."""
    return (PHI_EMPTY, PHI_ZERO, PHI_OMEGA, PowerReduction(3), PowerReduction(2), PHI_IDENTITY)


def expansion_parameters(ring: Ring) -> tuple[Ideal, ...]:
    """Ideals used to instantiate plus(J) and colon_by(J): the nilradical (if nonzero) and the maximal ideals."""
    from .ideals import maximal_ideals, nilradical

    params: list[Ideal] = []
    nil = nilradical(ring)
    if not nil.is_zero:
        params.append(nil)
    for M in maximal_ideals(ring):
        if M not in params:
            params.append(M)
    return tuple(params)


def default_expansions(ring: Ring) -> tuple[Expansion, ...]:
    """Expansion catalog for ``ring``, deduplicated by value on the ideal lattice."""
    from .ideals import canonical

    params = [canonical(J) for J in expansion_parameters(ring)]
    candidates: list[Expansion] = [IDENTITY, RADICAL]
    for J in params:
        candidates.append(PlusExpansion(J))
        candidates.append(ColonExpansion(J))
    if params:
        J0 = params[0]
        candidates.append(SumExpansion(RADICAL, ColonExpansion(J0)))
        candidates.append(MeetExpansion((RADICAL, PlusExpansion(J0), ColonExpansion(J0))))
        candidates.append(ComposeExpansion(RADICAL, PlusExpansion(J0)))
    ideals = enumerate_ideals(ring)
    seen: set[tuple[int, ...]] = set()
    catalog = []
    for delta in candidates:
        key = tuple(delta(I).bits for I in ideals)
        if key not in seen:
            seen.add(key)
            catalog.append(delta)
    return tuple(catalog)
