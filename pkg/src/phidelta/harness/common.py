from __future__ import annotations

from typing import Any, Iterator

from ..ideals import EMPTY, Ideal, ReductionImage, enumerate_ideals, proper_ideals
from ..localize import MultSet
from ..maps import Expansion, Reduction
from .config import Catalog


def setting(ring, I: Ideal | None, phi: Reduction | None, delta: Expansion | None,
            S: MultSet | None, **extra: Any) -> dict:
    """A configuration in the CLI literal grammar, so it can be replayed with ``check``."""
    out: dict[str, Any] = {"ring": ring.to_json()}
    if I is not None:
        out["ideal"] = I.to_json()
    if phi is not None:
        out["phi"] = phi.to_json()
    if delta is not None:
        out["delta"] = delta.to_json()
    if S is not None:
        out["mult_set"] = S.to_json()
    out.update(extra)
    return out


def same_image(A: ReductionImage, B: ReductionImage) -> bool:
    if A is EMPTY or B is EMPTY:
        return A is B
    return A == B


def candidates(ring, S: MultSet) -> tuple[Ideal, ...]:
    """Proper ideals disjoint from S, in lattice order."""
    return tuple(I for I in proper_ideals(ring) if not S.meets(I))


def sweep(cat: Catalog) -> Iterator[tuple[Reduction, Expansion, MultSet]]:
    for phi in cat.phis:
        for delta in cat.deltas:
            for S in cat.multsets:
                yield phi, delta, S


def never_empty(phi: Reduction, ring) -> bool:
    return all(phi(I) is not EMPTY for I in enumerate_ideals(ring))
