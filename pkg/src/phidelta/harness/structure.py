"""Closure of the predicate class under directed unions/intersections, colons, and meets with S-ideals."""
from __future__ import annotations

import time
from itertools import combinations

import numpy as np

from ..bitset import mask_to_bits
from ..ideals import Ideal, colon, colon_ideal, enumerate_ideals, ideal_product, is_ideal_mask
from ..predicates import witness_set
from .common import candidates, same_image, setting, sweep
from .config import Catalog, CheckConfig
from .report import TheoremReport

STRUCTURE_THEOREMS = ("directed_union", "directed_intersection", "colon_by_element", "colon_by_ideal",
                      "meet_and_product_with_S_ideal")

INTERSECTION_NOTE = ("intersection property read per family: phi and delta send the intersection "
                     "to the common image of the members")


def directed_families(members: list[Ideal]) -> list[tuple[Ideal, ...]]:
    """Singletons, comparable pairs, and pairs of incomparable ideals together with a common upper member."""
    families: list[tuple[Ideal, ...]] = [(A,) for A in members]
    for A, B in combinations(members, 2):
        if A <= B or B <= A:
            families.append((A, B))
            continue
        for C in members:
            if A <= C and B <= C:
                families.append((A, B, C))
                break
    return families


def _union(ring, family) -> tuple[np.ndarray, int]:
    mask = np.zeros(ring.order, dtype=bool)
    for J in family:
        mask |= J.mask
    return mask, mask_to_bits(mask)


def _meet(ring, family) -> Ideal:
    bits = family[0].bits
    for J in family[1:]:
        bits &= J.bits
    return Ideal(ring, bits)


def _check_directed(report: TheoremReport, cat: Catalog, phi, delta, S) -> None:
    ring = cat.ring
    ideals = candidates(ring, S)
    for s in S.members:
        members = [I for I in ideals if s in witness_set(I, phi, delta, S)]
        for family in directed_families(members):
            def cfg(family=family):
                return setting(ring, None, phi, delta, S, s=s, family=[J.to_json() for J in family])

            def union_ok(family=family):
                mask, bits = _union(ring, family)
                if not is_ideal_mask(ring, mask):
                    return False, {"reason": "union is not an ideal"}
                return s in witness_set(Ideal(ring, bits), phi, delta, S)
            report.check("directed_union", [], union_ok, cfg)

            meet = _meet(ring, family)
            first = family[0]
            report.check("directed_intersection",
                         [("equal_phi_images", lambda f=family: all(same_image(phi(J), phi(f[0])) for J in f)),
                          ("equal_delta_images", lambda f=family: all(delta(J) == delta(f[0]) for J in f)),
                          ("intersection_property", lambda m=meet, f=first: same_image(phi(m), phi(f))
                           and delta(m) == delta(f))],
                         lambda m=meet: s in witness_set(m, phi, delta, S), cfg)
    report.note("directed_intersection", INTERSECTION_NOTE)


def _check_colons(report: TheoremReport, cat: Catalog, phi, delta, S) -> None:
    ring = cat.ring
    all_ideals = enumerate_ideals(ring)
    for P in candidates(ring, S):
        W = witness_set(P, phi, delta, S)
        phiP, dP = phi(P), delta(P)
        for s in S.members:
            witness = ("witness", s in W)
            seen: set[tuple[int, int]] = set()
            for a in range(ring.order):
                if a in P:
                    continue
                Pa = colon(P, a)
                # elements with the same pair of colons give the same configuration
                key = (Pa.bits, colon(phiP, a).bits)
                if key in seen:
                    continue
                seen.add(key)
                report.check("colon_by_element",
                             [witness,
                              ("reduction_colon_contained", lambda: colon(phiP, a) <= phi(Pa)),
                              ("colon_disjoint_from_S", lambda: not S.meets(Pa))],
                             lambda: s in witness_set(Pa, phi, delta, S),
                             lambda: setting(ring, P, phi, delta, S, s=s, a=a))
            for J in all_ideals:
                if J <= P:
                    continue
                PJ = colon_ideal(P, J)
                report.check("colon_by_ideal",
                             [witness,
                              ("reduction_colon_contained", lambda: colon_ideal(phiP, J) <= phi(PJ)),
                              ("expansion_colon_contained", lambda: colon_ideal(dP, J) <= delta(PJ)),
                              ("colon_disjoint_from_S", lambda: not S.meets(PJ))],
                             lambda: s in witness_set(PJ, phi, delta, S),
                             lambda: setting(ring, P, phi, delta, S, s=s, colon_ideal=J.to_json()))


def _check_meets(report: TheoremReport, cat: Catalog, phi, delta, S) -> None:
    ring = cat.ring
    all_ideals = enumerate_ideals(ring)
    for I in candidates(ring, S):
        W = witness_set(I, phi, delta, S)
        below = [J for J in all_ideals if J <= I]
        for P in all_ideals:
            def claim():
                meet, prod = I & P, ideal_product(I, P)
                detail = {"meet": sorted(witness_set(meet, phi, delta, S)),
                          "product": sorted(witness_set(prod, phi, delta, S))}
                return bool(detail["meet"]) and bool(detail["product"]), detail
            report.check("meet_and_product_with_S_ideal",
                         [("primary_type", bool(W)),
                          ("phi_constant_below", lambda: all(same_image(phi(J), phi(I)) for J in below)),
                          ("second_ideal_meets_S", S.meets(P))],
                         claim, lambda: setting(ring, I, phi, delta, S, second_ideal=P.to_json()))


def structure_ring(report: TheoremReport, cat: Catalog) -> None:
    for phi, delta, S in sweep(cat):
        if report.wants("directed_union") or report.wants("directed_intersection"):
            _check_directed(report, cat, phi, delta, S)
        if report.wants("colon_by_element") or report.wants("colon_by_ideal"):
            _check_colons(report, cat, phi, delta, S)
        if report.wants("meet_and_product_with_S_ideal"):
            _check_meets(report, cat, phi, delta, S)


def run_structure_checks(cfg: CheckConfig) -> TheoremReport:
    report = TheoremReport([t for t in cfg.enabled if t in STRUCTURE_THEOREMS])
    start = time.perf_counter()
    if report.enabled:
        for desc in cfg.rings:
            structure_ring(report, cfg.catalog(desc))
    report.elapsed = time.perf_counter() - start
    return report
