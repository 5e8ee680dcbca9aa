"""Per-witness consequences of the defining condition, monotonicity, and ring-level equivalences."""
from __future__ import annotations

import time
from itertools import permutations

import numpy as np

from ..ideals import EMPTY, colon, enumerate_ideals, ideal_product, radical, scale, zero_ideal
from ..localize import trivial_multset
from ..maps import IDENTITY, PHI_EMPTY, PHI_ZERO, RADICAL, leq
from ..predicates import char_colon_I, char_colon_delta, char_ideal_pairs, image_mask, is_free_twin_zero_global, \
    twin_zero_mask, witness_set
from .common import candidates, never_empty, same_image, setting, sweep
from .config import Catalog, CheckConfig
from .report import TheoremReport

CORE_THEOREMS = (
    "colon_characterization", "colon_dichotomy", "colon_dichotomy_radical", "square_in_reduction",
    "radical_alternative", "nilpotent_absorption", "product_absorption", "twin_zero_radical",
    "twin_zero_annihilates", "free_twin_zero", "reduction_monotone", "expansion_monotone",
    "multset_enlargement", "multset_shrink", "reduction_primary_equivalence", "weakly_prime_domain",
    "weakly_primary_domain",
)


def _first(mask: np.ndarray):
    hits = np.flatnonzero(mask)
    return int(hits[0]) if len(hits) else None


def _dichotomy(I, phiI, s: int, domain: np.ndarray):
    """(I:sa) is (I:s) or (phi(I):sa) for every a in ``domain``; returns (ok, first bad a)."""
    ring = I.ring
    mul = ring.mul_table
    col_I = I.mask[mul]
    sa = mul[s]
    cols_sa = col_I[:, sa]
    eq_s = (cols_sa == col_I[:, [s]]).all(axis=0)
    if phiI is EMPTY:
        eq_phi = np.zeros(ring.order, dtype=bool)
    else:
        eq_phi = (phiI.mask[mul][:, sa] == cols_sa).all(axis=0)
    bad = domain & ~(eq_s | eq_phi)
    return not bad.any(), {"a": _first(bad)}


def _check_witness_claims(report: TheoremReport, cat: Catalog, phi, delta, S, I, first_delta: bool) -> None:
    ring = cat.ring
    mul = ring.mul_table
    W = witness_set(I, phi, delta, S)
    Wcl = witness_set(I, PHI_EMPTY, delta, S)
    W_rad = witness_set(I, phi, RADICAL, S)
    phiI, dI = phi(I), delta(I)
    rad_phi = radical(phiI)
    for s in S.members:
        def cfg(**extra):
            return setting(ring, I, phi, delta, S, s=s, **extra)

        in_W, classical = s in W, s in Wcl
        if report.wants("colon_characterization"):
            def agree():
                verdicts = {"definition": in_W,
                            "colon_delta": char_colon_delta(I, phi, delta, S, s),
                            "colon_I": char_colon_I(I, phi, delta, S, s),
                            "ideal_pairs": char_ideal_pairs(I, phi, delta, S, s)}
                return len(set(verdicts.values())) == 1, verdicts
            report.check("colon_characterization", [], agree, cfg)

        witness = ("witness", in_W)
        s2 = mul[s, s]
        report.check("colon_dichotomy", [witness],
                     lambda: _dichotomy(I, phiI, s, ~dI.mask[mul[s2]]), cfg)
        if first_delta:
            report.check("colon_dichotomy_radical", [("witness_radical_expansion", s in W_rad)],
                         lambda: _dichotomy(I, phiI, s, ~radical(I).mask[mul[s]]),
                         lambda: setting(ring, I, phi, RADICAL, S, s=s))
        nonclassical = ("not_classical_witness", not classical)
        report.check("square_in_reduction", [witness, nonclassical],
                     lambda: ideal_product(I, I) <= phiI, cfg)
        report.check("radical_alternative", [witness],
                     lambda: I <= rad_phi or scale(s, rad_phi) <= dI, cfg)

        def absorbs():
            prods = mul[np.ix_(I.index, rad_phi.index)]
            return bool(phiI.mask[mul[s][prods]].all())
        report.check("nilpotent_absorption",
                     [witness, nonclassical, ("phi_image_nonempty", phiI is not EMPTY),
                      ("colon_matches_expansion_colon", lambda: colon(I, s) == colon(dI, s))],
                     absorbs, cfg)

        if not in_W:
            for tid in ("twin_zero_radical", "twin_zero_annihilates", "free_twin_zero"):
                report.check(tid, [witness], True, cfg)
            continue
        tz = twin_zero_mask(I, phi, delta, s)
        has_tz = ("has_twin_zero", bool(tz.any()))
        report.check("twin_zero_radical", [has_tz], lambda: radical(I) == rad_phi, cfg)

        def annihilates():
            phim = image_mask(phiI, ring.order)
            for x in np.unique(np.concatenate(np.nonzero(tz))):
                if not phim[mul[x, I.index]].all():
                    return False, {"element": int(x)}
            return True
        report.check("twin_zero_annihilates", [has_tz], annihilates, cfg)
        if report.wants("free_twin_zero"):
            report.check("free_twin_zero", [], lambda: (
                is_free_twin_zero_global(I, phi, delta, S, s) == char_ideal_pairs(I, phi, delta, S, s)), cfg)


def _check_product_absorption(report: TheoremReport, cat: Catalog, phi, delta, S) -> None:
    ring = cat.ring
    mul = ring.mul_table
    ideals = candidates(ring, S)
    for s in S.members:
        eligible = []
        for I in ideals:
            W, Wcl = witness_set(I, phi, delta, S), witness_set(I, PHI_EMPTY, delta, S)
            ok = s in W and s not in Wcl and colon(I, s) == colon(delta(I), s)
            eligible.append(ok)
        for i, I in enumerate(ideals):
            for j, J in enumerate(ideals):
                def claim(I=I, J=J):
                    prods = mul[np.ix_(I.index, J.index)]
                    return bool(image_mask(phi(I), ring.order)[mul[s][prods]].all())
                report.check("product_absorption",
                             [("both_nonclassical_witness_with_colon_condition", eligible[i] and eligible[j]),
                              ("reduction_images_nested", lambda I=I, J=J: phi(J) <= phi(I))],
                             claim, lambda I=I, J=J: setting(ring, I, phi, delta, S, s=s, second_ideal=J.to_json()))


def _check_monotone(report: TheoremReport, cat: Catalog) -> None:
    ring = cat.ring
    phi_pairs = [(p, q) for p, q in permutations(cat.phis, 2)]
    delta_pairs = [(d, g) for d, g in permutations(cat.deltas, 2)]
    phi_leq = {(id(p), id(q)): leq(p, q, ring) for p, q in phi_pairs}
    delta_leq = {(id(d), id(g)): leq(d, g, ring) for d, g in delta_pairs}
    for S in cat.multsets:
        for I in candidates(ring, S):
            for delta in cat.deltas:
                for p, q in phi_pairs:
                    report.check("reduction_monotone", [("reduction_leq", phi_leq[id(p), id(q)])],
                                 lambda: witness_set(I, p, delta, S) <= witness_set(I, q, delta, S),
                                 lambda: setting(ring, I, p, delta, S, larger_phi=q.to_json()))
            for phi in cat.phis:
                for d, g in delta_pairs:
                    report.check("expansion_monotone", [("expansion_leq", delta_leq[id(d), id(g)])],
                                 lambda: witness_set(I, phi, d, S) <= witness_set(I, phi, g, S),
                                 lambda: setting(ring, I, phi, d, S, larger_delta=g.to_json()))


def _cofinal(S1, S2) -> bool:
    mul = S1.ring.mul_table
    return all(S1.mask[mul[s, list(S2.members)]].any() for s in S2.members)


def _check_multsets(report: TheoremReport, cat: Catalog) -> None:
    ring = cat.ring
    mul = ring.mul_table
    for S1, S2 in permutations(cat.multsets, 2):
        nested = S1 <= S2
        cofinal = nested and _cofinal(S1, S2)
        for I in candidates(ring, S2):
            for phi in cat.phis:
                for delta in cat.deltas:
                    def cfg():
                        return setting(ring, I, phi, delta, S1, larger_mult_set=S2.to_json())
                    report.check("multset_enlargement", [("multset_contained", nested)],
                                 lambda: witness_set(I, phi, delta, S1) <= witness_set(I, phi, delta, S2), cfg)

                    def shrinks():
                        W1, W2 = witness_set(I, phi, delta, S1), witness_set(I, phi, delta, S2)
                        if W2 and not W1:
                            return False
                        for s in W2:
                            for t in S2.members:
                                st = int(mul[s, t])
                                if st in S1 and st not in W1:
                                    return False, {"s": s, "t": t}
                        return True
                    report.check("multset_shrink", [("multset_contained", nested), ("cofinal", cofinal)],
                                 shrinks, cfg)


def _is_delta_primary(J, delta) -> bool:
    return J.is_proper and J.ring.one in witness_set(J, PHI_EMPTY, delta, trivial_multset(J.ring))


def _check_ring_level(report: TheoremReport, cat: Catalog) -> None:
    ring = cat.ring
    for S in cat.multsets:
        ideals = candidates(ring, S)
        avoids_zero = ("mult_set_avoids_zero", not S.contains_zero)
        for phi in cat.phis:
            for delta in cat.deltas:
                def equivalence():
                    left = all(_is_delta_primary(I, delta) for I in ideals if witness_set(I, phi, delta, S))
                    images = all(_is_delta_primary(phi(I), delta) for I in ideals)
                    classical = all(_is_delta_primary(I, delta) for I in ideals
                                    if witness_set(I, PHI_EMPTY, delta, S))
                    return left == (images and classical), {"left": left, "images": images, "classical": classical}
                report.check("reduction_primary_equivalence",
                             [("phi_never_empty", lambda: never_empty(phi, ring)),
                              ("phi_idempotent", lambda: all(same_image(phi(phi(I)), phi(I))
                                                             for I in enumerate_ideals(ring))),
                              avoids_zero],
                             equivalence, lambda: setting(ring, None, phi, delta, S))
        zero = zero_ideal(ring)
        for tid, delta in (("weakly_prime_domain", IDENTITY), ("weakly_primary_domain", RADICAL)):
            def biconditional():
                left = all(_is_delta_primary(I, delta) for I in ideals if witness_set(I, PHI_ZERO, delta, S))
                base = _is_delta_primary(zero, delta)
                classical = all(_is_delta_primary(I, delta) for I in ideals if witness_set(I, PHI_EMPTY, delta, S))
                return left == (base and classical), {"left": left, "zero_ideal": base, "classical": classical}
            report.check(tid, [avoids_zero], biconditional,
                         lambda: setting(ring, None, PHI_ZERO, delta, S))


def core_ring(report: TheoremReport, cat: Catalog) -> None:
    for phi, delta, S in sweep(cat):
        first_delta = delta is cat.deltas[0]
        for I in candidates(cat.ring, S):
            _check_witness_claims(report, cat, phi, delta, S, I, first_delta)
        if report.wants("product_absorption"):
            _check_product_absorption(report, cat, phi, delta, S)
    if report.wants("reduction_monotone") or report.wants("expansion_monotone"):
        _check_monotone(report, cat)
    if report.wants("multset_enlargement") or report.wants("multset_shrink"):
        _check_multsets(report, cat)
    _check_ring_level(report, cat)


def run_core_checks(cfg: CheckConfig) -> TheoremReport:
    report = TheoremReport([t for t in cfg.enabled if t in CORE_THEOREMS])
    start = time.perf_counter()
    if report.enabled:
        for desc in cfg.rings:
            core_ring(report, cfg.catalog(desc))
    report.elapsed = time.perf_counter() - start
    return report
