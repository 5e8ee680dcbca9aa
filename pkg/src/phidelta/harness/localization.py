"""Saturation and localization: S versus S*, and the four-way localization equivalence."""
from __future__ import annotations

import time

from ..ideals import colon, proper_ideals
from ..localize import IllDefined, MultSet, contract_ideal, cyclic_multsets, enumerate_multsets, extend_ideal, \
    localize, localized_maps, mult_from_members, saturation, trivial_multset, MultSetError
from ..predicates import witness_set
from .common import candidates, same_image, setting
from .config import Catalog, CheckConfig
from .report import TheoremReport

LOCALIZATION_THEOREMS = ("saturation_laws", "saturation_invariance", "localization_equivalence")

EXHAUSTIVE_MULTSETS_UP_TO = 16


def _laws(ring, S: MultSet):
    star = saturation(ring, S)
    if not S <= star:
        return False, {"reason": "S not contained in S*"}
    if saturation(ring, star) != star:
        return False, {"reason": "S** differs from S*"}
    try:
        mult_from_members(ring, star.members)
    except MultSetError:
        return False, {"reason": "S* not multiplicatively closed"}
    for I in proper_ideals(ring):
        if not S.meets(I) and star.meets(I):
            return False, {"reason": "S* meets a proper ideal avoiding S", "ideal": I.to_json()}
    return True


def _is_local_primary(K, phi_S, delta_S) -> bool:
    return K.is_proper and K.ring.one in witness_set(K, phi_S, delta_S, trivial_multset(K.ring))


def _check_equivalence(report: TheoremReport, cat: Catalog, phi, delta, S) -> None:
    ring = cat.ring
    L = localize(ring, S)
    try:
        delta_S, phi_S = localized_maps(L, delta, phi)
        defined, which = True, None
    except IllDefined as exc:
        defined, which = False, exc.which
    for I in candidates(ring, S):
        phiI, dI = phi(I), delta(I)
        ext = extend_ideal(L, I)
        for s in S.members:
            def statements():
                local = _is_local_primary(ext, phi_S, delta_S)
                Is = colon(I, s)
                verdicts = {
                    "witness": s in witness_set(I, phi, delta, S),
                    "colon_primary": _is_local_primary(Is, phi, delta),
                    "localized_and_colon_dominated": local and all(colon(I, t) <= Is for t in S.members),
                    "localized_and_contraction": local and contract_ideal(L, ext) == Is,
                }
                return len(set(verdicts.values())) == 1, verdicts

            gates = [
                ("delta_S_ill_defined", defined or which != "delta"),
                ("phi_S_ill_defined", defined),
                ("reduction_commutes_with_colon", lambda: all(
                    same_image(phi(colon(I, a)), colon(phiI, a)) for a in range(ring.order))),
                ("expansion_commutes_with_colon", lambda: all(
                    delta(colon(I, a)) == colon(dI, a) for a in range(ring.order))),
                ("expansion_commutes_with_contraction", lambda: delta(contract_ideal(L, ext))
                 == contract_ideal(L, extend_ideal(L, dI))),
                ("localized_expansion_proper", lambda: delta_S(ext).is_proper),
                ("reduction_fixed_by_colon_s", lambda: same_image(colon(phiI, s), phiI)),
                ("reduction_colon_dominated", lambda: all(colon(phiI, t) <= colon(phiI, s) for t in S.members)),
            ]
            report.check("localization_equivalence", gates, statements,
                         lambda: setting(ring, I, phi, delta, S, s=s))


def localization_ring(report: TheoremReport, cat: Catalog) -> None:
    ring = cat.ring
    if report.wants("saturation_laws"):
        if ring.order <= EXHAUSTIVE_MULTSETS_UP_TO:
            pool = enumerate_multsets(ring, EXHAUSTIVE_MULTSETS_UP_TO)
        else:
            pool = tuple(dict.fromkeys(cat.multsets + cyclic_multsets(ring, allow_zero=True)))
        for S in pool:
            report.check("saturation_laws", [], lambda: _laws(ring, S), lambda: setting(ring, None, None, None, S))
    for S in cat.multsets:
        avoids_zero = not S.contains_zero
        star = saturation(ring, S)
        for phi in cat.phis:
            for delta in cat.deltas:
                for I in candidates(ring, S):
                    def invariant():
                        W, W_star = witness_set(I, phi, delta, S), witness_set(I, phi, delta, star)
                        return bool(W) == bool(W_star) and W <= W_star, {
                            "witnesses": sorted(W), "saturated_witnesses": sorted(W_star)}
                    report.check("saturation_invariance", [], invariant,
                                 lambda: setting(ring, I, phi, delta, S))
                if not avoids_zero:
                    report.check("localization_equivalence", [("mult_set_avoids_zero", False)], True, {})
                elif report.wants("localization_equivalence"):
                    _check_equivalence(report, cat, phi, delta, S)


def run_localization_checks(cfg: CheckConfig) -> TheoremReport:
    report = TheoremReport([t for t in cfg.enabled if t in LOCALIZATION_THEOREMS])
    start = time.perf_counter()
    if report.enabled:
        for desc in cfg.rings:
            localization_ring(report, cfg.catalog(desc))
    report.elapsed = time.perf_counter() - start
    return report
