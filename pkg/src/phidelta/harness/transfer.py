"""Quotient maps, product projections and the product-ring classification."""
from __future__ import annotations

import time
from itertools import product as cartesian

import numpy as np

from ..ideals import EMPTY, enumerate_ideals, join_ideals, proper_ideals
from ..maps import PHI_ZERO
from ..predicates import twin_zero_mask, witness_set
from ..rings import build_ring
from ..transfer import HypothesisFailed, classify_product, product_hat, product_multset, projection_epimorphism, \
    pull_ideal, push_ideal, quotient_epimorphism, twin_zero_transport
from .common import candidates, same_image, setting
from .config import Catalog, CheckConfig, product_desc
from .report import TheoremReport

QUOTIENT_THEOREMS = ("quotient_transfer", "quotient_correspondence", "twin_zero_transport", "quotient_weakly",
                     "twin_zero_quotient")
PRODUCT_THEOREMS = ("projection_transfer", "product_full_factor", "product_full_factor_nonclassical",
                    "product_classical", "product_nonclassical", "product_weakly")
TRANSFER_THEOREMS = QUOTIENT_THEOREMS + PRODUCT_THEOREMS

# classification cases that carry no theorem of their own
_UNCLAIMED = {"ungated": "standing_conditions", "reduced": "product_not_reduced"}


class _Epimorphisms:
    """Quotient maps keyed by (phi, delta, kernel); a failed construction is cached as its gate name."""

    def __init__(self, ring):
        self.ring = ring
        self._cache: dict = {}

    def get(self, J, delta, phi):
        key = (id(phi), id(delta), J.bits)
        if key not in self._cache:
            try:
                self._cache[key] = quotient_epimorphism(self.ring, J, delta, phi)
            except HypothesisFailed as exc:
                self._cache[key] = exc.gate
        return self._cache[key]


def _check_quotient_kernel(report: TheoremReport, cat: Catalog, f, phi, delta, J) -> None:
    ring = cat.ring
    above = [I for I in enumerate_ideals(ring) if J <= I]

    def correspondence():
        for I in above:
            K = push_ideal(f, I)
            if pull_ideal(f, K) != I:
                return False, {"reason": "pull(push(I)) differs from I", "ideal": I.to_json()}
        for K in enumerate_ideals(f.target):
            if push_ideal(f, pull_ideal(f, K)) != K:
                return False, {"reason": "push(pull(K)) differs from K", "target_ideal": K.to_json()}
        return True
    report.check("quotient_correspondence", [], correspondence,
                 lambda: setting(ring, None, phi, delta, None, kernel=J.to_json()))

    for S in cat.multsets:
        fS = f.push_multset(S)
        for I in candidates(ring, S):
            cfg = (lambda I=I: setting(ring, I, phi, delta, S, kernel=J.to_json()))
            contains = ("contains_kernel", J <= I)
            if not contains[1]:
                report.check("quotient_transfer", [contains], True, cfg)
                continue
            K = push_ideal(f, I)
            W = witness_set(I, phi, delta, S)

            def transported(I=I, K=K, W=W):
                if not K.is_proper or fS.meets(K):
                    return False, {"reason": "image ideal is not proper or meets f(S)"}
                WK = witness_set(K, f.psi, f.gamma, fS)
                bad = [s for s in S.members if (s in W) != (f(s) in WK)]
                return not bad, {"s": bad[:1], "witnesses": sorted(W), "image_witnesses": sorted(WK)}
            report.check("quotient_transfer", [], transported, cfg)
            for s in S.members:
                report.check("twin_zero_transport", [("witness", s in W)],
                             lambda I=I, s=s: twin_zero_transport(f, I, S, s),
                             lambda I=I, s=s: setting(ring, I, phi, delta, S, s=s, kernel=J.to_json()))


def _check_weakly_quotient(report: TheoremReport, cat: Catalog, maps: _Epimorphisms) -> None:
    ring = cat.ring
    for phi in cat.phis:
        for delta in cat.deltas:
            for S in cat.multsets:
                for I in candidates(ring, S):
                    phiI = phi(I)
                    gates = [("ideal_nonzero", I.bits != 1),
                             ("phi_image_nonempty", phiI is not EMPTY),
                             ("phi_idempotent_at_ideal", phiI is not EMPTY and same_image(phi(phiI), phiI))]
                    cfg = (lambda I=I: setting(ring, I, phi, delta, S))
                    if not all(ok for _, ok in gates):
                        report.check("quotient_weakly", gates, True, cfg)
                        continue
                    f = maps.get(phiI, delta, phi)
                    if isinstance(f, str):
                        report.check("quotient_weakly", [(f, False)], True, cfg)
                        continue
                    fS, K = f.push_multset(S), push_ideal(f, I)
                    W = witness_set(I, phi, delta, S)
                    WK = witness_set(K, PHI_ZERO, f.gamma, fS)

                    def weakly(W=W, WK=WK):
                        bad = [s for s in S.members if (s in W) != (f(s) in WK)]
                        return not bad, {"s": bad[:1], "witnesses": sorted(W), "image_witnesses": sorted(WK)}
                    report.check("quotient_weakly", [], weakly, cfg)
                    for s in S.members:
                        def same_twins(I=I, K=K, s=s):
                            here = twin_zero_mask(I, phi, delta, s)
                            there = twin_zero_mask(K, PHI_ZERO, f.gamma, f(s))
                            return bool(np.array_equal(here, there[np.ix_(f.image, f.image)]))
                        report.check("twin_zero_quotient", [("witness", s in W)], same_twins,
                                     lambda I=I, s=s: setting(ring, I, phi, delta, S, s=s))


def quotient_ring_checks(report: TheoremReport, cat: Catalog) -> None:
    ring = cat.ring
    maps = _Epimorphisms(ring)
    if any(report.wants(t) for t in ("quotient_transfer", "quotient_correspondence", "twin_zero_transport")):
        for phi in cat.phis:
            for delta in cat.deltas:
                for J in proper_ideals(ring):
                    f = maps.get(J, delta, phi)
                    if isinstance(f, str):
                        for tid in ("quotient_transfer", "quotient_correspondence", "twin_zero_transport"):
                            report.check(tid, [(f, False)], True, {})
                        continue
                    _check_quotient_kernel(report, cat, f, phi, delta, J)
    if report.wants("quotient_weakly") or report.wants("twin_zero_quotient"):
        _check_weakly_quotient(report, cat, maps)


def _weakly_shape(I1, I2, pair) -> bool:
    """Nonzero proper I1 beside a zero I2 with zero second coordinate, or the mirror image."""
    s1, s2 = pair
    left = I2.bits == 1 and s2 == 0 and I1.bits != 1 and I1.is_proper
    right = I1.bits == 1 and s1 == 0 and I2.bits != 1 and I2.is_proper
    return left or right


def product_checks(report: TheoremReport, cfg: CheckConfig, pair) -> None:
    desc = product_desc(pair)
    ring = build_ring(desc)
    left, right = cfg.factor_catalog(pair[0]), cfg.factor_catalog(pair[1])
    I1s, I2s = enumerate_ideals(left.ring), enumerate_ideals(right.ring)
    for (d1, d2), (p1, p2) in cartesian(cartesian(left.deltas, right.deltas), cartesian(left.phis, right.phis)):
        maps = product_hat(ring, d1, p1, d2, p2)
        both_zero = p1 is PHI_ZERO and p2 is PHI_ZERO

        def cfg_for(I=None, S=None, **extra):
            return setting(ring, I, maps.phi, maps.delta, S, **extra)

        if report.wants("projection_transfer"):
            for axis in (0, 1):
                try:
                    f = projection_epimorphism(ring, axis, maps.delta, maps.phi)
                except HypothesisFailed as exc:
                    report.check("projection_transfer", [(exc.gate, False)], True, lambda: cfg_for(axis=axis))
                    continue
                factor = (left, right)[axis]
                for S1, S2 in cartesian(left.multsets, right.multsets):
                    S = product_multset(ring, S1, S2)
                    fS = f.push_multset(S)
                    for K in candidates(factor.ring, fS):
                        I = pull_ideal(f, K)

                        def transported(I=I, K=K):
                            W, WK = witness_set(I, maps.phi, maps.delta, S), witness_set(K, f.psi, f.gamma, fS)
                            bad = [s for s in S.members if (s in W) != (f(s) in WK)]
                            return not bad, {"s": bad[:1]}
                        report.check("projection_transfer", [("preimage_disjoint_from_S", not S.meets(I))],
                                     transported, lambda I=I: cfg_for(I, S, axis=axis))

        for S1, S2 in cartesian(left.multsets, right.multsets):
            for I1, I2 in cartesian(I1s, I2s):
                I = join_ideals(ring, I1, I2)
                S = product_multset(ring, S1, S2)
                cfg_I = (lambda I=I, S=S: cfg_for(I, S))
                try:
                    c = classify_product(I1, I2, maps, S1, S2)
                except HypothesisFailed as exc:
                    report.check("product_classical", [(exc.gate, False)], True, cfg_I)
                    if both_zero:
                        report.check("product_weakly", [(exc.gate, False)], True, cfg_I)
                    continue
                if c.case in _UNCLAIMED:
                    gate = c.gates_failed[0] if c.gates_failed else _UNCLAIMED[c.case]
                    tid = "product_classical" if c.case == "ungated" else "product_nonclassical"
                    report.check(tid, [(gate, False)], True, cfg_I)
                else:
                    def agrees(c=c):
                        detail = c.to_json()
                        if not c.agreement:
                            return False, detail
                        if c.case in ("product_classical", "product_full_factor") and c.direct != c.direct_classical:
                            return False, dict(detail, reason="nonclassical witness in a classical case")
                        return True
                    report.check(c.case, [], agrees, cfg_I)
                if both_zero:
                    extra = sorted(c.direct - c.direct_classical)
                    report.check("product_weakly",
                                 [("ideal_nonzero", I.bits != 1), ("nonclassical_witness", bool(extra))],
                                 lambda I1=I1, I2=I2, extra=extra: (
                                     all(_weakly_shape(I1, I2, p) for p in extra), {"pairs": extra}),
                                 cfg_I)


def run_transfer_checks(cfg: CheckConfig) -> TheoremReport:
    report = TheoremReport([t for t in cfg.enabled if t in TRANSFER_THEOREMS])
    start = time.perf_counter()
    if any(report.wants(t) for t in QUOTIENT_THEOREMS):
        for desc in cfg.quotient_rings:
            quotient_ring_checks(report, cfg.catalog(desc))
    if any(report.wants(t) for t in PRODUCT_THEOREMS):
        for pair in cfg.products:
            product_checks(report, cfg, pair)
    report.elapsed = time.perf_counter() - start
    return report
