"""Radicals of primary-type ideals and the colon ideals they produce."""
from __future__ import annotations

import time

import numpy as np

from ..ideals import colon, radical
from ..maps import IDENTITY, RADICAL
from ..predicates import witness_set
from .common import candidates, setting, sweep
from .config import Catalog, CheckConfig
from .report import TheoremReport

RADICAL_THEOREMS = ("radical_of_primary", "radical_is_prime", "radical_colon_avoids_S", "expansion_colon_avoids_S")


def _avoids(S, J, domain: np.ndarray):
    """S meets no (J : a) for a in ``domain``; returns (ok, detail)."""
    if J is None:
        return True
    mul = S.ring.mul_table
    hits = J.mask[mul[np.ix_(list(S.members), np.flatnonzero(domain))]]
    if hits.any():
        t, a = np.argwhere(hits)[0]
        return False, {"t": int(S.members[t]), "a": int(np.flatnonzero(domain)[a])}
    return True


def _dominated(phi_img, S, s: int) -> bool:
    """(phi_img : x) <= (phi_img : s) for every x in S."""
    target = colon(phi_img, s)
    return all(colon(phi_img, x) <= target for x in S.members)


def radical_ring(report: TheoremReport, cat: Catalog) -> None:
    ring = cat.ring
    mul = ring.mul_table
    for phi, delta, S in sweep(cat):
        first_delta = delta is cat.deltas[0]
        for I in candidates(ring, S):
            rI = radical(I)
            phiI, phi_rI, dI = phi(I), phi(rI), delta(I)
            W = witness_set(I, phi, delta, S)
            W_rad = witness_set(I, phi, RADICAL, S)
            reduction_ok = ("radical_reduction_contained", lambda: radical(phiI) <= phi_rI)
            expansion_ok = ("radical_expansion_contained", lambda: radical(dI) <= delta(rI))
            for s in S.members:
                def cfg(**extra):
                    return setting(ring, I, phi, delta, S, s=s, **extra)

                report.check("radical_of_primary", [("witness", s in W), expansion_ok, reduction_ok],
                             lambda: s in witness_set(rI, phi, delta, S), lambda: cfg(hypothesis="witness"))
                report.check("radical_of_primary",
                             [("witness_radical_expansion", s in W_rad), expansion_ok, reduction_ok],
                             lambda: s in witness_set(rI, phi, delta, S),
                             lambda: cfg(hypothesis="witness_radical_expansion"))
                dominated = ("reduction_colon_dominated", lambda: _dominated(phi_rI, S, s))
                if first_delta:
                    report.check("radical_is_prime", [("witness_radical_expansion", s in W_rad), reduction_ok],
                                 lambda: s in witness_set(rI, phi, IDENTITY, S),
                                 lambda: setting(ring, I, phi, RADICAL, S, s=s))
                    report.check("radical_colon_avoids_S",
                                 [("witness_radical_expansion", s in W_rad), reduction_ok, dominated],
                                 lambda: _avoids(S, rI, ~rI.mask[mul[s]]),
                                 lambda: setting(ring, I, phi, RADICAL, S, s=s))

                def expansion_claim():
                    if colon(dI, s) != colon(dI, mul[s, s]):
                        return False, {"reason": "(delta(I):s) differs from (delta(I):s^2)"}
                    return _avoids(S, dI, ~dI.mask[mul[s]])
                report.check("expansion_colon_avoids_S",
                             [("witness", s in W), ("expansion_below_radical", lambda: dI <= rI), dominated,
                              ("expansion_colon_matches_radical_colon", lambda: colon(dI, s) == colon(rI, s))],
                             expansion_claim, cfg)


def run_radical_checks(cfg: CheckConfig) -> TheoremReport:
    report = TheoremReport([t for t in cfg.enabled if t in RADICAL_THEOREMS])
    start = time.perf_counter()
    if report.enabled:
        for desc in cfg.rings:
            radical_ring(report, cfg.catalog(desc))
    report.elapsed = time.perf_counter() - start
    return report
