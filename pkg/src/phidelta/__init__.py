"""Generalized primary ideals of finite commutative rings: deciders, transfers and theorem checks."""
from __future__ import annotations

from .ideals import EMPTY, Ideal, colon, enumerate_ideals, generate, proper_ideals, radical
from .localize import MultSet, localize, mult_closure, saturation
from .maps import IDENTITY, PHI_EMPTY, PHI_OMEGA, PHI_ZERO, RADICAL, PowerReduction, default_expansions, \
    default_reductions
from .predicates import WitnessReport, is_phi_delta_S_primary, witness_set
from .rings import Product, Quotient, Ring, SquareZero, ZMod, build_ring, parse_ring, product, quotient, zmod

__version__ = "0.1.0"

__all__ = [
    "EMPTY", "IDENTITY", "PHI_EMPTY", "PHI_OMEGA", "PHI_ZERO", "RADICAL", "Ideal", "MultSet", "PowerReduction",
    "Product", "Quotient", "Ring", "SquareZero", "WitnessReport", "ZMod", "build_ring", "colon",
    "default_expansions", "default_reductions", "enumerate_ideals", "generate", "is_phi_delta_S_primary",
    "localize", "mult_closure", "parse_ring", "product", "proper_ideals", "quotient", "radical", "saturation",
    "witness_set", "zmod",
]
