"""Sweep configuration: rings, map catalogs, multiplicative sets and enabled theorems."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

from ..ideals import IdealError
from ..localize import MultSet, MultSetError, cyclic_multsets, multset_from_json, unit_multsets
from ..maps import Expansion, MapError, Reduction, default_expansions, default_reductions, expansion_from_json, \
    reduction_from_json
from ..rings import Product, Ring, RingDesc, RingError, SquareZero, ZMod, build_ring, desc_from_json, desc_to_json
from .report import THEOREMS


class ConfigError(ValueError):
    """A verify/hunt configuration is malformed."""


MULT_MODES = ("units", "cyclic", "all_cyclic")
PRODUCT_DELTAS = ("identity", "radical")

_KEYS = {"rings", "deltas", "phis", "mult_sets", "products", "product_deltas", "product_phis",
         "product_mult_sets", "quotients", "theorems", "seed", "budget", "max_order"}


@dataclass(frozen=True)
class Catalog:
    ring: Ring
    deltas: tuple[Expansion, ...]
    phis: tuple[Reduction, ...]
    multsets: tuple[MultSet, ...]


@dataclass(frozen=True)
class CheckConfig:
    rings: tuple[RingDesc, ...] = (ZMod(12),)
    deltas: tuple | None = None
    phis: tuple | None = None
    mult_sets: Any = "cyclic"
    products: tuple[tuple[RingDesc, RingDesc], ...] = ()
    product_deltas: tuple = PRODUCT_DELTAS
    product_phis: tuple | None = None
    product_mult_sets: Any = "all_cyclic"
    quotients: tuple[RingDesc, ...] | None = None
    theorems: tuple[str, ...] | None = None
    seed: int = 0
    budget: int = 100
    max_order: int = 40

    def __post_init__(self):
        if self.budget < 1:
            raise ConfigError("budget must be at least 1")
        if self.max_order < 2:
            raise ConfigError("max_order must be at least 2")
        for name in ("deltas", "phis", "product_deltas", "product_phis", "theorems"):
            value = getattr(self, name)
            if value is not None and len(value) == 0:
                raise ConfigError(f"{name} must be nonempty when given")
        for mode in (self.mult_sets, self.product_mult_sets):
            if isinstance(mode, str) and mode not in MULT_MODES:
                raise ConfigError(f"mult_sets mode must be one of {MULT_MODES}, got {mode!r}")
            if not isinstance(mode, str) and len(mode) == 0:
                raise ConfigError("mult_sets list must be nonempty")
        if self.theorems is not None:
            unknown = [t for t in self.theorems if t not in THEOREMS]
            if unknown:
                raise ConfigError(f"unknown theorem ids {unknown}")

    @property
    def enabled(self) -> tuple[str, ...]:
        return tuple(THEOREMS) if self.theorems is None else self.theorems

    @property
    def quotient_rings(self) -> tuple[RingDesc, ...]:
        return self.rings if self.quotients is None else self.quotients

    def catalog(self, desc: RingDesc) -> Catalog:
        return _catalog(build_ring(desc), self.deltas, self.phis, _freeze(self.mult_sets))

    def factor_catalog(self, desc: RingDesc) -> Catalog:
        return _catalog(build_ring(desc), self.product_deltas, self.product_phis, _freeze(self.product_mult_sets))

    def to_json(self) -> dict:
        out: dict[str, Any] = {"rings": [desc_to_json(d) for d in self.rings]}
        for name in ("deltas", "phis", "product_phis", "theorems"):
            if getattr(self, name) is not None:
                out[name] = list(getattr(self, name))
        out["mult_sets"] = self.mult_sets if isinstance(self.mult_sets, str) else list(self.mult_sets)
        out["products"] = [[desc_to_json(a), desc_to_json(b)] for a, b in self.products]
        out["product_deltas"] = list(self.product_deltas)
        out["product_mult_sets"] = (self.product_mult_sets if isinstance(self.product_mult_sets, str)
                                    else list(self.product_mult_sets))
        if self.quotients is not None:
            out["quotients"] = [desc_to_json(d) for d in self.quotients]
        out.update(seed=self.seed, budget=self.budget, max_order=self.max_order)
        return out


def _freeze(mode: Any) -> Any:
    if isinstance(mode, str):
        return mode
    return tuple(json.dumps(m, sort_keys=True) for m in mode)


@lru_cache(maxsize=None)
def _catalog(ring: Ring, deltas, phis, mult_mode) -> Catalog:
    try:
        ds = default_expansions(ring) if deltas is None else tuple(
            expansion_from_json(d, ring) for d in deltas)
        ps = default_reductions() if phis is None else tuple(reduction_from_json(p, ring) for p in phis)
    except (MapError, IdealError) as exc:
        raise ConfigError(f"map literal does not fit {ring.name}: {exc}") from exc
    if mult_mode == "units":
        ms = unit_multsets(ring)
    elif mult_mode == "cyclic":
        ms = cyclic_multsets(ring)
    elif mult_mode == "all_cyclic":
        ms = cyclic_multsets(ring, allow_zero=True)
    else:
        try:
            ms = tuple(dict.fromkeys(multset_from_json(m, ring) for m in mult_mode))
        except MultSetError as exc:
            raise ConfigError(f"mult set does not fit {ring.name}: {exc}") from exc
    return Catalog(ring, ds, ps, ms)


def _ring_list(value: Any, key: str) -> tuple[RingDesc, ...]:
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be a list of ring literals")
    try:
        descs = tuple(desc_from_json(r) for r in value)
        for d in descs:
            build_ring(d)
        return descs
    except RingError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _literal_list(value: Any, key: str) -> tuple | None:
    if value == "default" or value is None:
        return None
    if not isinstance(value, list):
        raise ConfigError(f'{key} must be a list of literals or "default"')
    return tuple(v if isinstance(v, str) else json.dumps(v, sort_keys=True) for v in value)


def _mult_mode(value: Any, key: str) -> Any:
    if isinstance(value, str):
        return value
    if isinstance(value, list):
        return tuple(value)
    raise ConfigError(f"{key} must be one of {MULT_MODES} or a list of mult-set literals")


def _int(obj: dict, key: str, default: int) -> int:
    value = obj.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{key} must be an integer")
    return value


def config_from_json(obj: Any) -> CheckConfig:
    """Strict parse of a verify configuration document (unknown keys are errors)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    extra = set(obj) - _KEYS
    if extra:
        raise ConfigError(f"unknown config key(s) {sorted(extra)}")
    kwargs: dict[str, Any] = {}
    if "rings" in obj:
        kwargs["rings"] = _ring_list(obj["rings"], "rings")
    if "products" in obj:
        pairs = obj["products"]
        if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
            raise ConfigError("products must be a list of [left, right] ring pairs")
        kwargs["products"] = tuple(tuple(_ring_list(p, "products")) for p in pairs)
    if "quotients" in obj:
        kwargs["quotients"] = _ring_list(obj["quotients"], "quotients")
    for key in ("deltas", "phis", "product_phis"):
        if key in obj:
            kwargs[key] = _literal_list(obj[key], key)
    if "product_deltas" in obj:
        kwargs["product_deltas"] = _literal_list(obj["product_deltas"], "product_deltas") or PRODUCT_DELTAS
    for key in ("mult_sets", "product_mult_sets"):
        if key in obj:
            kwargs[key] = _mult_mode(obj[key], key)
    if "theorems" in obj:
        ids = obj["theorems"]
        if not isinstance(ids, list) or not all(isinstance(t, str) for t in ids):
            raise ConfigError("theorems must be a list of theorem ids")
        kwargs["theorems"] = tuple(ids)
    kwargs["seed"] = _int(obj, "seed", 0)
    kwargs["budget"] = _int(obj, "budget", 100)
    kwargs["max_order"] = _int(obj, "max_order", 40)
    cfg = CheckConfig(**kwargs)
    # surface literal errors now rather than mid-sweep
    for desc in cfg.rings + cfg.quotient_rings:
        cfg.catalog(desc)
    for pair in cfg.products:
        for desc in pair:
            cfg.factor_catalog(desc)
    return cfg


def load_config(path: str | Path) -> CheckConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_json(text)


def _z(n: int) -> ZMod:
    return ZMod(n)


def default_config() -> CheckConfig:
    """The shipped verify run: small cyclic rings, two quotient sources, and five product pairs.

    Every ring built from Z_n alone is a principal ideal ring, where nonzero weakly primary-type
    products never occur; the square-zero factor is what exercises that product case.
    """
    square_zero = SquareZero(2, 2)
    return CheckConfig(
        rings=(_z(12), _z(16), _z(18), _z(24), _z(36), square_zero),
        products=((_z(4), _z(3)), (_z(4), _z(9)), (_z(6), _z(8)), (_z(12), _z(2)), (square_zero, _z(2))),
        quotients=(_z(12), _z(36)),
    )


def product_desc(pair: tuple[RingDesc, RingDesc]) -> Product:
    return Product(pair[0], pair[1])
