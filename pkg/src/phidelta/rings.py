"""Finite commutative rings with unity built from Z_n, products and quotients.

Elements are canonical indices ``0..order-1``. Index 0 is always the additive
zero. Products index pairs lexicographically (``a * |right| + b``); quotients
index cosets by increasing least base representative.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Union

import numpy as np

from .bitset import close_ideal_mask, mask_to_bits


class RingError(ValueError):
    """A ring description is malformed or would produce the zero ring."""


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class Product:
    left: RingDesc
    right: RingDesc


@dataclass(frozen=True)
class Quotient:
    base: RingDesc
    gens: tuple[int, ...]


@dataclass(frozen=True)
class SquareZero:
    """F_p[x_1..x_k]/(x_1..x_k)^2: a local ring whose maximal ideal squares to zero."""

    p: int
    k: int


RingDesc = Union[ZMod, Product, Quotient, SquareZero]


def _expect_keys(obj: dict, allowed: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise RingError(f"unknown key(s) {sorted(extra)} in {where}")
    missing = allowed - set(obj)
    if missing:
        raise RingError(f"missing key(s) {sorted(missing)} in {where}")


def desc_from_json(obj: Any) -> RingDesc:
    """Parse the JSON ring grammar (strict: unknown keys are errors)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "type" not in obj:
        raise RingError(f"ring description must be an object with a 'type': {obj!r}")
    kind = obj["type"]
    if kind == "zmod":
        _expect_keys(obj, {"type", "n"}, "zmod ring")
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise RingError(f"zmod modulus must be an integer, got {n!r}")
        return ZMod(n)
    if kind == "product":
        _expect_keys(obj, {"type", "left", "right"}, "product ring")
        return Product(desc_from_json(obj["left"]), desc_from_json(obj["right"]))
    if kind == "quotient":
        _expect_keys(obj, {"type", "base", "gens"}, "quotient ring")
        gens = obj["gens"]
        if not isinstance(gens, list) or not all(isinstance(g, int) for g in gens):
            raise RingError("quotient gens must be a list of element indices")
        return Quotient(desc_from_json(obj["base"]), tuple(gens))
    if kind == "square_zero":
        _expect_keys(obj, {"type", "p", "k"}, "square_zero ring")
        p, k = obj["p"], obj["k"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (p, k)):
            raise RingError("square_zero p and k must be integers")
        return SquareZero(p, k)
    raise RingError(f"unknown ring type {kind!r}")


def desc_to_json(desc: RingDesc) -> dict:
    if isinstance(desc, ZMod):
        return {"type": "zmod", "n": desc.n}
    if isinstance(desc, Product):
        return {"type": "product", "left": desc_to_json(desc.left), "right": desc_to_json(desc.right)}
    if isinstance(desc, Quotient):
        return {"type": "quotient", "base": desc_to_json(desc.base), "gens": list(desc.gens)}
    if isinstance(desc, SquareZero):
        return {"type": "square_zero", "p": desc.p, "k": desc.k}
    raise TypeError(f"not a ring description: {desc!r}")


def desc_name(desc: Any) -> str:
    if isinstance(desc, ZMod):
        return f"Z_{desc.n}"
    if isinstance(desc, Product):
        return f"{desc_name(desc.left)} x {desc_name(desc.right)}"
    if isinstance(desc, Quotient):
        inner = desc_name(desc.base)
        if isinstance(desc.base, Product):
            inner = f"({inner})"
        return f"{inner}/({','.join(map(str, desc.gens))})"
    if isinstance(desc, SquareZero):
        xs = ",".join(f"x{i + 1}" for i in range(desc.k))
        return f"F_{desc.p}[{xs}]/({xs})^2"
    return str(desc)


class Ring:
    """Base class: a finite commutative ring with 1 != 0 on indices 0..order-1."""

    desc: Any
    order: int
    one: int

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    zero = 0

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def name(self) -> str:
        return desc_name(self.desc)

    @cached_property
    def add_table(self) -> np.ndarray:
        add, mul = self._tables()
        self.__dict__["mul_table"] = mul
        return add

    @cached_property
    def mul_table(self) -> np.ndarray:
        add, mul = self._tables()
        self.__dict__["add_table"] = add
        return mul

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.argmax(self.add_table == 0, axis=1)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def power(self, a: int, k: int) -> int:
        result = self.one
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def label(self, x: int) -> str:
        return str(x)

    def to_json(self) -> dict:
        return desc_to_json(self.desc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self.desc == other.desc

    def __hash__(self) -> int:
        return hash(self.desc)

    def __repr__(self) -> str:
        return f"<Ring {self.name} order={self.order}>"


class ZModRing(Ring):
    def __init__(self, desc: ZMod):
        if desc.n < 2:
            raise RingError(f"Z_n needs n >= 2 (1 != 0), got n={desc.n}")
        self.desc = desc
        self.n = desc.n
        self.order = desc.n
        self.one = 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.n

    def _tables(self):
        ar = np.arange(self.n, dtype=np.intp)
        return np.add.outer(ar, ar) % self.n, np.multiply.outer(ar, ar) % self.n


class ProductRing(Ring):
    def __init__(self, desc: Product):
        self.desc = desc
        self.left = build_ring(desc.left)
        self.right = build_ring(desc.right)
        self.order = self.left.order * self.right.order
        self.one = self.pair(self.left.one, self.right.one)

    def pair(self, a: int, b: int) -> int:
        return a * self.right.order + b

    def unpair(self, x: int) -> tuple[int, int]:
        return divmod(x, self.right.order)

    def add(self, a: int, b: int) -> int:
        (a1, a2), (b1, b2) = self.unpair(a), self.unpair(b)
        return self.pair(self.left.add(a1, b1), self.right.add(a2, b2))

    def mul(self, a: int, b: int) -> int:
        (a1, a2), (b1, b2) = self.unpair(a), self.unpair(b)
        return self.pair(self.left.mul(a1, b1), self.right.mul(a2, b2))

    def _tables(self):
        m = self.right.order
        first, second = np.divmod(np.arange(self.order, dtype=np.intp), m)
        f, s = np.ix_(first, first), np.ix_(second, second)
        add = self.left.add_table[f] * m + self.right.add_table[s]
        mul = self.left.mul_table[f] * m + self.right.mul_table[s]
        return add, mul

    def label(self, x: int) -> str:
        a, b = self.unpair(x)
        return f"({self.left.label(a)},{self.right.label(b)})"


class QuotientRing(Ring):
    """R/J with J generated by ``desc.gens``; precomputes coset tables."""

    def __init__(self, desc: Quotient):
        self.desc = desc
        self.base = build_ring(desc.base)
        for g in desc.gens:
            if not 0 <= g < self.base.order:
                raise RingError(f"quotient generator {g} is not an element of {self.base.name}")
        kernel = close_ideal_mask(self.base.add_table, self.base.mul_table, desc.gens)
        if kernel[self.base.one]:
            raise RingError("quotient by the unit ideal would give the zero ring")
        self.kernel_bits = mask_to_bits(kernel)
        n = self.base.order
        canon = np.full(n, -1, dtype=np.intp)
        reps = []
        kidx = np.flatnonzero(kernel)
        for x in range(n):
            if canon[x] >= 0:
                continue
            canon[self.base.add_table[x, kidx]] = len(reps)
            reps.append(x)
        self.canon = canon
        self.reps = np.array(reps, dtype=np.intp)
        self.order = len(reps)
        self.one = int(canon[self.base.one])

    def project(self, x: int) -> int:
        """Coset index of a base-ring element."""
        return int(self.canon[x])

    def lift(self, x: int) -> int:
        """Least base representative of a coset."""
        return int(self.reps[x])

    def add(self, a: int, b: int) -> int:
        return int(self.canon[self.base.add(int(self.reps[a]), int(self.reps[b]))])

    def mul(self, a: int, b: int) -> int:
        return int(self.canon[self.base.mul(int(self.reps[a]), int(self.reps[b]))])

    def _tables(self):
        grid = np.ix_(self.reps, self.reps)
        return self.canon[self.base.add_table[grid]], self.canon[self.base.mul_table[grid]]

    def label(self, x: int) -> str:
        return f"[{self.base.label(int(self.reps[x]))}]"


class SquareZeroRing(Ring):
    """Elements a + v_1 x_1 + ... + v_k x_k stored as base-p digits (a, v_1, ..., v_k), a most significant."""

    MAX_ORDER = 4096

    def __init__(self, desc: SquareZero):
        p, k = desc.p, desc.k
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise RingError(f"square_zero needs a prime p, got {p}")
        if k < 1:
            raise RingError(f"square_zero needs k >= 1, got {k}")
        if p ** (k + 1) > self.MAX_ORDER:
            raise RingError(f"square_zero ring of order {p}^{k + 1} is too large")
        self.desc = desc
        self.p, self.k = p, k
        self.order = p ** (k + 1)
        self.one = p ** k

    def _digits(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.intp)
        weights = self.p ** np.arange(self.k, -1, -1)
        return (idx[:, None] // weights) % self.p

    def _index(self, digits: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.k, -1, -1)
        return (digits % self.p) @ weights

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def _tables(self):
        d = self._digits()
        x, y = d[:, None, :], d[None, :, :]
        add = self._index(x + y)
        prod = x[..., :1] * y + y[..., :1] * x
        prod[..., 0] = x[..., 0] * y[..., 0]
        return add.astype(np.intp), self._index(prod).astype(np.intp)

    def label(self, x: int) -> str:
        a, *v = (int(t) for t in self._digits()[x])
        terms = [str(a)] if a else []
        terms += [f"{c}x{i + 1}" if c != 1 else f"x{i + 1}" for i, c in enumerate(v) if c]
        return "+".join(terms) or "0"


class TableRing(Ring):
    """A ring given directly by operation tables (used for localizations)."""

    def __init__(self, desc: Any, add: np.ndarray, mul: np.ndarray, one: int,
                 labels: list[str] | None = None, name: str | None = None):
        if add.shape[0] < 2:
            raise RingError("table ring must have 1 != 0")
        self.desc = desc
        self.order = add.shape[0]
        self.one = one
        self.__dict__["add_table"] = add
        self.__dict__["mul_table"] = mul
        self._labels = labels
        self._name = name

    @property
    def name(self) -> str:
        return self._name or desc_name(self.desc)

    def to_json(self) -> dict:
        raise RingError("table rings have no JSON description")

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def _tables(self):
        return self.add_table, self.mul_table

    def label(self, x: int) -> str:
        return self._labels[x] if self._labels else str(x)


@lru_cache(maxsize=None)
def build_ring(desc: RingDesc) -> Ring:
    """Construct (and memoize) the ring for a description."""
    if isinstance(desc, ZMod):
        return ZModRing(desc)
    if isinstance(desc, Product):
        return ProductRing(desc)
    if isinstance(desc, Quotient):
        return QuotientRing(desc)
    if isinstance(desc, SquareZero):
        return SquareZeroRing(desc)
    raise RingError(f"not a ring description: {desc!r}")


def parse_ring(obj: Any) -> Ring:
    return build_ring(desc_from_json(obj))


def zmod(n: int) -> Ring:
    return build_ring(ZMod(n))


def product(left: Ring | RingDesc, right: Ring | RingDesc) -> Ring:
    left = left.desc if isinstance(left, Ring) else left
    right = right.desc if isinstance(right, Ring) else right
    return build_ring(Product(left, right))


def quotient(base: Ring | RingDesc, gens) -> Ring:
    base = base.desc if isinstance(base, Ring) else base
    return build_ring(Quotient(base, tuple(int(g) for g in gens)))


def units(ring: Ring) -> frozenset[int]:
    """All u with u*v = 1 for some v."""
    hits = (ring.mul_table == ring.one).any(axis=1)
    return frozenset(int(u) for u in np.flatnonzero(hits))


def is_field(ring: Ring) -> bool:
    return len(units(ring)) == ring.order - 1
