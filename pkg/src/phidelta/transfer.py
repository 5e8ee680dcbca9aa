"""Quotient maps and product projections carrying paired (delta, phi) data, and product-ring classification."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bitset import mask_to_bits
from .ideals import EMPTY, Ideal, IdealError, ReductionImage, canonical, enumerate_ideals, join_ideals
from .localize import MultSet
from .maps import Expansion, ProductExpansion, ProductReduction, Reduction, TableExpansion, TableReduction
from .predicates import witness_set
from .rings import ProductRing, Ring, quotient


class HypothesisFailed(ValueError):
    """A named hypothesis of a transfer construction does not hold."""

    def __init__(self, gate: str, message: str = ""):
        self.gate = gate
        super().__init__(f"{gate}: {message}" if message else gate)


class KernelNotContained(IdealError):
    """Pushing an ideal forward needs it to contain the kernel."""


@dataclass(eq=False)
class StructuredEpimorphism:
    """A surjective ring map f with (delta, phi) on the source and induced (gamma, psi) on the target."""

    source: Ring
    target: Ring
    image: np.ndarray = field(repr=False)
    kernel: Ideal
    variant: str
    delta: Expansion
    phi: Reduction
    gamma: Expansion
    psi: Reduction

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def verify(self) -> Optional[str]:
        """First target ideal breaking delta(f^-1 K) = f^-1 gamma(K) or phi(f^-1 K) = f^-1 psi(K)."""
        for K in enumerate_ideals(self.target):
            L = pull_ideal(self, K)
            if self.delta(L) != pull_ideal(self, self.gamma(K)):
                return f"delta identity fails at {K!r}"
            lhs, rhs = self.phi(L), pull_image(self, self.psi(K))
            if (lhs is EMPTY) != (rhs is EMPTY) or (lhs is not EMPTY and lhs != rhs):
                return f"phi identity fails at {K!r}"
        return None

    def push_multset(self, S: MultSet) -> MultSet:
        bits = 0
        for s in S.members:
            bits |= 1 << self(s)
        return MultSet(self.target, bits)


def push_ideal(f: StructuredEpimorphism, I: Ideal) -> Ideal:
    if not f.kernel <= I:
        raise KernelNotContained(f"{I!r} does not contain the kernel {f.kernel!r}")
    mask = np.zeros(f.target.order, dtype=bool)
    mask[f.image[I.index]] = True
    return Ideal(f.target, mask_to_bits(mask))


def push_image(f: StructuredEpimorphism, I: ReductionImage) -> ReductionImage:
    return EMPTY if I is EMPTY else push_ideal(f, I)


def pull_ideal(f: StructuredEpimorphism, K: Ideal) -> Ideal:
    return Ideal(f.source, mask_to_bits(K.mask[f.image]))


def pull_image(f: StructuredEpimorphism, K: ReductionImage) -> ReductionImage:
    return EMPTY if K is EMPTY else pull_ideal(f, K)


def quotient_epimorphism(R: Ring, J: Ideal, delta: Expansion, phi: Reduction) -> StructuredEpimorphism:
    """r -> r + J with gamma(L/J) = delta(L)/J and psi(L/J) = phi(L)/J on ideals L containing J."""
    if not J.is_proper:
        raise HypothesisFailed("kernel_proper", f"{J!r} is the whole ring")
    phiJ = phi(J)
    if phiJ is EMPTY or phiJ != J:
        raise HypothesisFailed("kernel_fixed_by_phi", f"phi({J!r}) = {phiJ!r} differs from J")
    gens = canonical(J).gens
    Q = quotient(R, gens)
    f = StructuredEpimorphism(R, Q, Q.canon, J, "quotient", delta, phi, None, None)  # type: ignore[arg-type]
    g_table, p_table = {}, {}
    for K in enumerate_ideals(Q):
        L = pull_ideal(f, K)
        g_table[K.bits] = push_ideal(f, delta(L)).bits
        img = phi(L)
        p_table[K.bits] = None if img is EMPTY else push_ideal(f, img).bits
    f.gamma = TableExpansion(Q, g_table, f"{delta}/J")
    f.psi = TableReduction(Q, p_table, f"{phi}/J")
    problem = f.verify()
    if problem:
        raise HypothesisFailed("structured_identities", problem)
    return f


def projection_epimorphism(R: ProductRing, axis: int, delta: ProductExpansion,
                           phi: ProductReduction) -> StructuredEpimorphism:
    """Projection of R1 x R2 onto one factor, carrying the factor maps as (gamma, psi)."""
    first, second = np.divmod(np.arange(R.order), R.right.order)
    if axis == 0:
        target, image, gamma, psi = R.left, first, delta.left, phi.left
        kernel = join_ideals(R, Ideal(R.left, 1), Ideal(R.right, (1 << R.right.order) - 1))
    else:
        target, image, gamma, psi = R.right, second, delta.right, phi.right
        kernel = join_ideals(R, Ideal(R.left, (1 << R.left.order) - 1), Ideal(R.right, 1))
    f = StructuredEpimorphism(R, target, image, kernel, f"projection{axis}", delta, phi, gamma, psi)
    problem = f.verify()
    if problem:
        raise HypothesisFailed("structured_identities", problem)
    return f


def twin_zero_transport(f: StructuredEpimorphism, I: Ideal, S: MultSet, s: int) -> bool:
    """(a, b) is a twin zero of I exactly when (f a, f b) is one of f(I), over all pairs."""
    from .predicates import twin_zero_mask

    if not f.kernel <= I:
        raise KernelNotContained(f"{I!r} does not contain the kernel")
    here = twin_zero_mask(I, f.phi, f.delta, s)
    there = twin_zero_mask(push_ideal(f, I), f.psi, f.gamma, f(s))
    return bool(np.array_equal(here, there[np.ix_(f.image, f.image)]))


@dataclass(frozen=True)
class ProductMaps:
    delta: ProductExpansion
    phi: ProductReduction


def product_hat(ring: ProductRing, delta1: Expansion, phi1: Reduction,
                delta2: Expansion, phi2: Reduction) -> ProductMaps:
    return ProductMaps(ProductExpansion(ring, delta1, delta2), ProductReduction(ring, phi1, phi2))


def product_multset(ring: ProductRing, S1: MultSet, S2: MultSet) -> MultSet:
    bits = 0
    for a in S1.members:
        for b in S2.members:
            bits |= 1 << ring.pair(a, b)
    return MultSet(ring, bits)


def factor_witnesses(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet) -> frozenset[int]:
    """Witness set, taken to be empty when I is not proper or meets S."""
    if not I.is_proper or S.meets(I):
        return frozenset()
    return witness_set(I, phi, delta, S)


def _empty_phi():
    from .maps import PHI_EMPTY

    return PHI_EMPTY


def standing_gates(I: Ideal, phi: Reduction, delta: Expansion, S: MultSet, side: str) -> dict[str, bool]:
    """The factorwise side conditions assumed before the classification theorems."""
    R = I.ring
    full = Ideal(R, (1 << R.order) - 1)
    img = phi(I)
    dI = delta(I)
    reduced = img is not EMPTY and img == I
    avoid = reduced or img is EMPTY or not S.meets(img)
    s_meets_d = S.bits & dI.bits
    same = not s_meets_d or (S.bits & I.bits) == s_meets_d
    expansion_proper = I == full or dI != full
    return {
        f"reduced_image_avoids_S_{side}": avoid,
        f"expansion_meets_S_like_ideal_{side}": same,
        f"expansion_proper_{side}": expansion_proper,
    }


@dataclass
class Classification:
    case: str
    factor_witnesses: dict
    gates_passed: list
    gates_failed: list
    predicted: Optional[frozenset]
    direct: frozenset
    direct_classical: frozenset

    @property
    def agreement(self) -> Optional[bool]:
        return None if self.predicted is None else self.predicted == self.direct

    def to_json(self) -> dict:
        def pairs(ws):
            return None if ws is None else [list(p) for p in sorted(ws)]

        return {
            "case": self.case,
            "factor_witnesses": self.factor_witnesses,
            "gates": {"passed": self.gates_passed, "failed": self.gates_failed},
            "predicted": pairs(self.predicted),
            "direct": pairs(self.direct),
            "agreement": self.agreement,
        }


def classify_product(I1: Ideal, I2: Ideal, maps: ProductMaps, S1: MultSet, S2: MultSet) -> Classification:
    """Predict the witness set of I1 x I2 from factor data and compare with the direct decision.

    Witness pairs are reported as (s1, s2). Cases: a full factor (split by whether
    the other factor's reduction fixes the whole ring), both factors unreduced,
    some factor reduced with I != phi(I), and I = phi(I) (every s is a witness).
    """
    ring: ProductRing = maps.delta.ring
    phi1, phi2 = maps.phi.left, maps.phi.right
    d1, d2 = maps.delta.left, maps.delta.right
    empty = _empty_phi()
    I = join_ideals(ring, I1, I2)
    S = product_multset(ring, S1, S2)
    if not I.is_proper:
        raise HypothesisFailed("product_proper", "I1 x I2 is the whole ring")
    if S.meets(I):
        raise HypothesisFailed("product_disjoint_from_S", "S1 x S2 meets I1 x I2")
    W = witness_set(I, maps.phi, maps.delta, S)
    Wcl = witness_set(I, empty, maps.delta, S)
    direct = frozenset(ring.unpair(w) for w in W)
    direct_cl = frozenset(ring.unpair(w) for w in Wcl)
    W1, W1c = factor_witnesses(I1, phi1, d1, S1), factor_witnesses(I1, empty, d1, S1)
    W2, W2c = factor_witnesses(I2, phi2, d2, S2), factor_witnesses(I2, empty, d2, S2)
    fw = {"left": sorted(W1), "right": sorted(W2), "left_classical": sorted(W1c), "right_classical": sorted(W2c)}
    pairs = [(a, b) for a in S1.members for b in S2.members]
    R1full, R2full = I1.is_whole, I2.is_whole
    phiI = maps.phi(I)

    def fixes_whole(phi: Reduction, R: Ring) -> bool:
        whole = Ideal(R, (1 << R.order) - 1)
        img = phi(whole)
        return img is not EMPTY and img == whole

    if R2full or R1full:
        if R2full:
            Wc, Wf, other_fixed = W1c, W1, fixes_whole(phi2, ring.right)
            pick = 0
        else:
            Wc, Wf, other_fixed = W2c, W2, fixes_whole(phi1, ring.left)
            pick = 1
        classical = frozenset(p for p in pairs if p[pick] in Wc)
        if not other_fixed:
            case, predicted = "product_full_factor", classical
        else:
            extra = frozenset(p for p in pairs if phiI is not EMPTY and p[pick] in Wf and p[pick] not in Wc)
            case, predicted = "product_full_factor_nonclassical", classical | extra
        return Classification(case, fw, ["full_factor"], [], predicted, direct, direct_cl)

    gates = {}
    gates.update(standing_gates(I1, phi1, d1, S1, "left"))
    gates.update(standing_gates(I2, phi2, d2, S2, "right"))
    passed = [g for g, ok in gates.items() if ok]
    failed = [g for g, ok in gates.items() if not ok]
    if failed:
        return Classification("ungated", fw, passed, failed, None, direct, direct_cl)
    in_I1 = lambda a: a in I1  # noqa: E731
    in_I2 = lambda b: b in I2  # noqa: E731
    classical = frozenset(
        (a, b) for a, b in pairs
        if (in_I2(b) and a in W1c) or (in_I1(a) and b in W2c)
    )
    img1, img2 = phi1(I1), phi2(I2)
    unreduced1 = img1 is EMPTY or img1 != I1
    unreduced2 = img2 is EMPTY or img2 != I2
    if unreduced1 and unreduced2:
        return Classification("product_classical", fw, passed + ["factors_not_reduced"], [],
                              classical, direct, direct_cl)
    if phiI is not EMPTY and phiI == I:
        return Classification("reduced", fw, passed, [], frozenset(pairs), direct, direct_cl)

    def strictly_between(img, J) -> bool:
        return (img is EMPTY or img != J) and J.is_proper

    extra = set()
    for a, b in pairs:
        if (strictly_between(img1, I1) and a in W1 and a not in W1c
                and not unreduced2 and b in img2):
            extra.add((a, b))
        if (strictly_between(img2, I2) and b in W2 and b not in W2c
                and not unreduced1 and a in img1):
            extra.add((a, b))
    return Classification("product_nonclassical", fw, passed + ["not_reduced"], [],
                          classical | frozenset(extra), direct, direct_cl)
