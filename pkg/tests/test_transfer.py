from __future__ import annotations

import pytest

from phidelta.ideals import enumerate_ideals, generate, join_ideals, proper_ideals, zero_ideal
from phidelta.localize import mult_closure, trivial_multset
from phidelta.maps import IDENTITY, PHI_EMPTY, PHI_ZERO, RADICAL, PowerReduction
from phidelta.predicates import witness_set
from phidelta.rings import Product, SquareZero, ZMod, build_ring
from phidelta.transfer import HypothesisFailed, KernelNotContained, classify_product, product_hat, \
    product_multset, projection_epimorphism, pull_ideal, push_ideal, quotient_epimorphism, twin_zero_transport


def test_quotient_gates(z12):
    with pytest.raises(HypothesisFailed) as info:
        quotient_epimorphism(z12, generate(z12, [1]), IDENTITY, PHI_ZERO)
    assert info.value.gate == "kernel_proper"
    with pytest.raises(HypothesisFailed) as info:
        quotient_epimorphism(z12, generate(z12, [4]), IDENTITY, PHI_ZERO)
    assert info.value.gate == "kernel_fixed_by_phi"
    with pytest.raises(HypothesisFailed):
        quotient_epimorphism(z12, generate(z12, [4]), IDENTITY, PHI_EMPTY)


@pytest.mark.parametrize("kernel", [0, 2, 3, 4, 6])
def test_quotient_correspondence(z12, kernel):
    J = generate(z12, [kernel])
    f = quotient_epimorphism(z12, J, RADICAL, IDENTITY_REDUCTION)
    assert f.target.order == 12 // len(J)
    above = [I for I in enumerate_ideals(z12) if J <= I]
    assert sorted(push_ideal(f, I).bits for I in above) == sorted(K.bits for K in enumerate_ideals(f.target))
    for I in above:
        assert pull_ideal(f, push_ideal(f, I)) == I
    assert f.verify() is None


def test_push_needs_kernel(z12):
    f = quotient_epimorphism(z12, generate(z12, [4]), IDENTITY, IDENTITY_REDUCTION)
    with pytest.raises(KernelNotContained):
        push_ideal(f, generate(z12, [6]))


def test_quotient_transports_witnesses_and_twin_zeros(z12):
    J = generate(z12, [6])
    f = quotient_epimorphism(z12, J, RADICAL, IDENTITY_REDUCTION)
    S = mult_closure(z12, [5])
    for I in proper_ideals(z12):
        if not J <= I or S.meets(I):
            continue
        W = witness_set(I, f.phi, f.delta, S)
        WK = witness_set(push_ideal(f, I), f.psi, f.gamma, f.push_multset(S))
        assert {s for s in S.members if f(s) in WK} == set(W)
        for s in S.members:
            assert twin_zero_transport(f, I, S, s)


@pytest.mark.parametrize("axis", [0, 1])
def test_projection(axis):
    ring = build_ring(Product(ZMod(4), ZMod(3)))
    with pytest.raises(HypothesisFailed) as info:
        zero = product_hat(ring, RADICAL, PHI_ZERO, IDENTITY, PHI_ZERO)
        projection_epimorphism(ring, axis, zero.delta, zero.phi)
    assert info.value.gate == "structured_identities"
    maps = product_hat(ring, RADICAL, PHI_EMPTY, IDENTITY, PHI_EMPTY)
    f = projection_epimorphism(ring, axis, maps.delta, maps.phi)
    factor = (ring.left, ring.right)[axis]
    assert f.target is factor
    assert len(f.kernel) == ring.order // factor.order
    for K in enumerate_ideals(factor):
        assert push_ideal(f, pull_ideal(f, K)) == K


def _factors(m, n):
    ring = build_ring(Product(ZMod(m), ZMod(n)))
    return ring, ring.left, ring.right


def test_full_factor_case():
    ring, R1, R2 = _factors(4, 9)
    I1, I2 = generate(R1, [2]), generate(R2, [1])
    S1, S2 = trivial_multset(R1), trivial_multset(R2)
    for p in (PHI_ZERO, PHI_EMPTY):
        c = classify_product(I1, I2, product_hat(ring, RADICAL, p, RADICAL, p), S1, S2)
        assert c.case == "product_full_factor" and c.agreement
        assert c.direct == c.direct_classical == {(1, 1)}
    c = classify_product(I1, I2, product_hat(ring, RADICAL, PowerReduction(2), RADICAL, PowerReduction(2)), S1, S2)
    assert c.case == "product_full_factor_nonclassical" and c.agreement


def test_whole_product_is_rejected():
    ring, R1, R2 = _factors(4, 9)
    with pytest.raises(HypothesisFailed) as info:
        classify_product(generate(R1, [1]), generate(R2, [1]), product_hat(ring, IDENTITY, PHI_ZERO, IDENTITY,
                                                                           PHI_ZERO),
                         trivial_multset(R1), trivial_multset(R2))
    assert info.value.gate == "product_proper"


@pytest.mark.parametrize("m,n", [(4, 9), (6, 8), (4, 3)])
@pytest.mark.parametrize("phi", [PHI_EMPTY, PHI_ZERO, PowerReduction(2)], ids=str)
def test_classification_agrees_with_direct_decision(m, n, phi):
    ring, R1, R2 = _factors(m, n)
    maps = product_hat(ring, RADICAL, phi, RADICAL, phi)
    S1, S2 = trivial_multset(R1), trivial_multset(R2)
    for I1 in enumerate_ideals(R1):
        for I2 in enumerate_ideals(R2):
            if I1.is_whole and I2.is_whole:
                continue
            c = classify_product(I1, I2, maps, S1, S2)
            if c.predicted is not None:
                assert c.agreement, c.to_json()


def test_product_multset_and_join():
    ring, R1, R2 = _factors(4, 3)
    S = product_multset(ring, mult_closure(R1, [3]), trivial_multset(R2))
    assert sorted(ring.unpair(s) for s in S.members) == [(1, 1), (3, 1)]
    I = join_ideals(ring, zero_ideal(R1), generate(R2, [1]))
    assert len(I) == 3


def test_square_zero_weakly_product():
    # (x1) is weakly prime but not prime in F_2[x1,x2]/(x1,x2)^2, since x1 * x2 = 0
    ring = build_ring(Product(SquareZero(2, 2), ZMod(2)))
    R1, R2 = ring.left, ring.right
    I1 = generate(R1, [2])
    assert I1.members == (0, 2) and R1.label(2) == "x1"
    maps = product_hat(ring, IDENTITY, PHI_ZERO, IDENTITY, PHI_ZERO)
    c = classify_product(I1, zero_ideal(R2), maps, trivial_multset(R1), mult_closure(R2, [0]))
    assert c.case == "product_nonclassical" and c.agreement
    assert c.direct_classical == frozenset() and c.direct == {(R1.one, 0)}


class _Identity:
    """The reduction phi(I) = I, which fixes every kernel."""

    def __call__(self, I):
        return I

    def __str__(self):
        return "phi_1"


IDENTITY_REDUCTION = _Identity()
