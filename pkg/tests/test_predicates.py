from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from phidelta.ideals import EMPTY, Ideal, generate, proper_ideals, zero_ideal
from phidelta.localize import mult_closure, trivial_multset
from phidelta.maps import IDENTITY, PHI_EMPTY, PHI_ZERO, RADICAL, PowerReduction, default_expansions, \
    default_reductions
from phidelta.predicates import MeetsS, NotProper, PreconditionFailed, char_colon_I, char_colon_delta, \
    char_ideal_pairs, condition_holds, is_free_twin_zero, is_free_twin_zero_global, is_phi_delta_S_primary, \
    is_primary, is_prime, is_weakly_primary, twin_zeros, witness_set
from phidelta.rings import Product, SquareZero, ZMod, build_ring, zmod

import oracles

PLAIN = {
    ZMod(12): oracles.plain_zmod(12),
    ZMod(18): oracles.plain_zmod(18),
    Product(ZMod(2), ZMod(4)): oracles.plain_product(2, 4),
    Product(ZMod(4), ZMod(3)): oracles.plain_product(4, 3),
    SquareZero(2, 2): oracles.plain_square_zero(2, 2),
    SquareZero(3, 1): oracles.plain_square_zero(3, 1),
}


def _image(J):
    return None if J is EMPTY else frozenset(J.members)


@given(st.sampled_from(sorted(PLAIN, key=str)), st.data())
def test_witnesses_match_brute_force(desc, data):
    ring, plain = build_ring(desc), PLAIN[desc]
    phi = data.draw(st.sampled_from(default_reductions()))
    delta = data.draw(st.sampled_from(default_expansions(ring)))
    S = mult_closure(ring, data.draw(st.lists(st.integers(0, ring.order - 1), max_size=2)))
    for I in proper_ideals(ring):
        if S.meets(I):
            continue
        expected = oracles.witnesses(plain, frozenset(I.members), _image(phi(I)), frozenset(delta(I).members),
                                     S.members)
        assert sorted(witness_set(I, phi, delta, S)) == expected


def test_primary_ideal_with_radical(z12):
    report = is_phi_delta_S_primary(generate(z12, [4]), PHI_EMPTY, RADICAL)
    assert report.witnesses == (1,) and report.counterexample is None


def test_non_prime_counterexample(z12):
    report = is_prime(generate(z12, [4]))
    assert not report.holds
    cx = report.counterexample
    assert (cx.a, cx.b, cx.ab, cx.sa, cx.sb) == (2, 2, 4, 2, 2) and not cx.ab_in_phi


def test_zero_ideal_of_z12(z12):
    zero, S = zero_ideal(z12), mult_closure(z12, [5])
    assert is_phi_delta_S_primary(zero, PowerReduction(2), RADICAL, S).witnesses == (1, 5)
    report = is_phi_delta_S_primary(zero, PHI_EMPTY, RADICAL, S)
    assert not report.holds
    # 3 * 4 = 0 with 5*3 = 3 outside (0) and 5*4 = 8 outside the radical (0)
    assert not condition_holds(zero, PHI_EMPTY, RADICAL, 5)
    assert z12.mul(3, 4) == 0 and z12.mul(5, 3) == 3 and z12.mul(5, 4) == 8
    assert 8 not in RADICAL(zero)


def test_z80_witnesses(z80):
    I = generate(z80, [20])
    S = mult_closure(z80, [5])
    assert is_phi_delta_S_primary(I, PHI_ZERO, RADICAL, S).witnesses == (5, 25, 45, 65)
    cx = is_phi_delta_S_primary(I, PHI_ZERO, RADICAL, trivial_multset(z80)).counterexample
    assert (cx.a, cx.b) == (4, 5)


def test_standing_hypotheses(z12):
    with pytest.raises(NotProper):
        witness_set(generate(z12, [1]), PHI_EMPTY, IDENTITY, trivial_multset(z12))
    with pytest.raises(MeetsS):
        witness_set(generate(z12, [2]), PHI_EMPTY, IDENTITY, mult_closure(z12, [2]))


@pytest.mark.parametrize("desc", [ZMod(12), ZMod(16), Product(ZMod(2), ZMod(4)), SquareZero(2, 2)])
def test_characterizations_agree(desc):
    ring = build_ring(desc)
    for phi in default_reductions():
        for delta in default_expansions(ring):
            for S in (trivial_multset(ring), mult_closure(ring, [ring.order - 1])):
                for I in proper_ideals(ring):
                    if S.meets(I):
                        continue
                    W = witness_set(I, phi, delta, S)
                    for s in S.members:
                        expected = s in W
                        assert char_colon_delta(I, phi, delta, S, s) == expected
                        assert char_colon_I(I, phi, delta, S, s) == expected
                        assert char_ideal_pairs(I, phi, delta, S, s) == expected


def test_named_predicates_nest(z12):
    for I in proper_ideals(z12):
        if is_prime(I).holds:
            assert is_primary(I).holds
        if is_primary(I).holds:
            assert is_weakly_primary(I).holds


def test_zero_ideal_primary_in_non_domain():
    # Z_4 is not a domain, yet (0) is primary and every weakly primary ideal is primary
    ring = zmod(4)
    assert not is_prime(zero_ideal(ring)).holds
    assert is_primary(zero_ideal(ring)).holds
    assert all(is_primary(I).holds for I in proper_ideals(ring) if is_weakly_primary(I).holds)


def test_square_zero_ring_has_weakly_nonclassical_zero():
    ring = build_ring(SquareZero(2, 2))
    assert is_phi_delta_S_primary(zero_ideal(ring), PHI_ZERO, IDENTITY).holds
    assert not is_prime(zero_ideal(ring)).holds


def test_twin_zeros(z12):
    zero, S = zero_ideal(z12), mult_closure(z12, [5])
    # phi_2 fixes (0), so its twin zeros are those of phi_0
    pairs = [(t.a, t.b) for t in twin_zeros(zero, PHI_ZERO, RADICAL, S, 5)]
    assert [(t.a, t.b) for t in twin_zeros(zero, PowerReduction(2), RADICAL, S, 5)] == pairs
    assert (3, 4) in pairs and all(z12.mul(a, b) == 0 for a, b in pairs)
    assert twin_zeros(zero, PHI_EMPTY, RADICAL, S, 5) == []


def test_free_twin_zero(z12):
    I, S = generate(z12, [4]), trivial_multset(z12)
    A, B = generate(z12, [2]), generate(z12, [2])
    assert is_free_twin_zero(I, PHI_ZERO, RADICAL, S, 1, A, B)
    with pytest.raises(PreconditionFailed):
        is_free_twin_zero(I, PHI_ZERO, RADICAL, S, 1, generate(z12, [3]), A)
    with pytest.raises(PreconditionFailed):
        is_free_twin_zero(I, PhiConst(I), RADICAL, S, 1, A, B)
    # 1 is a witness for (4), so no qualifying pair carries a twin zero
    assert is_free_twin_zero_global(I, PHI_ZERO, RADICAL, S, 1)


class PhiConst:
    """A reduction returning a fixed ideal, for exercising the precondition."""

    def __init__(self, J: Ideal):
        self.J = J

    def __call__(self, I):
        return self.J


@pytest.mark.parametrize("n", [8, 12, 18, 30])
def test_witness_set_is_multiplicatively_upward(n):
    # s a witness and t in S imply st is a witness
    ring = zmod(n)
    S = mult_closure(ring, [u for u in range(1, n) if ring.mul(u, u) != 0][:2])
    for I in proper_ideals(ring):
        if S.meets(I):
            continue
        W = witness_set(I, PHI_ZERO, RADICAL, S)
        assert all(ring.mul(s, t) in W for s in W for t in S.members)

