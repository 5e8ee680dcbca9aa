from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from phidelta.ideals import EMPTY, enumerate_ideals, generate, ideal_power, zero_ideal
from phidelta.maps import IDENTITY, PHI_EMPTY, PHI_IDENTITY, PHI_OMEGA, PHI_ZERO, RADICAL, ColonExpansion, \
    MapError, PlusExpansion, PowerReduction, TableExpansion, check_expansion_axioms, check_reduction_axioms, \
    default_expansions, default_reductions, expansion_from_json, leq, reduction_from_json
from phidelta.rings import SquareZero, build_ring, product, zmod

CHAIN = [PHI_EMPTY, PHI_ZERO, PHI_OMEGA] + [PowerReduction(n) for n in (5, 4, 3, 2)] + [PHI_IDENTITY]


def test_catalog_values_on_z12(z12):
    I = generate(z12, [4])
    assert RADICAL(I) == generate(z12, [2])
    assert IDENTITY(I) is I
    assert PlusExpansion(generate(z12, [6]))(I) == generate(z12, [2])
    assert PowerReduction(2)(I).members == (0, 4, 8)
    assert PHI_EMPTY(I) is EMPTY
    assert PHI_ZERO(I) == zero_ideal(z12)
    assert PHI_OMEGA(generate(z12, [2])) == generate(z12, [4])
    assert PHI_IDENTITY(I) == I


def test_omega_is_the_stable_power():
    ring = zmod(16)
    J = generate(ring, [2])
    assert PHI_OMEGA(J) == zero_ideal(ring) == ideal_power(J, 4)


@pytest.mark.parametrize("ring", [zmod(12), zmod(36), product(zmod(4), zmod(9)), build_ring(SquareZero(2, 2))],
                         ids=lambda r: r.name)
def test_catalogs_satisfy_axioms(ring):
    assert all(check_expansion_axioms(d, ring) for d in default_expansions(ring))
    assert all(check_reduction_axioms(p, ring) for p in default_reductions())


@pytest.mark.parametrize("n", list(range(2, 37)))
def test_reduction_chain(n):
    ring = zmod(n)
    for lower, upper in zip(CHAIN, CHAIN[1:]):
        assert leq(lower, upper, ring)


def test_expansion_order(z12):
    assert leq(IDENTITY, RADICAL, z12)
    assert not leq(RADICAL, IDENTITY, z12)
    with pytest.raises(MapError):
        leq(IDENTITY, PHI_ZERO, z12)


def test_broken_maps_are_rejected(z12):
    to_zero = TableExpansion(z12, {I.bits: 1 for I in enumerate_ideals(z12)})
    assert not check_expansion_axioms(to_zero, z12)
    rows = [[list(I.members), [0]] for I in enumerate_ideals(z12)]
    with pytest.raises(MapError, match="axioms"):
        expansion_from_json({"table": rows}, z12)
    # not monotone: (0) <= (6) but (6) goes to EMPTY while (0) stays put
    bad = [[list(I.members), None if I.members == (0, 6) else list(I.members)] for I in enumerate_ideals(z12)]
    with pytest.raises(MapError, match="axioms"):
        reduction_from_json({"table": bad}, z12)


def test_table_literals_round_trip(z12):
    delta = expansion_from_json({"table": [[list(I.members), list(RADICAL(I).members)]
                                           for I in enumerate_ideals(z12)]}, z12)
    assert all(delta(I) == RADICAL(I) for I in enumerate_ideals(z12))
    again = expansion_from_json(delta.to_json(), z12)
    assert again == delta


@pytest.mark.parametrize("text", ['"radical"', "identity", '{"plus":{"gens":[6]}}', '{"colon_by":{"gens":[2]}}',
                                  '{"sum":["radical",{"plus":{"gens":[3]}}]}', '{"meet":["radical",{"plus":{"gens":[6]}}]}',
                                  '{"compose":["radical",{"plus":{"gens":[4]}}]}'])
def test_expansion_literals_round_trip(z12, text):
    delta = expansion_from_json(text, z12)
    assert check_expansion_axioms(delta, z12)
    back = expansion_from_json(json.dumps(delta.to_json()), z12)
    assert all(back(I) == delta(I) for I in enumerate_ideals(z12))


@pytest.mark.parametrize("text", ["empty", "zero", "omega", "identity", '{"power":3}'])
def test_reduction_literals_round_trip(text):
    phi = reduction_from_json(text)
    assert reduction_from_json(json.dumps(phi.to_json())) == phi


@pytest.mark.parametrize("bad", ["sqrt", '{"power":1}', '{"power":"2"}', '{"power":2,"x":1}'])
def test_bad_reduction_literals(bad):
    with pytest.raises(MapError):
        reduction_from_json(bad)


def test_colon_expansion_values(z12):
    delta = ColonExpansion(generate(z12, [2]))
    assert delta(generate(z12, [4])) == generate(z12, [2])
    assert delta(zero_ideal(z12)) == generate(z12, [6])


@given(st.integers(2, 40), st.data())
def test_catalog_axioms_hypothesis(n, data):
    ring = zmod(n)
    delta = data.draw(st.sampled_from(default_expansions(ring)))
    phi = data.draw(st.sampled_from(default_reductions()))
    ideals = enumerate_ideals(ring)
    I = data.draw(st.sampled_from(ideals))
    K = data.draw(st.sampled_from(ideals))
    assert I <= delta(I) and phi(I) <= I
    if I <= K:
        assert delta(I) <= delta(K) and phi(I) <= phi(K)
