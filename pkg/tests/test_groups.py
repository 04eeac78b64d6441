import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_spectra.errors import GroupMismatch, InvalidGroupSpec
from cayley_spectra.groups import make_group, unit_group

from conftest import PROPERTY_EXAMPLES, abelian_groups


@pytest.mark.parametrize("orders, exponent, size", [([8], 8, 8), ([4, 4], 4, 16), ([6, 4], 12, 24), ([], 1, 1)])
def test_make_group(orders, exponent, size):
    G = make_group(orders)
    assert (G.exponent, G.size) == (exponent, size)
    assert list(G.orders) == orders


def test_orders_kept_verbatim():
    assert make_group([6, 4]).orders == (6, 4)


@pytest.mark.parametrize("orders", [[1], [0, 4], [-3]])
def test_bad_orders(orders):
    with pytest.raises(InvalidGroupSpec):
        make_group(orders)


def test_trivial_group():
    G = make_group([])
    assert G.elements == ((),)
    assert G.identity == ()


def test_add_neg(z8):
    assert z8.add((5,), (5,)) == (2,)
    assert z8.neg((3,)) == (5,)
    G = make_group([4, 4])
    assert G.add((3, 2), (2, 3)) == (1, 1)


def test_mismatch(z8):
    with pytest.raises(GroupMismatch):
        z8.add((1, 1), (1,))
    with pytest.raises(GroupMismatch):
        z8.add((8,), (1,))


def test_scalar_mul(z8):
    assert z8.scalar_mul(3, (1,)) == (3,)
    assert z8.scalar_mul(7, (2,)) == (6,)
    assert make_group([4, 4]).scalar_mul(5, (1, 1)) == (1, 1)


def test_element_accepts_bare_int(z8):
    assert z8.element(13) == (5,)


@pytest.mark.parametrize("n, units", [
    (8, (1, 3, 5, 7)),
    (30, (1, 7, 11, 13, 17, 19, 23, 29)),
    (2, (1,)),
    (1, (1,)),
])
def test_unit_group(n, units):
    assert unit_group(n).units == units


@pytest.mark.parametrize("n", range(1, 80))
def test_unit_group_is_group(n):
    U = unit_group(n)
    assert len(U) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    if n > 1:
        assert all((a * b) % n in U.units for a in U for b in U)


def test_character_values(z8):
    assert z8.character_value((0,), (3,)) == 1
    assert abs(z8.character_value((1,), (2,)) - 1j) < 1e-12
    G = make_group([4, 4])
    assert abs(G.character_value((1, 1), (1, 3)) - 1) < 1e-12


@settings(max_examples=PROPERTY_EXAMPLES)
@given(abelian_groups(max_size=36), st.data())
def test_scalar_action_bijective(G, data):
    k = data.draw(st.sampled_from(unit_group(G.exponent).units))
    image = {G.scalar_mul(k, g) for g in G.elements}
    assert len(image) == G.size
    for g in G.elements:
        assert G.exponent % G.element_order(g) == 0


@settings(max_examples=PROPERTY_EXAMPLES)
@given(abelian_groups(max_size=36), st.data())
def test_character_orthogonality_and_multiplicativity(G, data):
    h = data.draw(st.sampled_from(G.elements))
    g1 = data.draw(st.sampled_from(G.elements))
    g2 = data.draw(st.sampled_from(G.elements))
    total = sum(G.character_value(h, g) for g in G.elements)
    expected = G.size if h == G.identity else 0
    assert abs(total - expected) < 1e-10 * G.size
    lhs = G.character_value(h, G.add(g1, g2))
    assert abs(lhs - G.character_value(h, g1) * G.character_value(h, g2)) < 1e-10
    assert abs(G.character_value(G.add(g1, g2), h) - G.character_value(g1, h) * G.character_value(g2, h)) < 1e-10


@pytest.mark.parametrize("orders", [[2], [5], [8], [2, 2], [2, 4], [3, 6], [4, 4], [2, 2, 2], [8, 8]])
def test_group_axioms_exhaustive(orders):
    G = make_group(orders)
    e = G.identity
    for a in G.elements:
        assert G.add(a, e) == a
        assert G.add(a, G.neg(a)) == e
        for b in G.elements:
            assert G.add(a, b) == G.add(b, a)
    for a, b, c in itertools.islice(itertools.product(G.elements, repeat=3), 4000):
        assert G.add(G.add(a, b), c) == G.add(a, G.add(b, c))
