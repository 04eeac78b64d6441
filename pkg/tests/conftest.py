import math

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from cayley_spectra import make_group
from cayley_spectra.spectra import MixedCayleySpec

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PROPERTY_EXAMPLES = 200


@st.composite
def abelian_groups(draw, max_size=24, max_factors=2):
    orders = draw(st.lists(st.integers(2, 12), min_size=1, max_size=max_factors))
    if math.prod(orders) > max_size:
        orders = orders[:1]
    return make_group(orders)


@st.composite
def mixed_specs(draw, max_size=24):
    """Random valid mixed spec: every inverse pair lands in c_i (either way round), c_plus, c_minus or nowhere."""
    G = draw(abelian_groups(max_size=max_size))
    seen = set()
    c_i, c_plus, c_minus = set(), set(), set()
    for g in G.elements[1:]:
        if g in seen:
            continue
        h = G.neg(g)
        seen.update((g, h))
        choice = draw(st.sampled_from(("none", "i", "i_rev", "plus", "minus")))
        if choice == "i" and g != h:
            c_i.add(g)
        elif choice == "i_rev" and g != h:
            c_i.add(h)
        elif choice == "plus":
            c_plus.update((g, h))
        elif choice == "minus":
            c_minus.update((g, h))
    return MixedCayleySpec(G, frozenset(c_i), frozenset(c_plus), frozenset(c_minus))


@st.composite
def oriented_specs(draw, max_size=24):
    G = draw(abelian_groups(max_size=max_size))
    seen = set()
    c_i = set()
    for g in G.elements[1:]:
        h = G.neg(g)
        if g in seen or g == h:
            seen.add(g)
            continue
        seen.update((g, h))
        choice = draw(st.integers(0, 2))
        if choice == 1:
            c_i.add(g)
        elif choice == 2:
            c_i.add(h)
    return MixedCayleySpec(G, frozenset(c_i))


@pytest.fixture
def z8():
    return make_group([8])
