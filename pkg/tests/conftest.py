import random

import pytest
from hypothesis import strategies as st

from scrolljet.chowring import make_scroll_ring


def free_product(a: dict, b: dict) -> dict:
    """Product in the free polynomial algebra, no relations applied."""
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = tuple(x + y for x, y in zip(m1, m2))
            out[mono] = out.get(mono, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def random_raw(ring, rnd: random.Random, n_terms=4, max_exp=3, coeff=5) -> dict:
    width = len(ring.generators)
    out = {}
    for _ in range(n_terms):
        mono = tuple(rnd.randint(0, max_exp) if rnd.random() < 0.5 else 0 for _ in range(width))
        out[mono] = out.get(mono, 0) + rnd.randint(-coeff, coeff)
    return out


@st.composite
def rings(draw, m_max=3, r_max=4):
    return make_scroll_ring(draw(st.integers(1, m_max)), draw(st.integers(2, r_max)))


@st.composite
def raw_terms(draw, ring, max_terms=4, max_exp=3):
    width = len(ring.generators)
    mono = st.tuples(*[st.integers(0, max_exp)] * width)
    return draw(st.dictionaries(mono, st.integers(-6, 6), max_size=max_terms))


@pytest.fixture
def rnd():
    return random.Random(20261018)
