from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrolljet.chowring import (
    ClassExpr,
    RingMismatchError,
    add,
    component,
    make_fibration_ring,
    make_scroll_ring,
    mul,
    normal_form,
    push_forward,
)

from conftest import free_product, raw_terms, rings


def names(ring):
    return [g.name for g in ring.generators]


class TestMakeScrollRing:
    def test_smallest(self):
        ring = make_scroll_ring(1, 2)
        assert names(ring) == ["L", "e1", "t1"]
        assert ring.n == 2

    def test_m2_r3(self):
        ring = make_scroll_ring(2, 3)
        assert names(ring) == ["L", "e1", "e2", "t1", "t2"]
        assert ring.n == 4

    def test_bundle_classes_capped_by_base_dimension(self):
        assert names(make_scroll_ring(2, 5)) == ["L", "e1", "e2", "t1", "t2"]

    @pytest.mark.parametrize("m,r", [(3, 1), (3, 0), (0, 2), (-1, 3)])
    def test_rejects(self, m, r):
        with pytest.raises(ValueError):
            make_scroll_ring(m, r)


class TestArithmetic:
    def test_additive_identity(self):
        ring = make_scroll_ring(2, 2)
        x = ring.gen("L") * ring.gen("e1") + 3 * ring.gen("t2")
        assert add(x, ring.zero()) == x

    def test_chern_wu_square(self):
        ring = make_scroll_ring(1, 2)
        L = ring.gen("L")
        assert mul(L, L) == ring.gen("e1") * L

    def test_base_truncation(self):
        ring = make_scroll_ring(1, 2)
        assert mul(ring.gen("t1"), ring.gen("t1")).is_zero()

    def test_mixed_rings_rejected(self):
        a = make_scroll_ring(1, 2).gen("L")
        b = make_scroll_ring(2, 2).gen("L")
        with pytest.raises(RingMismatchError):
            a + b
        with pytest.raises(RingMismatchError):
            a * b

    def test_floats_rejected(self):
        ring = make_scroll_ring(1, 2)
        with pytest.raises(TypeError):
            ring.gen("L") * 0.5

    def test_rational_coefficients_exact(self):
        ring = make_scroll_ring(2, 2)
        x = Fraction(1, 2) * ring.gen("e2")
        assert (x + x) == ring.gen("e2")
        assert type((x + x).coefficient(e2=1)) is int

    def test_str(self):
        ring = make_scroll_ring(2, 2)
        x = ring.gen("e1") * (ring.gen("e1") - ring.gen("t1")) + 2 * ring.gen("e2")
        assert str(x) == "e1^2 - e1*t1 + 2*e2"

    def test_immutable(self):
        x = make_scroll_ring(1, 2).gen("L")
        with pytest.raises(AttributeError):
            x.ring = None
        with pytest.raises(TypeError):
            x.terms[(0, 0, 0)] = 1


class TestNormalForm:
    @pytest.mark.parametrize("m,r", [(1, 2), (2, 2), (2, 3), (3, 4), (4, 2), (3, 3)])
    def test_defining_relation(self, m, r):
        ring = make_scroll_ring(m, r)
        L = ring.gen("L")
        rel = L ** r
        for i in range(1, r + 1):
            rel = rel - (-1) ** (i + 1) * ring.gen_or_zero(f"e{i}") * L ** (r - i)
        assert rel.is_zero()

    def test_idempotent_on_normal_input(self):
        ring = make_scroll_ring(2, 3)
        x = ring.gen("L") ** 2 * ring.gen("t1") - ring.gen("e2")
        assert normal_form(x) is x
        assert normal_form(dict(x.terms), ring) == x

    @pytest.mark.parametrize("m,r", [(1, 2), (2, 3), (3, 2)])
    def test_total_truncation(self, m, r):
        ring = make_scroll_ring(m, r)
        assert (ring.gen("L") ** (ring.n + 1)).is_zero()

    def test_top_degree_is_L_to_r_minus_one_times_base(self):
        ring = make_scroll_ring(2, 3)
        x = ring.gen("L") ** 4
        for mono in x.terms:
            assert mono[ring.taut_index] == ring.r - 1

    def test_raw_terms_need_ring(self):
        with pytest.raises(ValueError):
            normal_form({(1, 0, 0): 1})


class TestComponent:
    def test_grading(self):
        ring = make_scroll_ring(2, 2)
        one, L, e1 = ring.one(), ring.gen("L"), ring.gen("e1")
        assert component(one + L + e1, 1) == L + e1

    def test_above_top_is_zero(self):
        ring = make_scroll_ring(2, 2)
        x = ring.one() + ring.gen("L") ** 3
        assert component(x, ring.n + 1).is_zero()


class TestFibrationRing:
    def test_fiber_squares_to_zero(self):
        ring = make_fibration_ring(4)
        F = ring.gen("F")
        assert (F * F).is_zero()
        assert not (ring.gen("L") ** 3 * F).is_zero()
        assert (ring.gen("L") ** 4 * F).is_zero()

    def test_push_forward_needs_scroll(self):
        with pytest.raises(ValueError):
            push_forward(make_fibration_ring(3).gen("L"))


# ---- properties ----------------------------------------------------------

@st.composite
def ring_and_elements(draw, k=3):
    ring = draw(rings())
    return ring, [ring.from_terms(draw(raw_terms(ring))) for _ in range(k)]


@settings(max_examples=150, deadline=None)
@given(ring_and_elements())
def test_ring_axioms(data):
    ring, (a, b, c) = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ring.zero()
    assert a * ring.one() == a


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_normal_form_is_homomorphism(data):
    ring = data.draw(rings())
    a = data.draw(raw_terms(ring))
    b = data.draw(raw_terms(ring))
    lhs = normal_form(free_product(a, b), ring)
    rhs = normal_form(a, ring) * normal_form(b, ring)
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(ring_and_elements(k=2))
def test_product_grading_is_convolution(data):
    ring, (a, b) = data
    for d in range(ring.n + 1):
        conv = ring.zero()
        for d1 in range(d + 1):
            conv = conv + a.component(d1) * b.component(d - d1)
        assert (a * b).component(d) == conv
    total = ring.zero()
    for d in range(ring.n + 1):
        total = total + a.component(d)
    assert total == a


def _one_rewrite_step(ring, terms, pick):
    """Apply one elementary rule to one chosen monomial; returns new raw terms."""
    li = ring.taut_index
    bad = [mono for mono in terms if not ring._admissible(mono) or mono[li] >= ring.r]
    if not bad:
        return None
    mono = pick(sorted(bad))
    c = terms[mono]
    out = dict(terms)
    del out[mono]
    if not ring._admissible(mono):
        return out
    # replace one factor L**r with its relation
    for i in range(1, ring.r + 1):
        name = f"e{i}"
        if name not in ring.index:
            continue
        new = list(mono)
        new[li] -= i
        new[ring.index[name]] += 1
        new = tuple(new)
        out[new] = out.get(new, 0) + c * (-1) ** (i + 1)
        if not out[new]:
            del out[new]
    return out


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_chern_wu_confluence(data):
    ring = data.draw(rings())
    terms = {k: v for k, v in data.draw(raw_terms(ring, max_exp=5)).items() if v}
    expected = normal_form(terms, ring)
    pick = lambda seq: seq[data.draw(st.integers(0, len(seq) - 1))]
    current = terms
    while True:
        nxt = _one_rewrite_step(ring, current, pick)
        if nxt is None:
            break
        current = nxt
    assert ClassExpr(ring, current) == expected
    assert dict(expected.terms) == {k: v for k, v in current.items() if v}
