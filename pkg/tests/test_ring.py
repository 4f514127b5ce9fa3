from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcones.errors import ContextMismatchError, GradeError, InadmissibleGammaError
from parcones.ring import (
    LOWER,
    UPPER,
    CoverContext,
    RingContext,
    cyclify,
    degree_of_top,
    multiply,
    pair,
    pullback_to_cover,
    pushforward_from_cover,
)


def ctx(r=2, n=2, d=F(3, 2)):
    return RingContext(r, n, d)


def test_fiber_squared_is_zero():
    c = ctx()
    assert multiply(c.L, c.L).is_zero()


def test_binomial_expansion():
    c = ctx()
    t = c.xi - c.L
    assert multiply(t, t) == c.cls(2, 1, -2)


def test_formal_product_rank3():
    c = ctx(r=3)
    assert multiply(c.xi, c.monomial(1, 1)) == c.monomial(2, 1)


def test_product_beyond_top_grade_is_an_error():
    c = ctx()
    with pytest.raises(GradeError):
        multiply(c.xi ** 2, c.xi)


def test_mismatched_contexts():
    with pytest.raises(ContextMismatchError):
        multiply(ctx().xi, ctx(d=F(1)).xi)


def _cover_degree_oracle(r, n, d, gamma, a, b):
    """Degree of xi^a L^b downstairs via the cover: pull back, evaluate with
    xi~^r = gamma*d and xi~^(r-1) L~ = 1, then divide by gamma."""
    upstairs = F(n) ** a * gamma ** b
    value = gamma * d if b == 0 else F(1)
    return upstairs * value / gamma


def test_top_degrees_example():
    c = ctx()
    assert degree_of_top(c.xi ** 2) == 6 == _cover_degree_oracle(2, 2, F(3, 2), 2, 2, 0)
    assert degree_of_top(c.xi * c.L) == 2 == _cover_degree_oracle(2, 2, F(3, 2), 2, 1, 1)


@pytest.mark.parametrize("r", [2, 3, 5])
def test_double_fiber_vanishes(r):
    c = ctx(r=r)
    assert degree_of_top(c.L * c.xi ** (r - 2) * c.L) == 0


def test_degree_requires_top_grade():
    with pytest.raises(GradeError):
        degree_of_top(ctx(r=3).xi)


def test_pair_examples():
    c = ctx()
    assert pair(c.xi - c.L, c.xi - c.L.scale(2)) == 0
    assert pair(c.L, c.L) == 0
    c3 = ctx(r=3)
    assert pair(c3.xi, c3.monomial(1, 1)) == 4


def test_pair_grade_mismatch():
    c = ctx(r=3)
    with pytest.raises(GradeError):
        pair(c.xi, c.xi)


def test_cyclify_flips_tag_only():
    c = ctx()
    g = c.xi - c.L.scale(2)
    lowered = cyclify(g)
    assert lowered.side == LOWER and lowered.vector == g.vector
    assert cyclify(lowered) == g
    assert cyclify(c.zero(1)).is_zero()


def test_pullback_examples():
    c = ctx()
    cover = CoverContext(c, 2)
    up = cover.ring
    assert pullback_to_cover(cover, c.xi - c.L) == (up.xi - up.L).scale(2)
    assert pullback_to_cover(cover, c.L) == up.L.scale(2)
    assert pullback_to_cover(cover, c.zero(1)).is_zero()


def test_pushforward_lemma_scalings():
    c = ctx(r=3)
    cover = CoverContext(c, 2)
    up = cover.ring
    assert pushforward_from_cover(cover, up.xi ** 2) == (c.xi ** 2).scale(F(1, 2))
    assert pushforward_from_cover(cover, up.xi * up.L) == (c.xi * c.L).scale(F(1, 2))


def test_cover_gamma_must_be_multiple_of_level():
    with pytest.raises(InadmissibleGammaError):
        CoverContext(ctx(n=4), 6)


def test_pairing_matrix_nondegenerate():
    for r in range(2, 7):
        for n in (1, 2, 6):
            c = ctx(r=r, n=n, d=F(5, 3))
            for k in range(1, r):
                (a, b), (b2, z) = c.pairing_matrix(k)
                assert (a, b, b2, z) == (F(n) ** r * F(5, 3), F(n) ** (r - 1), F(n) ** (r - 1), 0)
                assert a * z - b * b2 == -F(n) ** (2 * r - 2)
                # the matrix is the pairing of the monomial bases
                for i, upper in enumerate((c.monomial(r - k, 0), c.monomial(r - k - 1, 1))):
                    for j, lower in enumerate((c.monomial(k, 0), c.monomial(k - 1, 1))):
                        assert pair(upper, lower) == c.pairing_matrix(k)[i][j]


# property tests -------------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def context_and_classes(draw, count=3):
    r = draw(st.integers(2, 6))
    n = draw(st.sampled_from([1, 2, 3, 4, 6, 12]))
    d = draw(rationals)
    c = RingContext(r, n, d)
    grades = draw(st.lists(st.integers(0, r), min_size=count, max_size=count))
    classes = []
    for g in grades:
        xi = draw(rationals)
        xl = draw(rationals) if g >= 1 else F(0)
        classes.append(c.cls(g, xi, xl))
    return c, classes


@settings(max_examples=200, deadline=None)
@given(context_and_classes())
def test_ring_axioms(data):
    c, (x, y, z) = data
    if x.grade + y.grade <= c.rank:
        assert multiply(x, y) == multiply(y, x)
        if x.grade + y.grade + z.grade <= c.rank:
            assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    if x.grade + y.grade <= c.rank and z.grade == y.grade:
        assert multiply(x, y + z) == multiply(x, y) + multiply(x, z)
        assert multiply(x, y.scale(F(3, 7))) == multiply(x, y).scale(F(3, 7))


@settings(max_examples=200, deadline=None)
@given(context_and_classes(count=2), st.integers(1, 3))
def test_pushforward_of_pullback_is_multiplication(data, m):
    c, classes = data
    cover = CoverContext(c, m * c.level)
    for x in classes:
        assert pushforward_from_cover(cover, pullback_to_cover(cover, x)) == x.scale(cover.gamma)


@settings(max_examples=200, deadline=None)
@given(context_and_classes(count=2), st.integers(1, 3))
def test_projection_formula(data, m):
    c, (p, alpha_base) = data
    if p.grade + alpha_base.grade > c.rank:
        return
    cover = CoverContext(c, m * c.level)
    up = cover.ring
    alpha = up.cls(alpha_base.grade, alpha_base.xi_coeff, alpha_base.xl_coeff)
    lhs = pushforward_from_cover(cover, multiply(pullback_to_cover(cover, p), alpha))
    rhs = multiply(p, pushforward_from_cover(cover, alpha))
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(context_and_classes(count=1))
def test_structural_nilpotence(data):
    c, (x,) = data
    if x.grade + 2 <= c.rank:
        assert multiply(multiply(x, c.L), c.L).is_zero()


def test_sides_propagate_through_products():
    c = ctx(r=3)
    assert multiply(c.xi, c.L.with_side(LOWER)).side == LOWER
    assert multiply(c.xi, c.L).side == UPPER
