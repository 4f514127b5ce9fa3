import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcones.cones import (
    BundleData,
    Cone2D,
    cone_contains,
    cone_equal,
    delta_class,
    dual_cone,
    eff_cone_lower,
    eff_cone_upper,
    is_k_homogeneous,
    is_semistable,
    membership,
    nef_cone_1,
    nef_cone_upper,
    nu_table,
    semistability_routes,
    shift_image,
)
from parcones.corpus import random_split_bundle
from parcones.errors import DegenerateConeError, GradeError, ValidationError
from parcones.parabolic import HNData, ParabolicBundleSpec, resolve_hn
from parcones.ring import LOWER, RingContext, cyclify, pair


def lower(ring, grade, xi, xl):
    return ring.cls(grade, xi, xl, LOWER)


def test_nu_examples(spec_a, spec_b, spec_c):
    assert BundleData.of(spec_a).nu.values == (F(-1),)
    assert BundleData.of(spec_b).nu.values == (F(-2),)
    assert BundleData.of(spec_c).nu.values == (F(-3), F(-3))
    assert BundleData.of(spec_c).nu.upper(1) == F(-3)


def test_nu_rank_one_rejected():
    with pytest.raises(ValueError):
        nu_table(HNData(((1, 3),)), 1)


def test_example_b_cones(spec_b):
    ring = BundleData.of(spec_b).ring
    assert eff_cone_lower(spec_b, 1) == Cone2D.of(lower(ring, 1, 1, -2), lower(ring, 1, 0, 1))
    assert nef_cone_1(spec_b) == Cone2D.of(ring.xi - ring.L, ring.L)
    assert nef_cone_upper(spec_b, 1) == nef_cone_1(spec_b)
    assert eff_cone_upper(spec_b, 1) == Cone2D.of(ring.xi - ring.L.scale(2), ring.L)
    assert not is_k_homogeneous(spec_b, 1)


def test_example_c_cones(spec_c):
    ring = BundleData.of(spec_c).ring
    xi, xl = ring.monomial(2, 0), ring.monomial(1, 1)
    assert nef_cone_upper(spec_c, 2) == Cone2D.of(xi, xl)
    assert eff_cone_lower(spec_c, 2) == Cone2D.of(lower(ring, 1, 1, -3), lower(ring, 1, 0, 1))
    assert eff_cone_upper(spec_c, 2) == Cone2D.of(xi - xl.scale(3), xl)
    assert eff_cone_lower(spec_c, 1) == Cone2D.of(lower(ring, 2, 1, -3), lower(ring, 2, 0, 1))
    assert nef_cone_1(spec_c) == Cone2D.of(ring.xi, ring.L)
    assert not is_k_homogeneous(spec_c, 1) and not is_k_homogeneous(spec_c, 2)


def test_example_a_homogeneous(spec_a):
    ring = BundleData.of(spec_a).ring
    assert nef_cone_1(spec_a) == Cone2D.of(ring.xi - ring.L, ring.L)
    assert is_k_homogeneous(spec_a, 1)
    assert is_semistable(spec_a)


def test_delta_example(spec_c):
    b = BundleData.of(spec_c)
    assert delta_class(b) == lower(b.ring, 1, 1, -3)


def test_membership_examples(spec_b):
    ring = BundleData.of(spec_b).ring
    nef = nef_cone_1(spec_b)
    assert membership(ring.xi - ring.L, nef)
    assert not membership(ring.xi - ring.L, nef, strict=True)
    assert not membership(ring.xi - ring.L.scale(2), nef)
    assert membership(ring.xi, nef, strict=True)


def test_membership_slice_mismatch(spec_b):
    ring = BundleData.of(spec_b).ring
    with pytest.raises(GradeError):
        membership(cyclify(ring.xi), nef_cone_1(spec_b))
    with pytest.raises(GradeError):
        cone_equal(nef_cone_1(spec_b), eff_cone_lower(spec_b, 1))


def test_degenerate_cones_rejected():
    ring = RingContext(2, 1, F(0))
    with pytest.raises(DegenerateConeError):
        Cone2D.of(ring.xi, ring.xi.scale(3))
    with pytest.raises(DegenerateConeError):
        Cone2D.of(ring.xi, ring.zero(1))


def test_canonical_form_scales_positively():
    ring = RingContext(3, 2, F(1))
    cone = Cone2D.of(ring.cls(1, F(2, 3), F(-4, 3)), ring.cls(1, 0, 5))
    assert [g.vector for g in cone.generators] == [(1, -2), (0, 1)]
    assert Cone2D.of(ring.cls(1, 0, 5), ring.cls(1, 1, -2)) == cone


def test_k_out_of_range(spec_c):
    with pytest.raises(ValidationError):
        eff_cone_lower(spec_c, 3)
    with pytest.raises(ValidationError):
        nef_cone_upper(spec_c, 0)


def test_classical_first_quadrant():
    spec = ParabolicBundleSpec.from_split([(0, {}), (0, {})])
    ring = BundleData.of(spec).ring
    quadrant = Cone2D.of(ring.xi, ring.L)
    assert nef_cone_1(spec) == quadrant == eff_cone_upper(spec, 1)
    assert dual_cone(quadrant) == Cone2D.of(lower(ring, 1, 1, 0), lower(ring, 1, 0, 1))


def test_rank_one_is_semistable():
    spec = ParabolicBundleSpec.from_split([(3, {"x": F(1, 2)})])
    assert is_semistable(spec)
    assert semistability_routes(spec) == (True, True)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(2, 7),
    st.sampled_from([1, 2, 3, 6]),
    st.fractions(-10, 10, max_denominator=6),
    st.fractions(-30, 30, max_denominator=6),
    st.data(),
)
def test_dual_of_generic_eff_cone(r, n, d, nu, data):
    k = data.draw(st.integers(1, r - 1))
    ring = RingContext(r, n, d)
    eff = Cone2D.of(lower(ring, r - k, 1, nu), lower(ring, r - k, 0, 1))
    expected = Cone2D.of(ring.cls(k, 1, -(n * d + nu)), ring.cls(k, 0, 1))
    assert dual_cone(eff) == expected
    assert dual_cone(expected) == eff


def test_dual_boundary_pairs_to_zero(spec_c):
    for k in (1, 2):
        eff, nef = eff_cone_lower(spec_c, k), nef_cone_upper(spec_c, k)
        assert pair(nef.generators[0], eff.generators[0]) == 0
        assert pair(nef.generators[1], eff.generators[1]) == 0


seeds = st.integers(0, 10**6)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_cone_invariants(seed):
    spec = random_split_bundle(random.Random(seed), rank=random.Random(seed).randint(2, 6))
    b = BundleData.of(spec)
    r = b.rank
    for k in range(1, r):
        eff_low, nef_up, eff_up = eff_cone_lower(b, k), nef_cone_upper(b, k), eff_cone_upper(b, k)
        assert dual_cone(eff_low) == nef_up
        assert dual_cone(nef_up) == eff_low
        assert eff_up == Cone2D(tuple(cyclify(g) for g in eff_cone_lower(b, r - k).generators))
        assert cone_contains(eff_up, nef_up)
        for g in nef_up.generators:
            for h in eff_low.generators:
                assert pair(g, h) >= 0
    assert nef_cone_upper(b, 1) == nef_cone_1(b)
    by_hn, by_cones = semistability_routes(b)
    assert by_hn == by_cones


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_level_one_degenerates_to_classical(seed):
    rng = random.Random(seed)
    degrees = sorted(rng.randint(-4, 4) for _ in range(rng.randint(2, 6)))
    spec = ParabolicBundleSpec.from_split([(d, {}) for d in degrees])
    b = BundleData.of(spec)
    assert b.level == 1 and b.ring.pardeg == sum(degrees)
    mu1 = resolve_hn(spec).slopes[0]
    assert mu1 == min(degrees)
    assert nef_cone_1(spec) == Cone2D.of(b.ring.xi - b.ring.L.scale(mu1), b.ring.L)


def _two_step_split(rng):
    while True:
        spec = random_split_bundle(rng, rank=rng.randint(3, 7), hn_length=2)
        hn = resolve_hn(spec)
        if hn.length == 2 and hn.ranks[1] >= 2:
            return spec


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_shift_check(seed):
    spec = _two_step_split(random.Random(seed))
    hn = resolve_hn(spec)
    r1, r2 = hn.ranks
    for j in range(1, r2):
        image, _ = shift_image(spec, j)
        assert image == eff_cone_lower(spec, r1 + j)


def test_shift_fixture_example():
    spec = ParabolicBundleSpec.from_split(
        [(0, {"x": F(1, 4)}), (2, {"x": F(1, 4)}), (2, {"x": F(1, 4)}), (2, {"x": F(1, 4)})]
    )
    assert resolve_hn(spec).ranks == (1, 3)
    for j in (1, 2):
        image, scalar = shift_image(spec, j)
        assert image == eff_cone_lower(spec, 1 + j)
        assert scalar == 1
