"""
Tests for curves, the group law, point counting and isomorphisms.
"""
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from arithmetic.errors import BadParameter, HasseViolation, NotDistinct, ParseError, ZeroScale
from arithmetic.fields import field_of_order, prime_field, rational_field
from config.settings import CENSUS_FIELDS
from curves.curve import INFINITY, Point, make_curve, parse_curve, parse_point
from curves.group import (
    add,
    count_points,
    double,
    enumerate_points,
    group_law,
    group_structure,
    hasse_interval,
    neg,
    point_order,
    scalar_mul,
    sub,
    subgroup_shape,
    within_hasse,
)
from curves.isomorphism import is_isomorphic, iso_class_key, scale_iso
from models.records import GroupShape


SMALL_FIELDS = [q for q in CENSUS_FIELDS if q <= 13]
LARGER_FIELDS = [q for q in CENSUS_FIELDS if q > 13]


def all_curves(q):
    field = field_of_order(q)
    return [make_curve(field, *t) for t in combinations(list(field.elements()), 3)]


class TestCurve:
    """Test curve construction and literals."""

    def test_distinct_roots_required(self):
        """Test repeated roots raise NotDistinct."""
        with pytest.raises(NotDistinct):
            make_curve(prime_field(7), 1, 1, 0)

    def test_equality_ignores_root_order(self):
        """Test curves compare as unordered root sets."""
        f = prime_field(7)
        assert make_curve(f, -4, -1, 0) == make_curve(f, 0, 3, 6)
        assert hash(make_curve(f, -4, -1, 0)) == hash(make_curve(f, 6, 0, 3))

    def test_two_torsion_follows_given_order(self):
        """Test W_i refers to the i-th root as given."""
        f = prime_field(7)
        curve = make_curve(f, -4, -1, 0)
        assert curve.w(1) == Point(f(3), f(0))
        assert curve.w(3) == Point(f(0), f(0))

    def test_parse_curve_literal(self):
        """Test `<field>;alphas=...` parsing with negative roots."""
        curve = parse_curve("Fp:7;alphas=-4,-1,0")
        assert curve.alphas == (curve.field(3), curve.field(6), curve.field(0))
        assert str(curve) == "Fp:7;alphas=3,6,0"

    def test_parse_point(self):
        """Test point literals, infinity and off-curve rejection."""
        curve = parse_curve("Fp:7;alphas=-4,-1,0")
        assert parse_point(curve, "inf") is INFINITY
        assert parse_point(curve, "2,1") == Point(curve.field(2), curve.field(1))
        with pytest.raises(BadParameter):
            parse_point(curve, "1,1")
        with pytest.raises(ParseError):
            parse_point(curve, "1;2")


class TestGroupLaw:
    """Test the chord-tangent law."""

    def test_identity_and_inverse(self):
        """Test P + inf = P and P - P = inf."""
        f = prime_field(7)
        curve = make_curve(f, -4, -1, 0)
        p = Point(f(2), f(1))
        assert add(curve, p, INFINITY) == p
        assert sub(curve, p, p) == INFINITY
        assert add(curve, p, neg(curve, p)) == INFINITY

    def test_two_torsion_doubles_to_infinity(self):
        """Test 2 W_i = inf."""
        curve = make_curve(prime_field(11), 1, 2, 3)
        for w in curve.two_torsion():
            assert double(curve, w) == INFINITY

    def test_group_law_dispatch(self):
        """Test the named-operation entry point."""
        f = prime_field(7)
        curve = make_curve(f, -4, -1, 0)
        p = Point(f(2), f(1))
        assert group_law(curve, "double", p) == double(curve, p)
        assert group_law(curve, "scalar_mul", 3, p) == scalar_mul(curve, 3, p)

    def test_associativity_on_f13(self):
        """Test (P + Q) + R = P + (Q + R) on every triple of one curve."""
        curve = make_curve(prime_field(13), 1, 2, 5)
        points = enumerate_points(curve)
        sample = points[:8]
        for p in sample:
            for q in sample:
                for r in sample:
                    assert add(curve, add(curve, p, q), r) == add(curve, p, add(curve, q, r))

    def test_rational_order_four_point(self):
        """Test (lambda, -(lambda+1)lambda) has order 4 on E_{1,2} over Q."""
        q = rational_field()
        curve = make_curve(q, -4, -1, 0)
        p = curve.point(2, -6)
        assert point_order(curve, p) == 4
        assert double(curve, p) == curve.w(3)


class TestCounting:
    """Test point counts and group structure."""

    def test_count_y2_x3_minus_x_over_f5(self):
        """Test y^2 = x^3 - x has 8 points over F_5."""
        curve = make_curve(prime_field(5), 1, -1, 0)
        assert count_points(curve) == 8
        assert len(enumerate_points(curve)) == 8
        shape, count = group_structure(curve)
        assert shape == GroupShape(n1=2, n2=4)
        assert count == 8

    @pytest.mark.parametrize("q", SMALL_FIELDS + [pytest.param(q, marks=pytest.mark.slow) for q in LARGER_FIELDS])
    def test_hasse_bound_for_every_curve(self, q):
        """Test every full-2-torsion curve satisfies the Hasse bound."""
        low, high = hasse_interval(q)
        for curve in all_curves(q):
            count = count_points(curve)
            assert within_hasse(q, count)
            assert low <= count <= high
            assert count % 4 == 0

    def test_point_orders_divide_group_order(self):
        """Test every point order divides |E|."""
        curve = make_curve(prime_field(13), 1, 2, 5)
        n = count_points(curve)
        for p in enumerate_points(curve):
            order = point_order(curve, p)
            assert n % order == 0
            assert scalar_mul(curve, order, p) == INFINITY

    def test_structure_multiplies_to_count(self):
        """Test n1 n2 = |E| with 2 | n1 | n2 over F_11."""
        for curve in all_curves(11):
            shape, count = group_structure(curve)
            assert shape.order == count
            assert shape.n1 % 2 == 0
            assert shape.n2 % shape.n1 == 0

    def test_subgroup_shape(self):
        """Test two of the 2-torsion points generate Z/2 + Z/2."""
        curve = make_curve(prime_field(7), -4, -1, 0)
        assert subgroup_shape(curve, [curve.w(1), curve.w(2)]) == GroupShape(n1=2, n2=2)

    def test_hasse_violation_is_an_error(self, mocker):
        """Test an out-of-range count raises instead of logging."""
        mocker.patch("curves.group.within_hasse", return_value=False)
        count_points.cache_clear()
        try:
            with pytest.raises(HasseViolation):
                count_points(make_curve(prime_field(7), 1, 2, 3))
        finally:
            count_points.cache_clear()


class TestIsomorphism:
    """Test scaling and the isomorphism search."""

    def test_scale_iso_maps_points(self):
        """Test the kappa-scaling maps points onto the scaled curve."""
        f = prime_field(13)
        curve = make_curve(f, 1, 2, 5)
        iso = scale_iso(curve, 3)
        for p in enumerate_points(curve):
            image = iso.forward(p)
            assert iso.target.contains(image)
            assert iso.backward(image) == p

    def test_scale_iso_is_a_homomorphism(self):
        """Test the scaling commutes with the group law on every pair of points."""
        f = prime_field(13)
        curve = make_curve(f, 1, 2, 5)
        iso = scale_iso(curve, 3)
        points = enumerate_points(curve)
        for p in points:
            for q in points:
                assert iso.forward(add(curve, p, q)) == add(iso.target, iso.forward(p), iso.forward(q))

    def test_zero_scale(self):
        """Test kappa = 0 is refused."""
        with pytest.raises(ZeroScale):
            scale_iso(make_curve(prime_field(7), 1, 2, 3), 0)

    def test_translation_is_isomorphic(self):
        """Test shifting every root gives an isomorphic curve with a valid witness."""
        f = prime_field(11)
        c1 = make_curve(f, 1, 2, 5)
        c2 = make_curve(f, 4, 5, 8)
        witness = is_isomorphic(c1, c2)
        assert witness is not None
        assert witness.check(c1, c2)
        for p in enumerate_points(c1):
            assert c2.contains(witness.map_point(p))

    def test_ratio_method_matches_exhaustive_search(self):
        """Test both isomorphism searches agree on every pair over F_5."""
        curves = all_curves(5)
        for c1 in curves:
            for c2 in curves:
                fast = is_isomorphic(c1, c2) is not None
                slow = is_isomorphic(c1, c2, exhaustive=True) is not None
                assert fast == slow

    def test_class_key_matches_isomorphism(self):
        """Test equal keys exactly when a witness exists over F_7 and F_9."""
        for q in (7, 9):
            curves = all_curves(q)
            for c1 in curves:
                for c2 in curves:
                    same_key = iso_class_key(c1) == iso_class_key(c2)
                    assert same_key == (is_isomorphic(c1, c2) is not None)

    def test_rational_scaling(self):
        """Test y^2 = x^3 - x and y^2 = x^3 - 16x are isomorphic over Q, a twist is not."""
        q = rational_field()
        c1 = make_curve(q, 1, -1, 0)
        c2 = make_curve(q, 4, -4, 0)
        assert is_isomorphic(c1, c2) is not None
        assert is_isomorphic(c1, make_curve(q, 2, -2, 0)) is None
        c3 = make_curve(q, Fraction(1, 2), -1, 0)
        assert is_isomorphic(c1, c3) is None
