"""
Tests for the order-3/order-5 criteria and the symmetric identities.
"""
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from arithmetic.errors import BadParameter, InfinityBase
from arithmetic.fields import field_of_order, prime_field, rational_field
from curves.curve import INFINITY, Point, make_curve
from curves.group import enumerate_points, point_order
from torsion.criteria import is_order3, is_order5
from torsion.identities import (
    check_symmetric_identities,
    cyclic_sum,
    heron_product,
    order5_cubic,
    printed_identity_discrepancy,
    random_identity_trials,
)


def _criteria_sweep(q):
    field = field_of_order(q)
    for roots in combinations(list(field.elements()), 3):
        curve = make_curve(field, *roots)
        for p in enumerate_points(curve)[1:]:
            order = point_order(curve, p)
            cert3 = is_order3(curve, p)
            cert5 = is_order5(curve, p)
            assert (cert3 is not None) == (order == 3), f"{p} on {curve}"
            assert (cert5 is not None) == (order == 5), f"{p} on {curve}"
            if cert3 is not None:
                assert cert3.verify(curve, p)
            if cert5 is not None:
                assert cert5.verify(curve, p)


class TestCriteria:
    """Test the sign-choice order criteria."""

    def test_order3_over_q(self):
        """Test roots (3, 6, -2) with r1 r2 + r2 r3 + r3 r1 = 0 give a point of order 3."""
        q = rational_field()
        curve = make_curve(q, 0, -27, 5)
        p = curve.point(9, 36)
        assert point_order(curve, p) == 3
        cert = is_order3(curve, p)
        assert cert is not None
        assert cert.order == 3
        assert cert.level0.sigma2() == q(0)
        assert is_order5(curve, p) is None

    def test_order5_example_over_f13(self):
        """Test P = (0, 9) on the curve with roots 1, 3, 12 over F_13."""
        f = prime_field(13)
        curve = make_curve(f, 1, 3, 12)
        p = Point(f(0), f(9))
        assert point_order(curve, p) == 5
        cert = is_order5(curve, p)
        assert cert is not None
        assert cert.verify(curve, p)
        assert cert.to_record().order == 5

    def test_two_torsion_is_neither(self):
        """Test 2-torsion points fail both criteria."""
        curve = make_curve(prime_field(13), 1, 3, 12)
        for w in curve.two_torsion():
            assert is_order3(curve, w) is None
            assert is_order5(curve, w) is None

    def test_infinity_refused(self):
        """Test the criteria need an affine point."""
        curve = make_curve(prime_field(13), 1, 3, 12)
        with pytest.raises(InfinityBase):
            is_order3(curve, INFINITY)
        with pytest.raises(InfinityBase):
            is_order5(curve, INFINITY)

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
    def test_criteria_match_point_order(self, q):
        """Test the criteria agree with the group-law order on every point."""
        _criteria_sweep(q)

    @pytest.mark.slow
    @pytest.mark.parametrize("q", [17, 19, 23, 25, 29, 31])
    def test_criteria_match_point_order_larger(self, q):
        """Test the same sweep over larger fields."""
        _criteria_sweep(q)


class TestIdentities:
    """Test the corrected symmetric identities."""

    def test_values_at_one_one_one(self):
        """Test both sides at (1, 1, 1) over Q."""
        q = rational_field()
        one = q.one
        assert cyclic_sum(one, one, one) == q(3)
        assert heron_product(one, one, one) == q(3)
        assert order5_cubic(one, one, one) == q(-5)
        assert check_symmetric_identities(q, 1, 1, 1)

    def test_printed_form_fails(self):
        """Test the negated right-hand sides do not hold."""
        report = printed_identity_discrepancy(prime_field(101))
        assert report["m0_left"] == "3"
        assert report["m0_right_corrected"] == "3"
        assert report["m0_right_printed"] == "98"
        assert report["m1_left"] == "15"
        assert report["printed_holds"] == "false"

    def test_random_trials_over_f101(self):
        """Test 1000 random triples over F_101 with no failures."""
        assert random_identity_trials(prime_field(101), 1000, seed=0) == 0

    @pytest.mark.parametrize("samples", [0, -5])
    def test_random_trials_need_samples(self, samples):
        """Test a non-positive sample count is refused."""
        with pytest.raises(BadParameter):
            random_identity_trials(prime_field(101), samples, seed=0)

    def test_rational_values(self):
        """Test the identities at a few rational triples."""
        q = rational_field()
        for t in [(2, 3, 5), (Fraction(1, 2), -7, 4), (0, 0, 1)]:
            assert check_symmetric_identities(q, *t)
