"""
Tests for the torsion families, the Z/4 + Z/8 parameter curve and Kubert conversions.
"""
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from arithmetic.errors import (
    BadParameter,
    ConsistencyError,
    NoSqrtMinusOne,
    NotEnumerable,
    NotOnParameterCurve,
)
from arithmetic.fields import field_of_order, prime_field, rational_field
from curves.curve import INFINITY, Point, make_curve
from curves.group import count_points, group_structure, point_order, scalar_mul, subgroup_shape
from families import (
    build_family,
    enumerate_e5_params,
    fam3_general,
    family_e1,
    family_e2,
    family_e2_alt,
    family_e3,
    family_e4,
    family_e5,
    family_e5_general,
    family_full4,
    kubert_convert,
    kubert_random_check,
    m84_birational,
    m84_relation,
    solve_m84,
)
from families.constructors import FAM3_RELATIONS, e5_betas
from families.kubert import admissible_t, kubert_coefficients, kubert_split_curve
from families.marked import MarkedPoint
from models.records import GroupShape


class TestOrderFourFamilies:
    """Test E_1, full4 and E_2."""

    def test_e1_over_f7(self):
        """Test lambda = 2 gives roots (-4, -1, 0) and R = (2, 1)."""
        f = prime_field(7)
        member = family_e1(f, 2).validate()
        assert member.curve == make_curve(f, -4, -1, 0)
        assert member.point("R") == Point(f(2), f(1))
        assert member.shape == GroupShape(n1=2, n2=4)
        for p in member.orbit["order4"]:
            assert point_order(member.curve, p) == 4

    def test_e1_domain(self):
        """Test lambda = 0 and +-1 are refused."""
        f = prime_field(7)
        for lam in (0, 1, -1):
            with pytest.raises(BadParameter):
                family_e1(f, lam)

    def test_full4_over_f13(self):
        """Test a = 2, b = 1 gives twelve points of order 4 spanning Z/4 + Z/4."""
        f = prime_field(13)
        member = family_full4(f, 2, 1).validate()
        assert len(member.marked) == 12
        assert len({mp.point for mp in member.marked}) == 12
        assert member.shape == GroupShape(n1=4, n2=4)
        assert member.curve == make_curve(f, 9, 12, 0)

    def test_full4_needs_sqrt_minus_one(self):
        """Test F_7 has no i."""
        with pytest.raises(NoSqrtMinusOne):
            family_full4(prime_field(7), 2, 1)

    def test_full4_domain(self):
        """Test a = +-b and a = +-i b are refused."""
        f = prime_field(13)
        with pytest.raises(BadParameter):
            family_full4(f, 3, 3)
        with pytest.raises(BadParameter):
            family_full4(f, 5, 1)

    def test_e2_over_f9(self):
        """Test lambda = 1 + s over F_9 gives roots (1, -1, 0) with Z/4 + Z/4."""
        f = field_of_order(9)
        lam = f.parse("1+s")
        member = family_e2(f, lam).validate()
        assert member.curve == make_curve(f, 1, -1, 0)
        assert member.shape == GroupShape(n1=4, n2=4)

    def test_e2_without_i(self):
        """Test over F_7 only Z/2 + Z/4 is marked."""
        member = family_e2(prime_field(7), 2).validate()
        assert member.shape == GroupShape(n1=2, n2=4)
        assert "W1" not in member.orbit

    def test_e2_alt_matches_e2_over_q(self):
        """Test both E_2 variants are curves with a point of order 4 over Q."""
        q = rational_field()
        for build in (family_e2, family_e2_alt):
            member = build(q, 2)
            assert point_order(member.curve, member.point("Q1")) == 4

    def test_e2_domain(self):
        """Test lambda^2 + 1 = 0 is refused."""
        with pytest.raises(BadParameter):
            family_e2(prime_field(13), 5)


class TestOrderEightFamily:
    """Test E_4."""

    def test_e4_over_q(self):
        """Test c = 2 gives R = (-3/8, 15/128) of order 8."""
        q = rational_field()
        member = family_e4(q, 2).validate()
        assert member.point("R") == Point(q(Fraction(-3, 8)), q(Fraction(15, 128)))
        assert member.extra["lambda"] == q(Fraction(9, 16))
        r = member.point("R")
        assert scalar_mul(member.curve, 4, r) == member.curve.w(3)
        assert scalar_mul(member.curve, 8, r) == INFINITY

    def test_e4_over_f11(self):
        """Test c = 2 over F_11 gives R = (1, 10) and lambda = 4."""
        f = prime_field(11)
        member = family_e4(f, 2).validate()
        assert member.point("R") == Point(f(1), f(10))
        assert member.extra["lambda"] == f(4)
        assert member.shape == GroupShape(n1=2, n2=8)

    def test_e4_domain(self):
        """Test c = 0, +-1 and c with lambda = -1 are refused."""
        f = prime_field(13)
        for c in (0, 1, -1):
            with pytest.raises(BadParameter):
                family_e4(f, c)
        # c = i gives (c - 1/c)/2 = i, lambda = -1
        with pytest.raises(BadParameter):
            family_e4(f, f.sqrt_minus_one())


class TestOrderThreeFamilies:
    """Test fam3 and E_3."""

    def test_e3_over_q(self):
        """Test lambda = 2 gives P = (0, 4/3) of order 3 and Z/2 + Z/6."""
        q = rational_field()
        member = family_e3(q, 2).validate()
        assert member.point("P") == Point(q(0), q(Fraction(4, 3)))
        assert member.shape == GroupShape(n1=2, n2=6)
        assert member.extra["relation"] == FAM3_RELATIONS[2]
        assert member.params == {"lambda": q(2)}

    def test_e3_domain(self):
        """Test the excluded lambda values."""
        q = rational_field()
        for lam in (0, 1, -1, -2, Fraction(-1, 2)):
            with pytest.raises(BadParameter):
                family_e3(q, lam)

    def test_fam3_plain(self):
        """Test (1, 2, 3) over F_13 satisfies no relation."""
        member, kind = fam3_general(prime_field(13), 1, 2, 3)
        assert kind == "plain"
        member.validate()
        assert member.shape == GroupShape(n1=2, n2=2)
        assert len(member.orbit["halves"]) == 4

    def test_fam3_order3(self):
        """Test (2, 1, 2/3) over Q satisfies the third relation."""
        member, kind = fam3_general(rational_field(), 2, 1, Fraction(2, 3))
        assert kind == "order3"
        member.validate()

    def test_fam3_needs_distinct_squares(self):
        """Test a1 = -a2 is refused."""
        with pytest.raises(BadParameter):
            fam3_general(prime_field(13), 2, -2, 3)


class TestOrderFiveFamilies:
    """Test the general and normalized order-5 families."""

    def test_e5_general_over_f13(self):
        """Test (9, 6, 1) gives betas (8, 7, 12) and a point of order 5."""
        f = prime_field(13)
        assert e5_betas(f(9), f(6), f(1)) == (f(8), f(7), f(12))
        member = family_e5_general(f, 9, 6, 1).validate()
        assert member.shape == GroupShape(n1=2, n2=10)
        assert len(member.orbit["multiples"]) == 4

    def test_e5_general_needs_cubic(self):
        """Test a triple off the cubic is refused."""
        with pytest.raises(BadParameter):
            family_e5_general(prime_field(13), 1, 2, 3)

    def test_e5_over_f13(self):
        """Test (xi, eta) = (2, 6) gives roots (-12, -10, -1) and P = (0, 9)."""
        f = prime_field(13)
        member = family_e5(f, 2, 6).validate()
        assert member.curve == make_curve(f, -12, -10, -1)
        assert member.point("P") == Point(f(0), f(9))
        assert count_points(member.curve) == 20

    def test_e5_generators_span_z2z10(self):
        """Test P with both 2-torsion points spans Z/2 + Z/10 in both order-5 families."""
        f = prime_field(13)
        for member in (family_e5(f, 2, 6), family_e5_general(f, 9, 6, 1)):
            assert subgroup_shape(member.curve, member.generators) == GroupShape(n1=2, n2=10)
            assert {mp.label for mp in member.marked} == {"P", "W1", "W2"}

    def test_e5_off_parameter_curve(self):
        """Test a point off eta^2 = xi(xi^2 + xi - 1) is refused first."""
        with pytest.raises(NotOnParameterCurve):
            family_e5(prime_field(13), 2, 5)

    def test_enumerate_e5_params(self):
        """Test F_13 has (2, 6); F_3 and F_5 have nothing."""
        f = prime_field(13)
        assert (f(2), f(6)) in enumerate_e5_params(f)
        assert enumerate_e5_params(prime_field(3)) == []
        assert enumerate_e5_params(prime_field(5)) == []

    def test_e5_members_validate_over_f31(self):
        """Test every admissible parameter over F_31 builds a valid member."""
        f = prime_field(31)
        params = enumerate_e5_params(f)
        assert params
        for xi, eta in params:
            member = family_e5(f, xi, eta).validate()
            assert group_structure(member.curve)[0].contains(GroupShape(n1=2, n2=10))


class TestMarkedCurve:
    """Test validation and dispatch."""

    def test_wrong_declared_order(self):
        """Test a wrong declared order raises ConsistencyError."""
        member = family_e1(prime_field(7), 2)
        broken = replace(member, marked=[MarkedPoint("R", member.point("R"), 8)])
        with pytest.raises(ConsistencyError):
            broken.validate()

    def test_wrong_shape(self):
        """Test a wrong generated shape raises ConsistencyError."""
        member = family_e1(prime_field(7), 2)
        broken = replace(member, shape=GroupShape(n1=4, n2=4))
        with pytest.raises(ConsistencyError):
            broken.validate()

    def test_build_family(self):
        """Test named-parameter dispatch."""
        f = prime_field(13)
        member = build_family("e5", f, {"xi": f(2), "eta": f(6)})
        assert member.family == "e5"
        with pytest.raises(BadParameter):
            build_family("e9", f, {})
        with pytest.raises(BadParameter):
            build_family("full4", f, {"a": f(2)})

    def test_record(self):
        """Test the record carries parameters and the shape."""
        record = family_e1(prime_field(7), 2).to_record()
        assert record.params == {"lambda": "2"}
        assert record.shape == [2, 4]


class TestParameterCurve:
    """Test the Z/4 + Z/8 relation."""

    def test_solve_m84_over_f29(self):
        """Test every solution gives an E_4 curve with Z/4 + Z/8."""
        f = prime_field(29)
        solutions = solve_m84(f)
        assert solutions
        for c, d in solutions:
            assert m84_relation(f, c, d)
            shape, count = group_structure(family_e4(f, c).curve)
            assert shape == GroupShape(n1=4, n2=8)
            assert count == 32

    def test_degenerate_pair_excluded(self):
        """Test (1, 1) satisfies the relation but is not admissible."""
        f = prime_field(29)
        assert m84_relation(f, 1, 1)
        assert (f(1), f(1)) not in solve_m84(f)

    def test_needs_sqrt_minus_one(self):
        """Test F_7 has no i."""
        with pytest.raises(NoSqrtMinusOne):
            solve_m84(prime_field(7))

    def test_birational_map(self):
        """Test points of eta^2 = xi^3 - xi land on the relation over F_13."""
        f = prime_field(13)
        for xi, eta in ((5, 4), (8, 6), (8, 7)):
            c, d = m84_birational(f, xi, eta)
            assert m84_relation(f, c, d)
        with pytest.raises(NotOnParameterCurve):
            m84_birational(f, 2, 1)


class TestKubert:
    """Test conversions from Kubert normal forms."""

    def test_known_conversions(self):
        """Test the parameter maps at sample points over Q."""
        q = rational_field()
        assert kubert_convert(q, "e3", 2).value == q(3)
        assert kubert_convert(q, "e4", 1).value == q(5)
        assert kubert_convert(q, "e1", Fraction(3, 4)).value == q(Fraction(1, 2))

    def test_e1_coefficients(self):
        """Test t = 3/4 gives a = 0, b = 1/2."""
        q = rational_field()
        assert kubert_coefficients(q, "e1", Fraction(3, 4)) == (q(0), q(Fraction(1, 2)))

    def test_verify_over_finite_field(self):
        """Test the isomorphism check at fixed t over F_101."""
        f = prime_field(101)
        for kind, t in (("e1", Fraction(3, 4)), ("e3", 2), ("e4", 1)):
            conversion = kubert_convert(f, kind, t, verify=True)
            assert conversion.witness is not None
            assert conversion.witness.check(conversion.kubert_curve, family_for(f, kind, conversion.value))

    def test_verify_over_q_not_enumerable(self):
        """Test the root search refuses Q."""
        with pytest.raises(NotEnumerable):
            kubert_split_curve(rational_field(), 0, Fraction(1, 2))

    def test_excluded_t(self):
        """Test singular Kubert parameters are refused."""
        q = rational_field()
        with pytest.raises(BadParameter):
            kubert_convert(q, "e1", Fraction(1, 4))
        with pytest.raises(BadParameter):
            kubert_convert(q, "e3", 3)
        with pytest.raises(BadParameter):
            kubert_convert(q, "e4", 0)
        with pytest.raises(BadParameter):
            kubert_convert(q, "e7", 1)

    def test_admissible_t(self):
        """Test the admissible E_3 parameters over F_13 skip the singular and excluded t."""
        f = prime_field(13)
        pool = admissible_t(f, "e3")
        assert pool
        assert {f(1), f(3), f(5), f(9), f(10)}.isdisjoint(pool)
        for t in pool:
            kubert_convert(f, "e3", t)

    def test_unsplit_cubic_counts_as_failure(self, mocker):
        """Test a root search failure at an admissible t is reported, not redrawn."""
        mocker.patch("families.kubert.kubert_split_curve", side_effect=BadParameter("cubic does not split"))
        f = prime_field(13)
        with pytest.raises(ConsistencyError):
            kubert_convert(f, "e3", admissible_t(f, "e3")[0], verify=True)
        record = kubert_random_check(f, "e3", samples=5, seed=0)
        assert record.samples == 5
        assert record.failures == 5

    def test_random_check_needs_samples(self):
        """Test a non-positive sample count is refused."""
        with pytest.raises(BadParameter):
            kubert_random_check(prime_field(13), "e3", samples=0, seed=0)

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", ["e1", "e3", "e4"])
    def test_random_check_over_f101(self, kind):
        """Test 50 random admissible t per kind with no failures."""
        record = kubert_random_check(prime_field(101), kind, samples=50, seed=0)
        assert record.samples == 50
        assert record.failures == 0


def family_for(field, kind, value):
    builders = {"e1": family_e1, "e3": family_e3, "e4": family_e4}
    return builders[kind](field, value).curve
