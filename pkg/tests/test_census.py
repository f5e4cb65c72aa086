"""
Tests for the finite-field census and the classification checks.
"""
import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from arithmetic.errors import NotEnumerable, UnsupportedField
from arithmetic.fields import field_of_order, prime_field, rational_field
from census import COROLLARIES, classify, curve_index, run_corollary, verify_report
from census.corollaries import corollaries_for
from census.engine import census_field, e4_empty_verdict, enumerate_curves, family_members
from curves.curve import make_curve
from families import enumerate_e5_params
from models.records import GroupShape

SMALL_CHECKS = [
    ("z2z4-small", 5),
    ("z2z4-small", 7),
    ("z2z6", 7),
    ("z2z6", 9),
    ("z4z4", 9),
    ("z2z8", 11),
    ("z2z6", 11),
    ("z2z8", 13),
    ("z4z4", 13),
    ("z2z10", 13),
]


def corollary(name):
    return next(c for c in COROLLARIES if c.name == name)


def larger_checks():
    return [(c.name, q) for c in COROLLARIES for q in c.fields if (c.name, q) not in SMALL_CHECKS]


def e5_fields():
    return [(c.shape, q) for c in COROLLARIES if c.family == "e5" for q in c.fields]


class TestEnumeration:
    """Test curve enumeration and classes."""

    @pytest.mark.parametrize("q,expected", [(3, 1), (5, 10), (7, 35), (9, 84)])
    def test_curve_counts(self, q, expected):
        """Test one curve per unordered root triple."""
        assert len(list(enumerate_curves(field_of_order(q)))) == expected

    def test_rational_not_enumerable(self):
        """Test Q cannot be enumerated."""
        with pytest.raises(NotEnumerable):
            list(enumerate_curves(rational_field()))

    def test_classify_f5(self):
        """Test y^2 = x^3 - x is the only class with Z/2 + Z/4 over F_5."""
        f = prime_field(5)
        classes = classify(f, GroupShape(n1=2, n2=4))
        assert len(classes) == 1
        assert curve_index(f).class_of(make_curve(f, 1, -1, 0)) is classes[0]
        assert classes[0].points == 8
        assert classify(f, GroupShape(n1=4, n2=4)) == []

    def test_classes_cover_every_curve(self):
        """Test class sizes add up and shapes match point counts over F_11."""
        index = curve_index(prime_field(11))
        assert sum(len(c.curves) for c in index.classes.values()) == index.curve_count
        for iso_class in index.classes.values():
            assert iso_class.shape.order == iso_class.points

    def test_spot_check_partition(self):
        """Test sampled pairs agree with explicit isomorphism witnesses."""
        curve_index(prime_field(13)).spot_check_partition(samples=30, seed=1)

    def test_field_bound(self):
        """Test fields above the census bound are refused."""
        with pytest.raises(UnsupportedField):
            curve_index(prime_field(67))


class TestCorollaries:
    """Test the bidirectional classification checks."""

    @pytest.mark.parametrize("name,q", SMALL_CHECKS)
    def test_small_fields_pass(self, name, q):
        """Test each statement over the smaller fields."""
        verdict = run_corollary(corollary(name), q)
        assert verdict.verdict == "pass", verdict.counterexample
        assert verdict.family_members > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("name,q", larger_checks())
    def test_larger_fields_pass(self, name, q):
        """Test each statement over the remaining fields."""
        verdict = run_corollary(corollary(name), q)
        assert verdict.verdict == "pass", verdict.counterexample

    @pytest.mark.slow
    def test_z4z8_point_count(self):
        """Test the Z/4 + Z/8 classes over F_29 have 32 points."""
        verdict = run_corollary(corollary("z4z8"), 29)
        assert verdict.verdict == "pass"
        assert verdict.point_count == 32
        assert verdict.classes > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("shape,q", e5_fields())
    def test_e5_parameters_exist_with_classes(self, shape, q):
        """Test the order-5 parameter curve has points exactly when the matching group occurs."""
        field = field_of_order(q)
        assert bool(enumerate_e5_params(field)) == bool(classify(field, shape))

    def test_mutated_shape_fails(self):
        """Test the checker reports a counterexample for a wrong shape."""
        verdict = run_corollary(corollary("z2z4-small"), 5, GroupShape(n1=2, n2=8))
        assert verdict.verdict == "fail"
        assert verdict.counterexample is not None

    @pytest.mark.parametrize("q", [3, 5, 7, 9])
    def test_e4_empty(self, q):
        """Test no admissible c exists over the smallest fields."""
        assert e4_empty_verdict(q).verdict == "pass"
        assert family_members(field_of_order(q), "e4") == []

    def test_corollaries_for(self):
        """Test statements are selected by field."""
        names = {c.name for c in corollaries_for(13)}
        assert names == {"z4z4", "z2z8", "z2z6", "z2z10"}
        assert corollaries_for(53) == []


class TestReports:
    """Test census tables and the verification report."""

    def test_census_field_witnesses(self):
        """Test family parameters are attached to the classes they land in."""
        census = census_field(prime_field(7), ["e1"])
        assert census.curves == 35
        groups = {tuple(g.shape): g for g in census.shapes}
        record = groups[(2, 4)].classes[0]
        assert record.witness_params
        assert len(record.witness_params) <= 3
        assert record.witness_params[0]["family"] == "e1"

    def test_census_field_shape_filter(self):
        """Test only the requested shape is listed."""
        census = census_field(prime_field(7), shape=GroupShape(n1=2, n2=4))
        assert [g.shape for g in census.shapes] == [[2, 4]]

    def test_verify_report_small(self):
        """Test a two-field report passes and carries the notes."""
        report = verify_report([5, 7])
        assert report.passed
        assert len(report.field_reports) == 2
        names = [v.corollary for v in report.verdicts]
        assert names.count("e4-empty") == 2
        assert any("printed form holds: false" in note for note in report.notes)

    def test_verify_report_mutated(self):
        """Test the negative control fails."""
        report = verify_report([5], mutate=GroupShape(n1=2, n2=8))
        assert not report.passed

    def test_unsupported_field(self):
        """Test fields outside the census list are refused."""
        with pytest.raises(UnsupportedField):
            verify_report([15])

    def test_repeated_fields_collapse(self):
        """Test a field given twice is checked once."""
        report = verify_report([5, 5])
        assert len(report.field_reports) == 1
