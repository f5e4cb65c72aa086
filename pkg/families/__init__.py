"""Versal torsion families, Kubert conversions and parameter-curve solvers."""
from families.constructors import (
    PARAMETER_NAMES,
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
)
from families.kubert import kubert_convert, kubert_random_check
from families.marked import MarkedCurve, MarkedPoint
from families.parameter_curves import m84_birational, m84_relation, solve_m84
