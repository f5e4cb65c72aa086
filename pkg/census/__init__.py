"""Finite-field census and classification checks."""
from census.corollaries import COROLLARIES, Corollary
from census.engine import (
    CurveIndex,
    census_field,
    classify,
    curve_index,
    enumerate_curves,
    family_members,
    run_corollary,
    verify_report,
)
