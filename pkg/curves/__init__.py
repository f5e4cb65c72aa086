"""Split-root curves, the group law and isomorphisms between curves."""
from curves.curve import INFINITY, Curve, Point, make_curve, parse_curve, parse_point
from curves.group import (
    add,
    count_points,
    double,
    group_law,
    group_structure,
    neg,
    point_order,
    scalar_mul,
    sub,
)
from curves.isomorphism import is_isomorphic, iso_class_key, scale_iso
