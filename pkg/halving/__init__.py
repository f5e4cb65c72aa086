"""Point halving, root recovery and division by powers of two."""
from halving.division import divide_by_pow2, quarter_points
from halving.halving import (
    HalfPoint,
    RootTriple,
    half_offset,
    halves,
    is_halvable,
    kernel_of_two,
    recover_roots,
)
