"""
Symmetric identities behind the order-5 analysis, in sign-corrected form:

    sum_cyc (-t1^2 + t2^2 + t3^2)(t1^2 - t2^2 + t3^2)
        = (t1 + t2 + t3)(-t1 + t2 + t3)(t1 - t2 + t3)(t1 + t2 - t3)

and, adding 4 t1 t2 t3 (t1 + t2 + t3) to the left side,

    ... = -(t1 + t2 + t3)(t1^3 + t2^3 + t3^3 - t1^2 t2 - t1 t2^2 - t2^2 t3
                          - t2 t3^2 - t1^2 t3 - t1 t3^2 - 2 t1 t2 t3).

The commonly printed versions carry the opposite global sign on the right.
"""
import random
from typing import Dict

from arithmetic.errors import BadParameter
from arithmetic.fields import Field, FieldElement
from config.logging_config import get_logger

logger = get_logger("identities")


def cyclic_sum(t1: FieldElement, t2: FieldElement, t3: FieldElement) -> FieldElement:
    b1 = -t1 * t1 + t2 * t2 + t3 * t3
    b2 = t1 * t1 - t2 * t2 + t3 * t3
    b3 = t1 * t1 + t2 * t2 - t3 * t3
    return b1 * b2 + b2 * b3 + b3 * b1


def heron_product(t1: FieldElement, t2: FieldElement, t3: FieldElement) -> FieldElement:
    return (t1 + t2 + t3) * (-t1 + t2 + t3) * (t1 - t2 + t3) * (t1 + t2 - t3)


def order5_cubic(t1: FieldElement, t2: FieldElement, t3: FieldElement) -> FieldElement:
    return (
        t1 ** 3 + t2 ** 3 + t3 ** 3
        - t1 * t1 * t2 - t1 * t2 * t2
        - t2 * t2 * t3 - t2 * t3 * t3
        - t1 * t1 * t3 - t1 * t3 * t3
        - 2 * t1 * t2 * t3
    )


def _sides(t1, t2, t3):
    m0_left = cyclic_sum(t1, t2, t3)
    m0_right = heron_product(t1, t2, t3)
    m1_left = m0_left + 4 * t1 * t2 * t3 * (t1 + t2 + t3)
    m1_right = -(t1 + t2 + t3) * order5_cubic(t1, t2, t3)
    return m0_left, m0_right, m1_left, m1_right


def check_symmetric_identities(field: Field, t1, t2, t3) -> bool:
    """Both corrected identities at (t1, t2, t3)."""
    m0_left, m0_right, m1_left, m1_right = _sides(field(t1), field(t2), field(t3))
    return m0_left == m0_right and m1_left == m1_right


def printed_identity_discrepancy(field: Field) -> Dict[str, str]:
    """Both sides at (1, 1, 1) against the printed (negated) right-hand sides."""
    one = field.one
    m0_left, m0_right, m1_left, m1_right = _sides(one, one, one)
    return {
        "point": "1,1,1",
        "m0_left": str(m0_left),
        "m0_right_corrected": str(m0_right),
        "m0_right_printed": str(-m0_right),
        "m1_left": str(m1_left),
        "m1_right_corrected": str(m1_right),
        "m1_right_printed": str(-m1_right),
        "printed_holds": str(m0_left == -m0_right and m1_left == -m1_right).lower(),
    }


def random_identity_trials(field: Field, samples: int, seed: int) -> int:
    """Number of failures over `samples` random triples."""
    if samples <= 0:
        raise BadParameter(f"samples must be positive, got {samples}", {"samples": samples})
    rng = random.Random(seed)
    failures = 0
    for _ in range(samples):
        t = [field.random_element(rng) for _ in range(3)]
        if not check_symmetric_identities(field, *t):
            failures += 1
            logger.warning(f"identity failed at {[str(v) for v in t]}")
    return failures
