"""
Tonelli-Shanks square roots in a finite field of odd order q.
Works on field elements so it covers prime and extension fields alike.
"""


def decompose(n: int):
    """Write n = odd * 2^s and return (odd, s)."""
    s = 0
    while n % 2 == 0:
        s += 1
        n //= 2
    return n, s


def find_nonsquare(field):
    """First element (in enumeration order) failing Euler's criterion."""
    half = (field.order - 1) // 2
    for z in field.elements():
        if not z.is_zero() and z ** half != field.one:
            return z
    raise ValueError(f"{field} has no non-square")


def tonelli_shanks(field, a):
    """A square root of a, or None when a is not a square."""
    if a.is_zero():
        return field.zero
    q = field.order
    if a ** ((q - 1) // 2) != field.one:
        return None
    odd, s = decompose(q - 1)
    if s == 1:
        return a ** ((q + 1) // 4)
    z = find_nonsquare(field)
    m = s
    c = z ** odd
    t = a ** odd
    r = a ** ((odd + 1) // 2)
    while t != field.one:
        i, t2 = 0, t
        while t2 != field.one:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    return r
