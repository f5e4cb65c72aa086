"""
Exact field arithmetic: odd prime fields F_p, extensions F_p[s]/(m(s)) and Q.

Elements are immutable values bound to their field. Every element is stored in
canonical form (residue in [0, p), coefficient tuple, reduced Fraction) so equal
elements have identical representations and hash alike.
"""
import itertools
import random
import re
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Iterator, List, Optional, Tuple, Union

from arithmetic.errors import (
    BadParameter,
    CharTwo,
    DivisionByZero,
    NotEnumerable,
    NotPrime,
    ParseError,
    ReducibleModulus,
)
from arithmetic.sqrt import tonelli_shanks
from config.settings import Constants, DEFAULT_MODULI, settings
from config.logging_config import get_logger
from models.field import FieldDescriptor

logger = get_logger("fields")

Scalar = Union[int, Fraction, "FieldElement"]


def is_prime(n: int) -> bool:
    """Deterministic trial division; fields stay at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class FieldElement:
    """An element of a Field. Arithmetic accepts ints and Fractions on either side."""

    __slots__ = ("field", "value")

    def __init__(self, field: "Field", value):
        self.field = field
        self.value = value

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise BadParameter(f"Elements of different fields: {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._sub(self.value, other.value))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._sub(other.value, self.value))

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("Inverse of zero", {"field": str(self.field)})
        return FieldElement(self.field, self.field._inv(self.value))

    def is_zero(self) -> bool:
        return self.value == self.field.zero.value

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def sort_key(self):
        return self.field._sort_key(self.value)

    def __lt__(self, other: "FieldElement"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return f"FieldElement({self.field.format(self)} in {self.field})"


class Field(ABC):
    """Abstract field handle. Subclasses work on raw canonical values."""

    def __init__(self, descriptor: FieldDescriptor):
        self.descriptor = descriptor
        self.key = (descriptor.kind, descriptor.p, descriptor.k, tuple(descriptor.modulus or ()))
        self.zero = FieldElement(self, self._normalize(0))
        self.one = FieldElement(self, self._normalize(1))

    def __call__(self, value) -> FieldElement:
        """Coerce an int, Fraction, raw value or element into this field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise BadParameter(f"{value!r} does not belong to {self}")
            return value
        return FieldElement(self, self._normalize(value))

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return self.descriptor.spec_string()

    __repr__ = __str__

    @property
    def is_finite(self) -> bool:
        return self.descriptor.kind != "rational"

    @property
    def order(self) -> Optional[int]:
        return self.descriptor.order

    @property
    def characteristic(self) -> int:
        return self.descriptor.p or 0

    # raw-value primitives

    @abstractmethod
    def _normalize(self, value): ...

    @abstractmethod
    def _add(self, a, b): ...

    @abstractmethod
    def _sub(self, a, b): ...

    @abstractmethod
    def _mul(self, a, b): ...

    @abstractmethod
    def _neg(self, a): ...

    @abstractmethod
    def _inv(self, a): ...

    @abstractmethod
    def _sort_key(self, a): ...

    # element-level operations

    def arith(self, op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
        """Dispatch one of add, sub, mul, div, neg, inv."""
        a = self(a)
        if op == "neg":
            return -a
        if op == "inv":
            return a.inverse()
        if b is None:
            raise BadParameter(f"Operation {op} needs two operands")
        b = self(b)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            return a / b
        raise BadParameter(f"Unknown operation: {op}")

    def elements(self) -> Iterator[FieldElement]:
        raise NotEnumerable(f"{self} is not finite")

    def random_element(self, rng: random.Random) -> FieldElement:
        raise NotEnumerable(f"{self} has no uniform distribution")

    @abstractmethod
    def sqrt(self, a: FieldElement) -> Optional[Tuple[FieldElement, FieldElement]]:
        """Both square roots with the canonical one first, or None."""

    def is_square(self, a: FieldElement) -> bool:
        return self.sqrt(a) is not None

    def sqrt_minus_one(self) -> Optional[FieldElement]:
        roots = self.sqrt(-self.one)
        return roots[0] if roots else None

    @abstractmethod
    def format(self, a: FieldElement) -> str: ...

    @abstractmethod
    def parse(self, text: str) -> FieldElement: ...


class FiniteField(Field):
    """Shared machinery for F_q: enumeration, square table, Tonelli-Shanks fallback."""

    def elements(self) -> Iterator[FieldElement]:
        for value in self._raw_elements():
            yield FieldElement(self, value)

    @abstractmethod
    def _raw_elements(self) -> Iterator: ...

    def nonzero_elements(self) -> Iterator[FieldElement]:
        return (e for e in self.elements() if not e.is_zero())

    @cached_property
    def _square_roots(self) -> dict:
        """Map value -> canonical square root, built by exhaustive squaring."""
        table = {}
        for x in self.elements():
            sq = (x * x).value
            neg = -x
            canonical = x if x.sort_key() <= neg.sort_key() else neg
            current = table.get(sq)
            if current is None or canonical.sort_key() < current.sort_key():
                table[sq] = canonical
        return table

    def sqrt(self, a: FieldElement) -> Optional[Tuple[FieldElement, FieldElement]]:
        a = self(a)
        if self.order <= settings.exhaustive_sqrt_max_q:
            root = self._square_roots.get(a.value)
        else:
            root = tonelli_shanks(self, a)
            if root is not None and (-root).sort_key() < root.sort_key():
                root = -root
        if root is None:
            return None
        return root, -root

    def is_square(self, a: FieldElement) -> bool:
        if self.order <= settings.exhaustive_sqrt_max_q:
            return a.value in self._square_roots
        return a.is_zero() or a ** ((self.order - 1) // 2) == self.one

    def square_class(self, a: FieldElement) -> int:
        """0 for zero, 1 for nonzero squares, -1 for non-squares."""
        if a.is_zero():
            return 0
        return 1 if self.is_square(a) else -1

    def random_element(self, rng: random.Random) -> FieldElement:
        return FieldElement(self, self._random_raw(rng))

    @abstractmethod
    def _random_raw(self, rng: random.Random): ...


class PrimeField(FiniteField):
    """F_p for an odd prime p."""

    def __init__(self, descriptor: FieldDescriptor):
        self.p = descriptor.p
        super().__init__(descriptor)

    def _normalize(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"Denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _sort_key(self, a):
        return a

    def _raw_elements(self):
        return iter(range(self.p))

    def _random_raw(self, rng):
        return rng.randrange(self.p)

    def format(self, a: FieldElement) -> str:
        return str(a.value)

    def parse(self, text: str) -> FieldElement:
        text = text.strip()
        try:
            if "/" in text:
                return self(Fraction(text))
            return self(int(text))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"Cannot parse {text!r} as an element of {self}") from e


class ExtensionField(FiniteField):
    """F_p[s]/(m(s)) with values stored as coefficient tuples, constant term first."""

    def __init__(self, descriptor: FieldDescriptor):
        self.p = descriptor.p
        self.k = descriptor.k
        self.modulus = tuple(c % self.p for c in descriptor.modulus)
        super().__init__(descriptor)

    def _normalize(self, value):
        if isinstance(value, tuple):
            if len(value) != self.k:
                raise BadParameter(f"Expected {self.k} coefficients, got {len(value)}")
            return tuple(c % self.p for c in value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"Denominator of {value} vanishes mod {self.p}")
            value = value.numerator * pow(value.denominator, -1, self.p)
        return (int(value) % self.p,) + (0,) * (self.k - 1)

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x % self.p for x in a)

    def _mul(self, a, b):
        p, k = self.p, self.k
        product = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    product[i + j] += x * y
        # reduce with s^k = -(m_0 + m_1 s + ... + m_{k-1} s^{k-1})
        for deg in range(2 * k - 2, k - 1, -1):
            c = product[deg] % p
            if c:
                for j in range(k):
                    product[deg - k + j] -= c * self.modulus[j]
            product[deg] = 0
        return tuple(c % p for c in product[:k])

    def _inv(self, a):
        # a^(q-2), q is small
        result = FieldElement(self, a) ** (self.order - 2)
        return result.value

    def _sort_key(self, a):
        return a

    def _raw_elements(self):
        return itertools.product(range(self.p), repeat=self.k)

    def _random_raw(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def generator(self) -> FieldElement:
        """The class of s."""
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def format(self, a: FieldElement) -> str:
        terms = []
        for deg, c in enumerate(a.value):
            if not c:
                continue
            if deg == 0:
                terms.append(str(c))
            else:
                power = "s" if deg == 1 else f"s^{deg}"
                terms.append(power if c == 1 else f"{c}*{power}")
        return "+".join(terms) if terms else "0"

    _TERM = re.compile(r"^(?P<coef>-?\d*)\*?(?P<var>s(\^(?P<exp>\d+))?)?$")

    def parse(self, text: str) -> FieldElement:
        cleaned = text.replace(" ", "")
        if not cleaned:
            raise ParseError("Empty element literal")
        coeffs = [0] * self.k
        for raw in cleaned.replace("-", "+-").split("+"):
            if not raw:
                continue
            match = self._TERM.match(raw)
            if not match or (not match.group("var") and match.group("coef") in ("", "-")):
                raise ParseError(f"Cannot parse term {raw!r} of {text!r} in {self}")
            coef_text = match.group("coef")
            coef = -1 if coef_text == "-" else 1 if coef_text == "" else int(coef_text)
            deg = 0
            if match.group("var"):
                deg = int(match.group("exp") or 1)
            if deg >= self.k:
                raise ParseError(f"Degree {deg} term in {text!r} exceeds field degree {self.k}")
            coeffs[deg] += coef
        return self(tuple(coeffs))


class RationalField(Field):
    """Q with exact Fraction values."""

    def __init__(self, descriptor: FieldDescriptor = None):
        super().__init__(descriptor or FieldDescriptor(kind="rational"))

    def _normalize(self, value):
        return Fraction(value)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _sort_key(self, a):
        return a

    def sqrt(self, a: FieldElement) -> Optional[Tuple[FieldElement, FieldElement]]:
        value = self(a).value
        if value < 0:
            return None
        num_root = isqrt(value.numerator)
        den_root = isqrt(value.denominator)
        if num_root * num_root != value.numerator or den_root * den_root != value.denominator:
            return None
        root = FieldElement(self, Fraction(num_root, den_root))
        return root, -root

    def format(self, a: FieldElement) -> str:
        value = a.value
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def parse(self, text: str) -> FieldElement:
        try:
            return self(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"Cannot parse {text!r} as a rational number") from e


def _poly_mod(dividend: List[int], divisor: List[int], p: int) -> List[int]:
    """Remainder of dividend by a monic divisor over F_p (coefficients constant first)."""
    rem = [c % p for c in dividend]
    d = len(divisor) - 1
    for deg in range(len(rem) - 1, d - 1, -1):
        c = rem[deg]
        if c:
            for j in range(d + 1):
                rem[deg - d + j] = (rem[deg - d + j] - c * divisor[j]) % p
    return rem[:d]


def is_irreducible(modulus: List[int], p: int) -> bool:
    """Search for a monic factor of degree at most k/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(modulus, list(lower) + [1], p)):
                return False
    return True


def make_field(desc: FieldDescriptor) -> Field:
    """Build a field handle, validating characteristic, primality and modulus."""
    if desc.kind == "rational":
        return RationalField(desc)
    if desc.p == 2:
        raise CharTwo("Characteristic 2 is not supported", {"p": desc.p})
    if not is_prime(desc.p):
        raise NotPrime(f"{desc.p} is not prime", {"p": desc.p})
    if desc.kind == "prime":
        return PrimeField(desc)
    if desc.k > Constants.MAX_EXTENSION_DEGREE:
        raise BadParameter(f"Extension degree {desc.k} exceeds {Constants.MAX_EXTENSION_DEGREE}")
    if desc.modulus is None:
        default = DEFAULT_MODULI.get((desc.p, desc.k))
        if default is None:
            raise BadParameter(f"No default modulus for p={desc.p}, k={desc.k}; pass one explicitly")
        desc = desc.model_copy(update={"modulus": list(default)})
    if not is_irreducible(list(desc.modulus), desc.p):
        raise ReducibleModulus(
            f"Modulus {desc.modulus} is reducible over F_{desc.p}", {"modulus": desc.modulus}
        )
    logger.debug(f"Built extension field {desc.spec_string()}")
    return ExtensionField(desc)


def prime_field(p: int) -> Field:
    return make_field(FieldDescriptor(kind="prime", p=p))


def rational_field() -> Field:
    return make_field(FieldDescriptor(kind="rational"))


def field_of_order(q: int) -> Field:
    """F_q with the default modulus when q is a proper prime power."""
    if is_prime(q):
        return prime_field(q)
    for p in range(3, isqrt(q) + 1, 2):
        if is_prime(p):
            k, n = 0, q
            while n % p == 0:
                n //= p
                k += 1
            if n == 1:
                return make_field(FieldDescriptor(kind="extension", p=p, k=k))
    if q % 2 == 0:
        raise CharTwo(f"F_{q} has characteristic 2")
    raise NotPrime(f"{q} is not a prime power")


_SPEC = re.compile(r"^(?:(?P<q>Q)|Fp:(?P<p>\d+)|Fq:(?P<qp>\d+)\^(?P<k>\d+)(?::(?P<mod>[-\d,\s]+))?)$")


def parse_field_spec(text: str) -> Field:
    """Parse `Q` | `Fp:<p>` | `Fq:<p>^<k>[:<coeffs, constant first>]`."""
    match = _SPEC.match(text.strip())
    if not match:
        raise ParseError(f"Bad field spec {text!r}; expected Q, Fp:<p> or Fq:<p>^<k>[:coeffs]")
    if match.group("q"):
        return rational_field()
    if match.group("p"):
        return make_field(_descriptor(text, kind="prime", p=int(match.group("p"))))
    p, k = int(match.group("qp")), int(match.group("k"))
    modulus = None
    if match.group("mod"):
        try:
            modulus = [int(c) for c in match.group("mod").split(",")]
        except ValueError as e:
            raise ParseError(f"Bad modulus in {text!r}") from e
        if len(modulus) == k:
            modulus.append(1)
    if k == 1:
        return make_field(_descriptor(text, kind="prime", p=p))
    return make_field(_descriptor(text, kind="extension", p=p, k=k, modulus=modulus))


def _descriptor(text: str, **fields) -> FieldDescriptor:
    try:
        return FieldDescriptor(**fields)
    except ValueError as e:
        raise ParseError(f"Bad field spec {text!r}: {e}") from e
