"""Exact scalars over the integers, the rationals and prime fields.

Coefficients inside polynomials are stored as raw Python values (``int`` for
the integers and prime fields, :class:`fractions.Fraction` for the rationals)
and all arithmetic is routed through the owning :class:`ScalarKind`.  The
:class:`Scalar` wrapper pairs a raw value with its kind for the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, NotInvertible, NotPrime, ZeroDenominator

__all__ = [
    "ScalarKind",
    "IntegerRing",
    "RationalField",
    "PrimeField",
    "ZZ",
    "QQ",
    "GF",
    "Scalar",
    "rat_normalize",
    "fp_inv",
    "is_prime",
    "kind_from_json",
]

MAX_PRIME = 1 << 16

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def is_prime(n: int) -> bool:
    """Trial division; callers keep ``n`` below 2**16."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class ScalarKind:
    """Arithmetic on raw coefficient values of one base ring."""

    name = "?"
    is_field = False
    characteristic = 0

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, num: int, den: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def parse(self, text: str):
        """Parse an integer or ``n/d`` literal."""
        m = _RATIONAL_RE.match(text)
        if not m:
            raise InputError(f"not a scalar literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        return self.from_fraction(num, den)

    def from_json(self, value):
        if isinstance(value, bool):
            raise InputError(f"not a scalar literal: {value!r}")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            return self.parse(value)
        raise InputError(f"not a scalar literal: {value!r}")

    def to_json(self, value):
        return int(value)

    def fmt(self, value) -> str:
        return str(value)

    def json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class IntegerRing(ScalarKind):
    name = "Z"

    def from_int(self, n):
        return int(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise ZeroDenominator("zero denominator")
        if num % den:
            raise InputError(f"{num}/{den} is not an integer")
        return num // den

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit in Z")

    def json(self):
        return {"kind": "Z"}

    def __repr__(self):
        return "ZZ"


@dataclass(frozen=True)
class RationalField(ScalarKind):
    name = "Q"
    is_field = True

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise ZeroDenominator("zero denominator")
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise NotInvertible("0 is not invertible")
        return 1 / a

    def to_json(self, value):
        if value.denominator == 1:
            return int(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def fmt(self, value):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def json(self):
        return {"kind": "Q"}

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField(ScalarKind):
    p: int = 2
    is_field = True

    def __post_init__(self):
        if not isinstance(self.p, int) or not (2 <= self.p < MAX_PRIME) or not is_prime(self.p):
            raise NotPrime(f"{self.p!r} is not a prime below {MAX_PRIME}")

    @property
    def name(self):
        return f"F{self.p}"

    @property
    def characteristic(self):
        return self.p

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, num, den):
        if den == 0:
            raise ZeroDenominator("zero denominator")
        if den % self.p == 0:
            raise NotInvertible(f"denominator {den} vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise NotInvertible(f"0 is not invertible in F{self.p}")
        return pow(a, -1, self.p)

    def json(self):
        return {"kind": "Fp", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def kind_from_json(obj) -> ScalarKind:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError(f"bad base descriptor: {obj!r}")
    kind = obj["kind"]
    if kind == "Z":
        return ZZ
    if kind == "Q":
        return QQ
    if kind == "Fp":
        if "p" not in obj:
            raise InputError("Fp base needs a prime 'p'")
        return GF(obj["p"])
    raise InputError(f"unknown base kind {kind!r}")


@dataclass(frozen=True)
class Scalar:
    """An exact value tagged with its base ring."""

    kind: ScalarKind
    value: object

    def _check(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.kind.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.kind != self.kind:
            raise InputError(f"cannot combine {self.kind!r} with {other.kind!r}")
        return other.value

    def __add__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return Scalar(self.kind, self.kind.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return Scalar(self.kind, self.kind.sub(self.value, v))

    def __rsub__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return Scalar(self.kind, self.kind.sub(v, self.value))

    def __mul__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return Scalar(self.kind, self.kind.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.kind, self.kind.neg(self.value))

    def __truediv__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return Scalar(self.kind, self.kind.div(self.value, v))

    def inverse(self) -> "Scalar":
        return Scalar(self.kind, self.kind.inv(self.value))

    def is_zero(self) -> bool:
        return self.kind.is_zero(self.value)

    @property
    def numerator(self) -> int:
        return Fraction(self.value).numerator

    @property
    def denominator(self) -> int:
        return Fraction(self.value).denominator

    def __str__(self):
        return self.kind.fmt(self.value)


def rat_normalize(num: int, den: int) -> Scalar:
    """Reduced rational with positive denominator.

    >>> str(rat_normalize(3, -6))
    '-1/2'
    """
    if den == 0:
        raise ZeroDenominator("zero denominator")
    return Scalar(QQ, Fraction(num, den))


def fp_inv(a: Scalar) -> Scalar:
    if not isinstance(a.kind, PrimeField):
        raise InputError("fp_inv expects a prime-field scalar")
    return a.inverse()
