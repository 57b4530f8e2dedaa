"""
Exact arithmetic: rationals and the quadratic field Q(tau), tau = exp(i*pi/3)

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator, zero is 0/1).  Elements of Q(tau) are stored in the basis {1, tau}
and reduced with the minimal polynomial tau^2 = tau - 1.
"""

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

import mpmath

Rational = Fraction
Scalar = Union[int, Fraction, "CycloQ6"]

_CYCLO_RE = re.compile(
    r"^\s*(?P<a>[+-]?[0-9./]+)\s*(?P<sign>[+-])\s*(?P<b>[0-9./]+)\s*\*\s*t\s*$"
)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal string such as ``"-1.25"``"""
    return Fraction(text.strip())


def format_rational(value: Union[int, Fraction]) -> str:
    """Render as ``"p"`` when integral, otherwise ``"p/q"``"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class CycloQ6:
    """
    Element a + b*tau of Q(tau), tau = exp(i*pi/3).

    tau^2 = tau - 1, tau^3 = -1, tau^6 = 1 and tau + tau^-1 = 1.  Instances are
    immutable; every operation returns a fresh value.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "_a", _as_fraction(a))
        object.__setattr__(self, "_b", _as_fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("CycloQ6 values are immutable")

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, value) -> "CycloQ6":
        if isinstance(value, CycloQ6):
            return value
        return cls(_as_fraction(value), 0)

    # ---------- ring operations ----------

    def __add__(self, other):
        if not isinstance(other, (CycloQ6, int, Fraction)):
            return NotImplemented
        o = CycloQ6.coerce(other)
        return CycloQ6(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self):
        return CycloQ6(-self._a, -self._b)

    def __sub__(self, other):
        if not isinstance(other, (CycloQ6, int, Fraction)):
            return NotImplemented
        o = CycloQ6.coerce(other)
        return CycloQ6(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return CycloQ6.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloQ6(self._a * other, self._b * other)
        if not isinstance(other, CycloQ6):
            return NotImplemented
        # (a + b t)(c + d t) = ac + (ad + bc) t + bd t^2,  t^2 = t - 1
        a, b, c, d = self._a, self._b, other._a, other._b
        bd = b * d
        return CycloQ6(a * c - bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm a^2 + ab + b^2 (product with the Galois conjugate)"""
        return self._a * self._a + self._a * self._b + self._b * self._b

    def conjugate(self) -> "CycloQ6":
        """Galois conjugate: tau -> tau^-1 = 1 - tau (complex conjugation)"""
        return CycloQ6(self._a + self._b, -self._b)

    def inverse(self) -> "CycloQ6":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(tau)")
        conj = self.conjugate()
        return CycloQ6(conj._a / n, conj._b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(tau)")
            return CycloQ6(self._a / other, self._b / other)
        if not isinstance(other, CycloQ6):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloQ6(1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ---------- comparison / conversion ----------

    def is_rational(self) -> bool:
        return self._b == 0

    def to_rational(self) -> Fraction:
        if self._b != 0:
            raise ValueError(f"{self} is not rational")
        return self._a

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __eq__(self, other):
        if isinstance(other, CycloQ6):
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __repr__(self):
        return f"CycloQ6({format_rational(self._a)}, {format_rational(self._b)})"

    def __str__(self):
        sign = "-" if self._b < 0 else "+"
        return f"{format_rational(self._a)}{sign}{format_rational(abs(self._b))}*t"

    @classmethod
    def parse(cls, text: str) -> "CycloQ6":
        """Parse the ``"a+b*t"`` form produced by ``str``; a bare rational is accepted too"""
        match = _CYCLO_RE.match(text)
        if match is None:
            return cls(parse_rational(text), 0)
        b = parse_rational(match.group("b"))
        if match.group("sign") == "-":
            b = -b
        return cls(parse_rational(match.group("a")), b)

    def to_numeric(self, precision: int = 53) -> mpmath.mpc:
        return cyclo_eval_numeric(self, precision)


TAU = CycloQ6(0, 1)
ONE = CycloQ6(1, 0)


def cyclo_mul(x: CycloQ6, y: CycloQ6) -> CycloQ6:
    return x * y


def cyclo_inv(x: CycloQ6) -> CycloQ6:
    return x.inverse()


def cyclo_eval_numeric(x: CycloQ6, precision: int = 53) -> mpmath.mpc:
    """Embed a + b*tau into C with tau -> exp(i*pi/3), at the given bit precision"""
    x = CycloQ6.coerce(x)
    with mpmath.workprec(precision + 8):
        tau = mpmath.expjpi(mpmath.mpf(1) / 3)
        value = mpmath.mpf(x.a.numerator) / x.a.denominator + (
            mpmath.mpf(x.b.numerator) / x.b.denominator
        ) * tau
    return value


def delta_of_tau(t: CycloQ6 = TAU) -> CycloQ6:
    """Anisotropy Delta(t) = (t^2 + t^-2) / 2 attached to the weight parameter"""
    return (t ** 2 + t ** -2) / 2


def power(base, exponent: int):
    """Exact integer power of a rational or Q(tau) scalar (negative exponents allowed)"""
    if isinstance(base, CycloQ6):
        return base ** exponent
    return _as_fraction(base) ** exponent


def normalize_scalar(value):
    """Demote a Q(tau) value with vanishing tau-part to a Fraction"""
    if isinstance(value, CycloQ6):
        return value.a if value.b == 0 else value
    return _as_fraction(value)
