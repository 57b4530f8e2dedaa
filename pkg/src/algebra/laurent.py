"""
Centered Laurent polynomials in one variable over Q or Q(tau)

A polynomial is a sparse map exponent -> coefficient with no stored zeros.
Coefficients are Fractions; any Q(tau) coefficient whose tau-part vanishes is
demoted back to a Fraction, so mixing domains promotes implicitly and the
domain tag reflects what is actually stored.
"""

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

import mpmath

from ..errors import NotDivisibleError
from .exact_arith import CycloQ6, format_rational, normalize_scalar, parse_rational, power

Coefficient = Union[Fraction, CycloQ6]


class CenteredLaurentPoly:
    """Finite sum of c_k * u^k over positive and negative k"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Union[Mapping[int, object], Iterable[Tuple[int, object]], None] = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        clean: Dict[int, Coefficient] = {}
        for exponent, value in items:
            value = normalize_scalar(value)
            if value != 0:
                clean[int(exponent)] = value
        self._coeffs = clean

    # ---------- constructors ----------

    @classmethod
    def zero(cls) -> "CenteredLaurentPoly":
        return cls()

    @classmethod
    def constant(cls, value) -> "CenteredLaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, value=1) -> "CenteredLaurentPoly":
        return cls({exponent: value})

    # ---------- inspection ----------

    @property
    def coeffs(self) -> Mapping[int, Coefficient]:
        return MappingProxyType(self._coeffs)

    @property
    def domain(self) -> str:
        if any(isinstance(c, CycloQ6) for c in self._coeffs.values()):
            return "CycloQ6"
        return "Rational"

    def coefficient(self, exponent: int) -> Coefficient:
        return self._coeffs.get(exponent, Fraction(0))

    def terms(self) -> List[Tuple[int, Coefficient]]:
        """Terms in decreasing exponent order"""
        return sorted(self._coeffs.items(), reverse=True)

    def exponents(self) -> List[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self) -> Iterator[Tuple[int, Coefficient]]:
        return iter(self.terms())

    @property
    def max_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no exponents")
        return max(self._coeffs)

    @property
    def min_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no exponents")
        return min(self._coeffs)

    @property
    def degree(self) -> int:
        """Exponent span max - min; equals 2 * max_abs_exponent for centered polynomials"""
        if not self._coeffs:
            return 0
        return self.max_exponent - self.min_exponent

    @property
    def max_abs_exponent(self) -> int:
        if not self._coeffs:
            return 0
        return max(abs(k) for k in self._coeffs)

    @property
    def leading_coefficient(self) -> Coefficient:
        """Coefficient at the highest exponent"""
        return self._coeffs[self.max_exponent]

    # ---------- arithmetic ----------

    @staticmethod
    def _lift(other) -> "CenteredLaurentPoly":
        if isinstance(other, CenteredLaurentPoly):
            return other
        return CenteredLaurentPoly.constant(other)

    def __add__(self, other):
        if not isinstance(other, (CenteredLaurentPoly, int, Fraction, CycloQ6)):
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in self._lift(other)._coeffs.items():
            out[k] = out.get(k, 0) + c
        return CenteredLaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CenteredLaurentPoly({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, (CenteredLaurentPoly, int, Fraction, CycloQ6)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloQ6)):
            return CenteredLaurentPoly({k: c * other for k, c in self._coeffs.items()})
        if not isinstance(other, CenteredLaurentPoly):
            return NotImplemented
        out: Dict[int, Coefficient] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return CenteredLaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = CenteredLaurentPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloQ6)):
            other = CenteredLaurentPoly.constant(other)
        if not isinstance(other, CenteredLaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    # ---------- substitutions ----------

    def shift(self, k: int) -> "CenteredLaurentPoly":
        """Multiply by u^k"""
        return CenteredLaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def scale_variable(self, c) -> "CenteredLaurentPoly":
        """p(c*u): the coefficient at u^k is multiplied by c^k"""
        if c == 0:
            raise ValueError("scale factor must be nonzero")
        return CenteredLaurentPoly({k: v * power(c, k) for k, v in self._coeffs.items()})

    def invert_variable(self) -> "CenteredLaurentPoly":
        """p(1/u)"""
        return CenteredLaurentPoly({-k: c for k, c in self._coeffs.items()})

    def theta(self) -> "CenteredLaurentPoly":
        """Euler operator u d/du"""
        return CenteredLaurentPoly({k: k * c for k, c in self._coeffs.items()})

    def derivative(self) -> "CenteredLaurentPoly":
        return CenteredLaurentPoly({k - 1: k * c for k, c in self._coeffs.items()})

    def divide_exact(self, den: "CenteredLaurentPoly") -> "CenteredLaurentPoly":
        """
        Quotient q with q * den == self.

        Works from the top exponent downward, which is ordinary long division of
        u^-min(self) * self by u^-min(den) * den.

        Raises:
            NotDivisibleError: carrying the remainder when den does not divide self
        """
        den = self._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return CenteredLaurentPoly.zero()

        rem: Dict[int, Coefficient] = dict(self._coeffs)
        d_hi = den.max_exponent
        span = den.degree
        lead = den._coeffs[d_hi]
        floor = self.min_exponent
        quotient: Dict[int, Coefficient] = {}

        while rem:
            hi = max(rem)
            if hi - floor < span:
                break
            t = rem[hi] / lead
            shift = hi - d_hi
            quotient[shift] = t
            for k, c in den._coeffs.items():
                key = k + shift
                value = rem.get(key, 0) - t * c
                if value == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = value

        if rem:
            raise NotDivisibleError(CenteredLaurentPoly(rem))
        return CenteredLaurentPoly(quotient)

    # ---------- numerics ----------

    def eval_numeric(self, u, precision: int = 53) -> mpmath.mpc:
        """Horner evaluation of the nonnegative part in u and the negative part in 1/u"""
        if u == 0:
            raise ValueError("cannot evaluate a Laurent polynomial at u = 0")
        if not self._coeffs:
            return mpmath.mpc(0)
        with mpmath.workprec(precision + 8):
            x = mpmath.mpmathify(u)
            hi = max(self.max_exponent, 0)
            positive = mpmath.mpc(0)
            for k in range(hi, -1, -1):
                positive = positive * x + _numeric(self.coefficient(k), precision)
            lo = min(self.min_exponent, 0)
            negative = mpmath.mpc(0)
            inv = 1 / x
            for k in range(lo, 0):
                negative = (negative + _numeric(self.coefficient(k), precision)) * inv
            return positive + negative

    # ---------- rendering ----------

    def to_text(self, var: str = "u") -> str:
        """``c_k*u^k + ...`` in decreasing exponent order"""
        if not self._coeffs:
            return "0"
        pieces: List[str] = []
        for k, c in self.terms():
            monomial = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if isinstance(c, CycloQ6):
                body = f"({c})" + (f"*{monomial}" if monomial else "")
                sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                magnitude = abs(c)
                if monomial and magnitude == 1:
                    body = monomial
                elif monomial:
                    body = f"{format_rational(magnitude)}*{monomial}"
                else:
                    body = format_rational(magnitude)
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def to_json(self) -> List[List[object]]:
        """``[[exponent, "coefficient"], ...]`` in decreasing exponent order"""
        return [[k, _format_coefficient(c)] for k, c in self.terms()]

    @classmethod
    def from_json(cls, pairs: Iterable[Iterable[object]]) -> "CenteredLaurentPoly":
        out = {}
        for exponent, text in pairs:
            out[int(exponent)] = CycloQ6.parse(text) if "t" in str(text) else parse_rational(str(text))
        return cls(out)

    def __repr__(self):
        return f"CenteredLaurentPoly({self.to_text()})"

    __str__ = to_text


def _format_coefficient(c: Coefficient) -> str:
    if isinstance(c, CycloQ6):
        return str(c)
    return format_rational(c)


def _numeric(c: Coefficient, precision: int):
    if isinstance(c, CycloQ6):
        return c.to_numeric(precision)
    return mpmath.mpf(c.numerator) / c.denominator


# ---------- operation-level helpers ----------


def sigma(k: int) -> CenteredLaurentPoly:
    """sigma(u^k) = u^k - u^-k"""
    if k == 0:
        raise ValueError("sigma(u^0) is the zero polynomial; k must be nonzero")
    return CenteredLaurentPoly({k: 1, -k: -1})


def sigma_scaled(c) -> CenteredLaurentPoly:
    """sigma(c * u) = c*u - c^-1 * u^-1"""
    return sigma(1).scale_variable(c)


def scale_variable(p: CenteredLaurentPoly, c) -> CenteredLaurentPoly:
    return p.scale_variable(c)


def invert_variable(p: CenteredLaurentPoly) -> CenteredLaurentPoly:
    return p.invert_variable()


def divide_exact(num: CenteredLaurentPoly, den: CenteredLaurentPoly) -> CenteredLaurentPoly:
    return num.divide_exact(den)


def eval_numeric(p: CenteredLaurentPoly, u, precision: int = 53) -> mpmath.mpc:
    return p.eval_numeric(u, precision)
