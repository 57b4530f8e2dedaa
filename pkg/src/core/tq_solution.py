"""
Explicit solution of the scalar T-Q equation at tau = exp(i*pi/3)

phi(u) = binom(M - 1/3, M)^-1 * sum_m binom(M - 1/3, m) binom(M + 1/3, M - m) sigma(u^(1 - 3M + 6m))

and xi(u) = phi(u) / sigma(u)^(2M+1).  Every property of phi used downstream
(cyclic identity, symmetries, divisibility, the second-order ODE, the T-Q
identity itself, uniqueness) is verified as an exact Laurent-polynomial identity.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional

from ..algebra.exact_arith import TAU, CycloQ6, normalize_scalar
from ..algebra.laurent import CenteredLaurentPoly, sigma, sigma_scaled
from ..algebra.linalg import nullspace, solve
from ..errors import CoefficientExtractionError, NotDivisibleError, VerificationError
from .base import CheckReport

logger = logging.getLogger(__name__)

U6_MINUS_1 = CenteredLaurentPoly({6: 1, 0: -1})
U6_PLUS_1 = CenteredLaurentPoly({6: 1, 0: 1})


@dataclass(frozen=True)
class PhiPolynomial:
    M: int
    poly: CenteredLaurentPoly
    normalization: Fraction  # binom(M - 1/3, M)^-1

    @property
    def n_sites(self) -> int:
        return 2 * self.M + 1


@dataclass(frozen=True)
class XiPolynomial:
    M: int
    poly: CenteredLaurentPoly

    @property
    def n_sites(self) -> int:
        return 2 * self.M + 1


def generalized_binomial(x: Fraction, k: int) -> Fraction:
    """binom(x, k) = x (x-1) ... (x-k+1) / k! for rational x"""
    if k < 0:
        return Fraction(0)
    value = Fraction(1)
    for i in range(k):
        value = value * (x - i) / (i + 1)
    return value


def _phi_sum(M: int) -> CenteredLaurentPoly:
    lower = Fraction(3 * M - 1, 3)
    upper = Fraction(3 * M + 1, 3)
    total = CenteredLaurentPoly.zero()
    for m in range(M + 1):
        weight = generalized_binomial(lower, m) * generalized_binomial(upper, M - m)
        total = total + sigma(1 - 3 * M + 6 * m) * weight
    return total


@lru_cache(maxsize=None)
def build_phi(M: int) -> PhiPolynomial:
    """Construct phi for N = 2M + 1 and assert its defining properties"""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    normalization = 1 / generalized_binomial(Fraction(3 * M - 1, 3), M)
    phi = PhiPolynomial(M=M, poly=_phi_sum(M) * normalization, normalization=normalization)

    bad = [k for k in phi.poly.exponents() if k % 3 == 0]
    if bad:
        raise VerificationError(f"phi for M={M} has exponents divisible by 3: {bad}")
    report = check_symmetries(phi)
    if not report.passed:
        raise VerificationError(f"phi for M={M} fails its invariants: {report.failures}")
    return phi


def xi_from_phi(phi: PhiPolynomial) -> XiPolynomial:
    """xi = phi / sigma(u)^(2M+1); raises NotDivisibleError if phi is not divisible"""
    quotient = phi.poly.divide_exact(sigma(1) ** (2 * phi.M + 1))
    return XiPolynomial(M=phi.M, poly=quotient)


@lru_cache(maxsize=None)
def build_xi(M: int) -> XiPolynomial:
    return xi_from_phi(build_phi(M))


# ---------- checks on phi ----------


def check_cyclic(phi: PhiPolynomial) -> CheckReport:
    """phi(u) + phi(tau^2 u) + phi(tau^4 u) = 0, tested exponent by exponent"""
    offending: List[int] = []
    for k, c in phi.poly.terms():
        factor = 1 + TAU ** (2 * k) + TAU ** (4 * k)
        if c * factor != 0:
            offending.append(k)
    failures = [f"nonzero coefficient of phi(u)+phi(t^2 u)+phi(t^4 u) at u^{k}" for k in offending]
    return CheckReport.from_failures(
        "tq.cyclic",
        {"M": phi.M},
        failures,
        details={"offending_exponents": offending},
    )


def check_symmetries(phi: PhiPolynomial) -> CheckReport:
    """Inversion antisymmetry, parity, degree 6M+2 and divisibility by sigma^(2M+1)"""
    M, p = phi.M, phi.poly
    failures: List[str] = []

    if p.invert_variable() != -p:
        failures.append("phi(1/u) != -phi(u)")
    sign = 1 if (M + 1) % 2 == 0 else -1
    if p.scale_variable(Fraction(-1)) != p * sign:
        failures.append(f"phi(-u) != {sign:+d} phi(u)")
    if p.degree != 6 * M + 2:
        failures.append(f"degree {p.degree} != {6 * M + 2}")
    try:
        p.divide_exact(sigma(1) ** (2 * M + 1))
    except NotDivisibleError as exc:
        failures.append(f"not divisible by sigma^{2 * M + 1}: remainder {exc.remainder}")

    return CheckReport.from_failures("tq.symmetries", {"M": M}, failures)


def phi_ode_residual(phi: PhiPolynomial) -> CenteredLaurentPoly:
    """
    (u^6 - 1) [theta^2 phi + (3M+1)(3M-1) phi] - 6M (u^6 + 1) theta phi,  theta = u d/du

    This is the ODE multiplied through by u^6 - 1; it vanishes identically for the
    true solution.
    """
    M, p = phi.M, phi.poly
    theta_p = p.theta()
    first = theta_p.theta() + p * ((3 * M + 1) * (3 * M - 1))
    return U6_MINUS_1 * first - U6_PLUS_1 * theta_p * (6 * M)


def check_phi_ode(phi: PhiPolynomial) -> CheckReport:
    residual = phi_ode_residual(phi)
    failures = [] if residual.is_zero() else [f"ODE residual {residual}"]
    return CheckReport.from_failures(
        "tq.phi_ode", {"M": phi.M}, failures, residual=None if residual.is_zero() else residual.to_text()
    )


def check_xi(xi: XiPolynomial, phi: Optional[PhiPolynomial] = None) -> CheckReport:
    """Degree 2M, xi(1/u) = xi(u), leading coefficient 1 and phi = xi sigma^(2M+1)"""
    M, p = xi.M, xi.poly
    failures: List[str] = []
    if p.degree != 2 * M:
        failures.append(f"degree {p.degree} != {2 * M}")
    if p.invert_variable() != p:
        failures.append("xi(1/u) != xi(u)")
    if p.is_zero() or p.leading_coefficient != 1:
        failures.append(f"leading coefficient {p.leading_coefficient if p else 0} != 1")
    phi = phi or build_phi(M)
    if p * sigma(1) ** (2 * M + 1) != phi.poly:
        failures.append("phi != xi * sigma^(2M+1)")
    return CheckReport.from_failures("tq.xi", {"M": M}, failures)


def check_tq_identity(xi: XiPolynomial, eigenvalue: Optional[CenteredLaurentPoly] = None) -> CheckReport:
    """
    lambda(u) xi(u) = sigma^N(tau u) xi(tau^-2 u) + sigma^N(tau^-1 u) xi(tau^2 u)

    with lambda(u) = sigma(u)^N unless another eigenvalue is supplied.
    """
    N = xi.n_sites
    lam = eigenvalue if eigenvalue is not None else sigma(1) ** N
    lhs = lam * xi.poly
    rhs = (
        sigma_scaled(TAU) ** N * xi.poly.scale_variable(TAU ** -2)
        + sigma_scaled(TAU ** -1) ** N * xi.poly.scale_variable(TAU ** 2)
    )
    residual = lhs - rhs
    failures = [] if residual.is_zero() else [f"T-Q residual has {len(residual)} nonzero terms"]
    return CheckReport.from_failures(
        "tq.identity",
        {"M": xi.M, "N": N},
        failures,
        residual=None if residual.is_zero() else residual.to_text(),
    )


# ---------- chi(z) through the field Q(tau) ----------


def _weight_products(M: int) -> List[CenteredLaurentPoly]:
    """P_r = a^(M-r) b^r with a = sigma(tau u), b = sigma(tau^-1 u)"""
    a = sigma_scaled(TAU)
    b = sigma_scaled(TAU ** -1)
    a_pows = [CenteredLaurentPoly.constant(1)]
    b_pows = [CenteredLaurentPoly.constant(1)]
    for _ in range(M):
        a_pows.append(a_pows[-1] * a)
        b_pows.append(b_pows[-1] * b)
    return [a_pows[M - r] * b_pows[r] for r in range(M + 1)]


def chi_via_field(M: int) -> CenteredLaurentPoly:
    """
    Coefficients of chi(z) = sum_r c_r z^(M-r) from the field-arithmetic route.

    Substituting z = sigma(tau u) / sigma(tau^-1 u) and clearing sigma(tau^-1 u)^M
    turns chi into sum_r c_r P_r(u), which must equal kappa * xi(u).  With c_0 = 1
    this is a square linear system over Q(tau) in (c_1, ..., c_M, kappa); the
    solved c_r must come out rational.

    Returns:
        chi as a Laurent polynomial in z with nonnegative exponents
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    xi = build_xi(M).poly
    products = _weight_products(M)
    exponents = sorted(set(xi.exponents()).union(*(p.exponents() for p in products)), reverse=True)

    matrix = []
    rhs = []
    for e in exponents:
        row = [products[r].coefficient(e) for r in range(1, M + 1)]
        row.append(-xi.coefficient(e))
        matrix.append(row)
        rhs.append(-products[0].coefficient(e))

    try:
        solution = solve(matrix, rhs)
    except ValueError as exc:
        raise CoefficientExtractionError(f"chi coefficients not determined for M={M}: {exc}") from exc
    if solution is None:
        raise CoefficientExtractionError(f"inconsistent chi system for M={M}")

    coeffs: Dict[int, Fraction] = {M: Fraction(1)}
    for r, value in enumerate(solution[:M], start=1):
        value = normalize_scalar(value)
        if isinstance(value, CycloQ6):
            raise CoefficientExtractionError(f"coefficient of z^{M - r} is not rational: {value}")
        coeffs[M - r] = value
    logger.debug("chi via field, M=%d, kappa=%s", M, solution[M])
    return CenteredLaurentPoly(coeffs)


def verify_chi(M: int, chi: CenteredLaurentPoly) -> CheckReport:
    """Check that a given chi(z) maps onto a scalar multiple of xi(u)"""
    xi = build_xi(M).poly
    products = _weight_products(M)
    image = CenteredLaurentPoly.zero()
    for r in range(M + 1):
        image = image + products[r] * chi.coefficient(M - r)
    failures: List[str] = []
    if image.is_zero():
        failures.append("chi maps to zero")
    else:
        kappa = image.coefficient(M) / xi.coefficient(M)
        if image != xi * kappa:
            failures.append("chi(z(u)) sigma(tau^-1 u)^M is not proportional to xi(u)")
    return CheckReport.from_failures("tq.chi_field", {"M": M}, failures)


# ---------- uniqueness ----------


def uniqueness_basis(M: int) -> List[List[Fraction]]:
    """
    Solutions of the constraint system, parametrized as phi = sigma^(2M+1) q.

    q ranges over Laurent polynomials with exponents -M..M, which builds in both the
    divisibility and the degree bound 6M+2.  Imposed linearly on the coefficients of
    phi: vanishing at exponents divisible by 3 (cyclic identity), parity
    phi(-u) = (-1)^(M+1) phi(u) and antisymmetry phi(1/u) = -phi(u).
    """
    s = sigma(1) ** (2 * M + 1)
    q_exponents = list(range(-M, M + 1))
    top = 3 * M + 1

    def phi_row(k: int) -> List[Fraction]:
        return [Fraction(s.coefficient(k - j)) for j in q_exponents]

    rows: List[List[Fraction]] = []
    for k in range(-top, top + 1):
        if k % 3 == 0 or (k - (M + 1)) % 2 != 0:
            rows.append(phi_row(k))
        if k >= 0:
            rows.append([x + y for x, y in zip(phi_row(k), phi_row(-k))])
    return nullspace(rows)


def uniqueness_dimension(M: int) -> int:
    return len(uniqueness_basis(M))


def check_uniqueness(M: int) -> CheckReport:
    """The constraint system has a one-dimensional solution space spanned by xi"""
    basis = uniqueness_basis(M)
    failures: List[str] = []
    if len(basis) != 1:
        failures.append(f"solution space has dimension {len(basis)}")
    else:
        q = CenteredLaurentPoly({j: v for j, v in zip(range(-M, M + 1), basis[0])})
        xi = build_xi(M).poly
        if q * (1 / q.leading_coefficient) != xi:
            failures.append("constraint solution is not proportional to xi")
    return CheckReport.from_failures(
        "tq.uniqueness", {"M": M}, failures, details={"dimension": len(basis)}
    )
