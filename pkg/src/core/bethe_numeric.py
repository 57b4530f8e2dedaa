"""
Bethe roots of the Delta = -1/2 ground state, recovered numerically from chi(z)

The roots of chi are found with mpmath's Durand-Kerner iteration, paired under
z -> 1/z and mapped to the spectral parameters u_k through
z = (tau^2 u^2 - 1) / (u^2 - tau^2).  The root set is then checked against the
Bethe equations, the energy -3N/4, the transfer eigenvalue sigma^N(u) and, for
small M, the explicit permutation-sum eigenvector.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from ..config import DELTA, config
from ..errors import PairingError, PoleProximityError, RootFindingError, SingularBetheError
from .base import CheckReport
from .spin_sector import Positions, SectorVector, enumerate_sector
from .symfun import ChiPolynomial, chi_polynomial, elementary_sym

logger = logging.getLogger(__name__)


def _mp(value) -> mpmath.mpf:
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def _tau() -> mpmath.mpc:
    return mpmath.expjpi(mpmath.mpf(1) / 3)


def _sigma(x):
    return x - 1 / x


def working_precision(M: int, precision: Optional[int] = None) -> int:
    """Requested bits, or the extended default for large M when left at double precision"""
    numeric = config.numeric
    if precision is not None:
        return precision
    if numeric.precision_bits == 53 and M > numeric.extended_precision_above_m:
        return numeric.extended_precision_bits
    return numeric.precision_bits


def output_digits(precision: int) -> int:
    return max(15, int(precision * math.log10(2)))


def format_complex(z, digits: int = 15) -> List[str]:
    """Fixed-digit decimal strings [re, im]"""
    z = mpmath.mpc(z)
    return [
        mpmath.nstr(z.real, digits, strip_zeros=False),
        mpmath.nstr(z.imag, digits, strip_zeros=False),
    ]


def f_weight(a, b, delta=DELTA):
    """f(a, b) = 1 - 2 Delta b + a b"""
    return 1 - 2 * _mp(delta) * b + a * b


@dataclass(frozen=True)
class BetheRootSet:
    """
    z_1 ... z_M ordered so that z_m z_(M-m+1) = 1, with u_m chosen so that
    u_(M-m+1) = -1/u_m.  Values are mpmath numbers valid at ``precision`` bits.
    """

    M: int
    roots: Tuple[mpmath.mpc, ...]
    u_values: Tuple[mpmath.mpc, ...]
    precision: int
    chi_residual: mpmath.mpf = field(default=mpmath.mpf(0), compare=False)
    pairing_residual: mpmath.mpf = field(default=mpmath.mpf(0), compare=False)

    @property
    def N(self) -> int:
        return 2 * self.M + 1

    def root_loci(self) -> List[Dict[str, str]]:
        """Modulus and argument of every root; recorded, not asserted"""
        digits = output_digits(self.precision)
        with mpmath.workprec(self.precision):
            return [
                {"modulus": mpmath.nstr(abs(z), digits, strip_zeros=False),
                 "arg": mpmath.nstr(mpmath.arg(z), digits, strip_zeros=False)}
                for z in self.roots
            ]


# ---------- roots and pairing ----------


def _relative_chi_residual(coeffs: Sequence[mpmath.mpf], z) -> mpmath.mpf:
    value = mpmath.polyval(coeffs, z)
    scale = sum(abs(c) * abs(z) ** k for k, c in enumerate(reversed(coeffs)))
    return abs(value) / max(scale, mpmath.mpf(1))


def _pair_roots(roots: List[mpmath.mpc], tolerance: float) -> Tuple[List[mpmath.mpc], mpmath.mpf]:
    """Greedy nearest |z w - 1| matching, laid out as leads, self-paired middle, partners reversed"""
    remaining = sorted(roots, key=lambda z: (-mpmath.arg(z), -abs(z)))
    pairs: List[Tuple[mpmath.mpc, mpmath.mpc]] = []
    middle: List[mpmath.mpc] = []
    worst = mpmath.mpf(0)
    while remaining:
        z = remaining.pop(0)
        candidates = [(abs(z * w - 1), i) for i, w in enumerate(remaining)]
        self_gap = abs(z * z - 1)
        best_gap, best = min(candidates, default=(None, None), key=lambda item: (item[0], item[1]))
        if best is None or self_gap <= best_gap:
            if self_gap > tolerance:
                raise PairingError(f"root {mpmath.nstr(z, 8)} has no reciprocal partner (gap {mpmath.nstr(self_gap, 3)})")
            worst = max(worst, self_gap)
            middle.append(z)
            continue
        if best_gap > tolerance:
            raise PairingError(f"root {mpmath.nstr(z, 8)} has no reciprocal partner (gap {mpmath.nstr(best_gap, 3)})")
        w = remaining.pop(best)
        worst = max(worst, best_gap)
        if abs(abs(z) - abs(w)) > tolerance:
            z_leads = abs(z) > abs(w)
        else:
            z_leads = z.imag >= w.imag
        pairs.append((z, w) if z_leads else (w, z))
    if len(middle) > 1:
        raise PairingError(f"{len(middle)} self-reciprocal roots cannot be placed symmetrically")
    pairs.sort(key=lambda pair: -mpmath.arg(pair[0]))
    ordered = [lead for lead, _ in pairs] + middle + [partner for _, partner in reversed(pairs)]
    return ordered, worst


def _u_from_z(z) -> mpmath.mpc:
    tau2 = _tau() ** 2
    u = mpmath.sqrt((z * tau2 - 1) / (z - tau2))
    if u.imag < 0 or (u.imag == 0 and u.real < 0):
        u = -u
    return u


def z_from_u(u) -> mpmath.mpc:
    tau2 = _tau() ** 2
    return (tau2 * u * u - 1) / (u * u - tau2)


def roots_of_chi(M: int, precision: Optional[int] = None, chi: Optional[ChiPolynomial] = None) -> BetheRootSet:
    """
    Numeric roots of chi(z) with reciprocal pairing and u-parameters.

    Raises:
        ValueError: M < 1
        RootFindingError: the iteration does not converge or a root misses chi
        PairingError: some root has no partner 1/z within tolerance
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    numeric = config.numeric
    bits = working_precision(M, precision)
    chi = chi or chi_polynomial(M)

    with mpmath.workprec(bits):
        coeffs = [_mp(c) for c in chi.coefficients_descending()]
        if M == 1:
            roots = [mpmath.mpc(-coeffs[1] / coeffs[0])]
        else:
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=numeric.max_root_steps, extraprec=bits)
            except mpmath.libmp.NoConvergence as exc:
                raise RootFindingError(f"chi roots for M={M} did not converge at {bits} bits") from exc
        roots = [mpmath.mpc(z) for z in roots]

        residual = max(_relative_chi_residual(coeffs, z) for z in roots)
        tolerance = max(numeric.root_tolerance, mpmath.mpf(2) ** (-bits) * 1e4)
        if residual > tolerance:
            raise RootFindingError(f"chi residual {mpmath.nstr(residual, 3)} exceeds {tolerance}")

        ordered, pairing_gap = _pair_roots(roots, numeric.pairing_tolerance)
        u_values: List[mpmath.mpc] = [mpmath.mpc(0)] * M
        for m in range(M):
            partner = M - 1 - m
            if m < partner:
                u_values[m] = _u_from_z(ordered[m])
                u_values[partner] = -1 / u_values[m]
            elif m == partner:
                u_values[m] = _u_from_z(ordered[m])

    logger.debug("M=%d: %d roots at %d bits, chi residual %s", M, M, bits, mpmath.nstr(residual, 3))
    return BetheRootSet(
        M=M,
        roots=tuple(ordered),
        u_values=tuple(u_values),
        precision=bits,
        chi_residual=residual,
        pairing_residual=pairing_gap,
    )


def check_root_set(rs: BetheRootSet) -> CheckReport:
    """Reciprocity, product 1, sum (M+1)/2, u-map round trip and numeric e_r against the exact ones"""
    numeric = config.numeric
    M = rs.M
    failures: List[str] = []
    with mpmath.workprec(rs.precision):
        for m in range(M):
            gap = abs(rs.roots[m] * rs.roots[M - 1 - m] - 1)
            if gap > numeric.pairing_tolerance:
                failures.append(f"z_{m + 1} z_{M - m} differs from 1 by {mpmath.nstr(gap, 3)}")
            back = abs(z_from_u(rs.u_values[m]) - rs.roots[m])
            if back > numeric.pairing_tolerance:
                failures.append(f"u_{m + 1} maps back with error {mpmath.nstr(back, 3)}")
            u_gap = abs(rs.u_values[m] * rs.u_values[M - 1 - m] + 1)
            if m != M - 1 - m and u_gap > numeric.pairing_tolerance:
                failures.append(f"u_{m + 1} u_{M - m} differs from -1 by {mpmath.nstr(u_gap, 3)}")

        exact = elementary_sym(M)
        for r, value in enumerate(numeric_esym(rs)):
            gap = abs(value - _mp(exact[r])) / max(abs(_mp(exact[r])), 1)
            if gap > numeric.pairing_tolerance:
                failures.append(f"numeric e_{r} off by {mpmath.nstr(gap, 3)}")
    return CheckReport.from_failures("bethe.roots", {"M": M}, failures, mode="numeric")


def numeric_esym(rs: BetheRootSet) -> List[mpmath.mpc]:
    """e_0 ... e_M of the numeric roots by expanding prod (1 + z_k t)"""
    with mpmath.workprec(rs.precision):
        values = [mpmath.mpc(1)] + [mpmath.mpc(0)] * rs.M
        for z in rs.roots:
            for r in range(rs.M, 0, -1):
                values[r] += z * values[r - 1]
        return values


# ---------- Bethe equations and energy ----------


def bethe_residual(rs: BetheRootSet, delta: Fraction = DELTA) -> mpmath.mpf:
    """
    max_k |z_k^N - (-1)^(K-1) prod_l f(z_l, z_k) / f(z_k, z_l)|

    Raises:
        SingularBetheError: some f(z_k, z_l) vanishes
    """
    N, K = rs.N, rs.M
    with mpmath.workprec(rs.precision):
        worst = mpmath.mpf(0)
        for k, zk in enumerate(rs.roots):
            rhs = mpmath.mpc((-1) ** (K - 1))
            for l, zl in enumerate(rs.roots):
                den = f_weight(zk, zl, delta)
                if abs(den) < config.numeric.singular_tolerance:
                    raise SingularBetheError(f"f(z_{k + 1}, z_{l + 1}) vanishes")
                rhs *= f_weight(zl, zk, delta) / den
            worst = max(worst, abs(zk ** N - rhs))
        return worst


def energy(rs: BetheRootSet, delta: Fraction = DELTA, N: Optional[int] = None) -> mpmath.mpc:
    """E = -Delta N / 2 + sum_k (2 Delta - z_k - 1/z_k)"""
    N = rs.N if N is None else N
    with mpmath.workprec(rs.precision):
        d = _mp(delta)
        return -d * N / 2 + sum((2 * d - z - 1 / z for z in rs.roots), mpmath.mpc(0))


# ---------- transfer eigenvalue ----------


@dataclass
class TransferCheck:
    max_residual: mpmath.mpf
    max_relative_residual: mpmath.mpf
    used: int
    rejected: List[mpmath.mpc]


def sample_points(count: Optional[int] = None, radius: Optional[float] = None, seed: Optional[int] = None) -> List[mpmath.mpc]:
    """Seeded uniform angles on |u| = radius"""
    numeric = config.numeric
    rng = np.random.default_rng(numeric.seed if seed is None else seed)
    angles = rng.uniform(0.0, 2 * np.pi, size=numeric.transfer_samples if count is None else count)
    r = mpmath.mpf(numeric.sample_radius if radius is None else radius)
    return [r * mpmath.expj(mpmath.mpf(float(theta))) for theta in angles]


def transfer_eigenvalue(rs: BetheRootSet, u) -> mpmath.mpc:
    """a^N prod U(u, z_k) + b^N prod V(u, z_k) with the weights a, b, c of the spectral parameter u"""
    with mpmath.workprec(rs.precision):
        tau = _tau()
        a, b, c = _sigma(tau * u), _sigma(u / tau), _sigma(tau * tau)
        left, right = a ** rs.N, b ** rs.N
        for z in rs.roots:
            left *= (a * b + (c * c - b * b) * z) / (a * a - a * b * z)
            right *= (a * a - c * c - a * b * z) / (a * b - b * b * z)
        return left + right


def transfer_eigenvalue_check(rs: BetheRootSet, samples: Optional[Sequence] = None) -> TransferCheck:
    """
    Compare the transfer eigenvalue with sigma^N(u). ``max_residual`` is the absolute
    gap max |lambda(u) - sigma^N(u)|; ``max_relative_residual`` divides each gap by
    max(1, |sigma^N(u)|) and is the one held to ``transfer_tolerance``.

    Sample points within ``pole_tolerance`` of a pole of U or V are rejected.

    Raises:
        PoleProximityError: every sample was rejected
    """
    numeric = config.numeric
    points = sample_points() if samples is None else list(samples)
    worst = worst_relative = mpmath.mpf(0)
    used = 0
    rejected: List[mpmath.mpc] = []
    with mpmath.workprec(rs.precision):
        for u in points:
            u = mpmath.mpc(u)
            if u == 0 or any(abs(_sigma(u / uk)) < numeric.pole_tolerance for uk in rs.u_values):
                rejected.append(u)
                continue
            expected = _sigma(u) ** rs.N
            gap = abs(transfer_eigenvalue(rs, u) - expected)
            worst = max(worst, gap)
            worst_relative = max(worst_relative, gap / max(abs(expected), 1))
            used += 1
    if rejected:
        logger.info("M=%d: rejected %d sample(s) near poles", rs.M, len(rejected))
    if not used:
        raise PoleProximityError(f"all {len(points)} sample points lie near a pole of U or V")
    return TransferCheck(max_residual=worst, max_relative_residual=worst_relative, used=used, rejected=rejected)


# ---------- permutation-sum eigenvector ----------


def _sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _amplitude(rs: BetheRootSet, perm: Sequence[int], delta: Fraction) -> mpmath.mpc:
    value = mpmath.mpc(_sign(perm))
    for k1, k2 in itertools.combinations(range(len(perm)), 2):
        value *= f_weight(rs.roots[perm[k2]], rs.roots[perm[k1]], delta)
    return value


def bethe_amplitudes(
    rs: BetheRootSet, positions: Sequence[int], delta: Fraction = DELTA
) -> List[Tuple[Tuple[int, ...], mpmath.mpc, mpmath.mpc]]:
    """(s, A_s, B_s) for every permutation s, with B_s = A_s prod_k z_(s(k))^(n_k); s is 1-based"""
    if len(positions) != rs.M:
        raise ValueError(f"expected {rs.M} positions, got {len(positions)}")
    out = []
    with mpmath.workprec(rs.precision):
        for perm in itertools.permutations(range(rs.M)):
            a_s = _amplitude(rs, perm, delta)
            b_s = a_s
            for k, n in enumerate(positions):
                b_s *= rs.roots[perm[k]] ** n
            out.append((tuple(p + 1 for p in perm), a_s, b_s))
    return out


def bethe_vector_oracle(rs: BetheRootSet, N: Optional[int] = None, delta: Fraction = DELTA) -> Dict[Positions, mpmath.mpc]:
    """
    Psi^{n_1..n_K} = sum_s A_s z_(s(1))^(n_1) ... z_(s(K))^(n_K) on the K = M sector,
    scaled so the smallest-magnitude component is 1.

    Raises:
        ValueError: M above the configured oracle limit
        SingularBetheError: the vector is numerically zero
    """
    limit = config.solver.oracle_max_m
    if rs.M > limit:
        raise ValueError(f"permutation sum is limited to M <= {limit}, got {rs.M}")
    N = rs.N if N is None else N
    with mpmath.workprec(rs.precision):
        perms = list(itertools.permutations(range(rs.M)))
        amplitudes = [_amplitude(rs, perm, delta) for perm in perms]
        powers = [[z ** n for n in range(N + 1)] for z in rs.roots]
        vector: Dict[Positions, mpmath.mpc] = {}
        for state in enumerate_sector(N, rs.M):
            total = mpmath.mpc(0)
            for perm, a_s in zip(perms, amplitudes):
                term = a_s
                for k, n in enumerate(state.positions):
                    term *= powers[perm[k]][n]
                total += term
            vector[state.positions] = total

        largest = max(abs(v) for v in vector.values())
        if largest < config.numeric.singular_tolerance:
            raise SingularBetheError("Bethe vector vanishes; the roots are not a proper solution")
        pivot = min(vector.values(), key=abs)
        if abs(pivot) < config.numeric.singular_tolerance * largest:
            raise SingularBetheError("Bethe vector has a vanishing component")
        return {state: value / pivot for state, value in vector.items()}


def compare_to_exact(oracle: Dict[Positions, mpmath.mpc], exact: SectorVector) -> CheckReport:
    """Componentwise relative agreement with the exact ground candidate"""
    tolerance = config.numeric.oracle_tolerance
    failures: List[str] = []
    worst = mpmath.mpf(0)
    for state, value in sorted(oracle.items()):
        target = exact.component(state)
        gap = abs(value - _mp(target)) / abs(_mp(target))
        worst = max(worst, gap)
        if gap > tolerance:
            failures.append(f"Psi^{state}: {mpmath.nstr(value, 10)} vs {target}")
    if len(failures) > 10:
        failures = failures[:10] + [f"... {len(failures) - 10} more"]
    return CheckReport.from_failures(
        "bethe.oracle",
        {"N": exact.N},
        failures,
        mode="numeric",
        residual=mpmath.nstr(worst, 6),
    )


# ---------- bundled numeric checks ----------


def bethe_checks(rs: BetheRootSet, samples: Optional[Sequence] = None) -> List[CheckReport]:
    """Bethe equations, energy -3N/4 and transfer eigenvalue as numeric reports"""
    numeric = config.numeric
    reports = [check_root_set(rs)]
    params = {"M": rs.M, "N": rs.N}

    try:
        residual = bethe_residual(rs)
        failures = [] if residual < numeric.bethe_residual_tolerance else [f"residual {mpmath.nstr(residual, 3)}"]
        reports.append(CheckReport.from_failures(
            "bethe.equations", params, failures, mode="numeric", residual=mpmath.nstr(residual, 6)
        ))
    except SingularBetheError as exc:
        reports.append(CheckReport.from_failures("bethe.equations", params, [str(exc)], mode="numeric"))

    e = energy(rs)
    gap = abs(e - mpmath.mpf(-3 * rs.N) / 4)
    failures = [] if gap < numeric.energy_tolerance else [f"E = {mpmath.nstr(e, 12)} != {-3 * rs.N}/4"]
    reports.append(CheckReport.from_failures(
        "bethe.energy", params, failures, mode="numeric",
        residual=mpmath.nstr(gap, 6), details={"energy": format_complex(e, output_digits(rs.precision))},
    ))

    try:
        transfer = transfer_eigenvalue_check(rs, samples)
        failures = [] if transfer.max_relative_residual < numeric.transfer_tolerance else [
            f"relative transfer residual {mpmath.nstr(transfer.max_relative_residual, 3)}"
        ]
        reports.append(CheckReport.from_failures(
            "bethe.transfer", params, failures, mode="numeric",
            residual=mpmath.nstr(transfer.max_residual, 6),
            details={
                "relative_residual": mpmath.nstr(transfer.max_relative_residual, 6),
                "samples": transfer.used,
                "rejected": len(transfer.rejected),
            },
        ))
    except PoleProximityError as exc:
        reports.append(CheckReport.from_failures("bethe.transfer", params, [str(exc)], mode="numeric"))
    return reports
