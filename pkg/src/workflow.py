"""
Verification workflow for one odd chain length N = 2M + 1

Runs the cross-checks in stages:
1. ASM numbers - refined rows, palindromes, brute-force counts
2. T-Q solution - phi identities, xi, the scalar T-Q equation, chi through Q(tau)
3. Symmetric functions - e_r recursion, the ASM relation, the chi ODE, the energy
4. Ground state - exact sector solve, operator symmetries, component sums
5. Bethe roots - numeric roots of chi, Bethe equations, transfer eigenvalue, eigenvector
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from rich.console import Console

from .algebra.exact_arith import format_rational
from .config import config
from .core import asm_numbers, bethe_numeric, spin_sector, symfun, tq_solution
from .core.base import CheckReport
from .errors import VerificationError
from .schemas import VerificationReport, VerifyResponse

logger = logging.getLogger(__name__)


@dataclass
class VerificationResult:
    """Complete result of a `verify N` run"""

    N: int
    reports: List[CheckReport]
    highlights: Dict[str, str]
    success: bool
    execution_time_ms: int
    errors: List[str] = field(default_factory=list)

    @property
    def M(self) -> int:
        return (self.N - 1) // 2

    def failed(self) -> List[CheckReport]:
        return [r for r in self.reports if not r.passed]

    def to_response(self, timings: bool = False) -> VerifyResponse:
        return VerifyResponse(
            N=self.N,
            M=self.M,
            passed=self.success,
            reports=[VerificationReport.from_check(r, timings) for r in self.reports],
            highlights=self.highlights,
            errors=self.errors,
            execution_time_ms=self.execution_time_ms if timings else None,
        )

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        return self.to_response(timings).model_dump(mode="json", exclude_none=True)


class VerificationWorkflow:
    """
    The full cross-check suite.

    Usage:
        workflow = VerificationWorkflow(skip_bethe=False)
        result = workflow.run(11)
        print(format_report_text(result))
    """

    def __init__(self, skip_bethe: bool = False, console: Optional[Console] = None):
        self.skip_bethe = skip_bethe
        self.console = console
        self._reports: List[CheckReport] = []
        self._errors: List[str] = []

    def _stage(self, title: str, verbose: bool) -> None:
        logger.info(title)
        if verbose and self.console is not None:
            self.console.print(f"\n[bold blue]{title}[/bold blue]")

    def _check(self, name: str, params: Dict[str, int], fn: Callable[[], Any], verbose: bool = False) -> Any:
        """Run one check; exceptions become failed reports, never passes"""
        start = time.perf_counter()
        try:
            outcome = fn()
        except (VerificationError, ArithmeticError, ValueError) as exc:
            outcome = CheckReport.from_failures(name, params, [f"{type(exc).__name__}: {exc}"])
            self._errors.append(f"{name}: {exc}")
        elapsed = int((time.perf_counter() - start) * 1000)
        reports = outcome if isinstance(outcome, list) else [outcome]
        for report in reports:
            report.elapsed_ms = report.elapsed_ms or elapsed
            self._reports.append(report)
            if verbose and self.console is not None:
                mark = "[green]pass[/green]" if report.passed else "[red]FAIL[/red]"
                self.console.print(f"   {mark} {report.name} {report.params}")
        return outcome

    def _build(self, name: str, params: Dict[str, int], fn: Callable[[], Any]) -> Any:
        """Construct an input for later checks; a failure is recorded and None returned"""
        start = time.perf_counter()
        try:
            return fn()
        except (VerificationError, ArithmeticError, ValueError) as exc:
            report = CheckReport.from_failures(name, params, [f"{type(exc).__name__}: {exc}"])
            report.elapsed_ms = int((time.perf_counter() - start) * 1000)
            self._reports.append(report)
            self._errors.append(f"{name}: {exc}")
            return None

    def run(self, N: int, verbose: bool = False) -> VerificationResult:
        """
        Execute every stage for the chain length N.

        Args:
            N: odd chain length >= 3
            verbose: print each stage and check to the console as it completes

        Raises:
            ValueError: N even or N < 3
        """
        if N < 3 or N % 2 == 0:
            raise ValueError(f"N must be odd and >= 3, got {N}")
        M = (N - 1) // 2
        solver = config.solver
        start_time = time.perf_counter()
        self._reports, self._errors = [], []
        highlights: Dict[str, str] = {}

        # ============================================
        # STAGE 1: ASM NUMBERS
        # ============================================
        self._stage("ASM numbers", verbose)
        self._check("asm.rows", {"M": M + 1}, lambda: _check_asm_rows(M + 1), verbose)

        # ============================================
        # STAGE 2: T-Q SOLUTION
        # ============================================
        self._stage("T-Q solution", verbose)
        phi = self._build("tq.build", {"M": M}, lambda: tq_solution.build_phi(M))
        if phi is not None:
            self._check("tq.cyclic", {"M": M}, lambda: tq_solution.check_cyclic(phi), verbose)
            self._check("tq.symmetries", {"M": M}, lambda: tq_solution.check_symmetries(phi), verbose)
            self._check("tq.phi_ode", {"M": M}, lambda: tq_solution.check_phi_ode(phi), verbose)
            xi = self._build("tq.build_xi", {"M": M}, lambda: tq_solution.build_xi(M))
            if xi is not None:
                self._check("tq.xi", {"M": M}, lambda: tq_solution.check_xi(xi, phi), verbose)
                self._check("tq.identity", {"M": M}, lambda: tq_solution.check_tq_identity(xi), verbose)
        if M <= solver.uniqueness_max_m:
            self._check("tq.uniqueness", {"M": M}, lambda: tq_solution.check_uniqueness(M), verbose)
        if M <= solver.field_chi_max_m:
            self._check("tq.chi_field", {"M": M}, lambda: _check_chi_routes(M), verbose)

        # ============================================
        # STAGE 3: SYMMETRIC FUNCTIONS
        # ============================================
        self._stage("Symmetric functions", verbose)
        self._check("symfun.invariants", {"M": M}, lambda: symfun.check_esym_invariants(symfun.elementary_sym(M)), verbose)
        self._check("symfun.asm_relation", {"M": M}, lambda: symfun.check_asm_relation(M), verbose)
        chi = self._build("symfun.chi", {"M": M}, lambda: symfun.chi_polynomial(M))
        if chi is not None:
            self._check("symfun.chi_ode", {"M": M}, lambda: symfun.check_chi_ode(chi), verbose)
            self._check("symfun.chi_invariants", {"M": M}, lambda: symfun.check_chi_invariants(chi), verbose)
        self._check("symfun.energy", {"M": M}, lambda: symfun.check_energy_consequence(M), verbose)

        # ============================================
        # STAGE 4: GROUND STATE
        # ============================================
        self._stage("Ground state", verbose)
        vector = self._build("spin.solve", {"N": N}, lambda: spin_sector.ground_candidate(N))
        if vector is not None:
            self._check("spin.components", {"N": N}, lambda: _check_components(vector), verbose)
            self._check("spin.operator_symmetries", {"N": N}, lambda: spin_sector.check_operator_symmetries(vector), verbose)
            self._check("spin.sums", {"N": N}, lambda: _check_sums(vector), verbose)
            if N <= solver.full_sector_max_n:
                self._check("spin.full_sector", {"N": N}, lambda: _check_full_sector(vector), verbose)
            highlights["max_component"] = format_rational(vector.max_component)
            for r, value in enumerate(spin_sector.increment_sums(vector)):
                highlights[f"increment_sum_{r}"] = format_rational(value)
        if N <= solver.commutation_max_n:
            self._check("spin.commutation", {"N": N}, lambda: spin_sector.check_commutation(N, M), verbose)

        # ============================================
        # STAGE 5: BETHE ROOTS
        # ============================================
        if not self.skip_bethe:
            self._stage("Bethe roots", verbose)
            roots = self._build("bethe.roots", {"M": M}, lambda: bethe_numeric.roots_of_chi(M))
            if roots is not None:
                self._check("bethe.checks", {"M": M}, lambda: bethe_numeric.bethe_checks(roots), verbose)
                if M <= solver.verify_oracle_max_m and vector is not None:
                    self._check(
                        "bethe.oracle",
                        {"N": N},
                        lambda: bethe_numeric.compare_to_exact(bethe_numeric.bethe_vector_oracle(roots), vector),
                        verbose,
                    )

        execution_time = int((time.perf_counter() - start_time) * 1000)
        success = all(r.passed for r in self._reports)
        if verbose and self.console is not None:
            status = "[green]all checks passed[/green]" if success else "[red]some checks failed[/red]"
            self.console.print(f"\n{status} in {execution_time}ms")

        return VerificationResult(
            N=N,
            reports=list(self._reports),
            highlights=highlights,
            success=success,
            execution_time_ms=execution_time,
            errors=list(self._errors),
        )


# ---------- composite checks ----------


def _check_asm_rows(order: int) -> CheckReport:
    failures: List[str] = []
    for m in range(1, order + 1):
        row = asm_numbers.asm_row(m)
        if not row.is_palindromic():
            failures.append(f"row {m} is not palindromic")
        if m > 1 and row.counts[0] != asm_numbers.asm_total(m - 1):
            failures.append(f"A({m},1) != A({m - 1})")
        if m <= 5 and row.counts != asm_numbers.brute_force_refined(m):
            failures.append(f"row {m} disagrees with direct enumeration")
    return CheckReport.from_failures("asm.rows", {"M": order}, failures)


def _check_chi_routes(M: int) -> CheckReport:
    """chi from Q(tau) elimination equals chi from the recursion"""
    via_field = tq_solution.chi_via_field(M)
    recursion = symfun.chi_polynomial(M)
    failures = [] if via_field == recursion.poly else ["field-arithmetic chi differs from the recursion"]
    verified = tq_solution.verify_chi(M, recursion.poly)
    failures.extend(verified.failures)
    return CheckReport.from_failures("tq.chi_field", {"M": M}, failures)


def _check_components(v: spin_sector.SectorVector) -> CheckReport:
    """Positive integers with the largest equal to A(M)"""
    failures: List[str] = []
    if not v.integral:
        failures.append("normalized components are not all integers")
    if not v.positive:
        failures.append("normalized components are not all positive")
    expected = asm_numbers.asm_total(v.M)
    if v.max_component != expected:
        failures.append(f"max component {format_rational(v.max_component)} != A({v.M}) = {expected}")
    return CheckReport.from_failures(
        "spin.components",
        {"N": v.N},
        failures,
        details={"orbits": len(v.orbits), "max_component": format_rational(v.max_component)},
    )


def _check_sums(v: spin_sector.SectorVector) -> CheckReport:
    """increment_sum(r) = A(M+1, r+1) and increment_sum(r) / max = e_r"""
    M = v.M
    esym = symfun.elementary_sym(M)
    failures: List[str] = []
    sums = spin_sector.increment_sums(v)
    for r, value in enumerate(sums):
        expected = asm_numbers.asm_refined(M + 1, r + 1)
        if value != expected:
            failures.append(f"increment sum r={r}: {format_rational(value)} != A({M + 1},{r + 1}) = {expected}")
        ratio = value / sums[0]
        if ratio != esym[r]:
            failures.append(f"sum ratio r={r}: {format_rational(ratio)} != e_{r} = {format_rational(esym[r])}")
    return CheckReport.from_failures(
        "spin.sums", {"N": v.N}, failures, details={"sums": [format_rational(s) for s in sums]}
    )


def _check_full_sector(v: spin_sector.SectorVector) -> CheckReport:
    """The unreduced solve gives the same vector"""
    full = spin_sector.ground_candidate(v.N, reduce_symmetry=False)
    failures = [] if full.values == v.values else ["full-sector and orbit-reduced solves differ"]
    return CheckReport.from_failures("spin.full_sector", {"N": v.N}, failures)


# ---------- text report ----------


def format_report_text(result: VerificationResult, timings: bool = False) -> str:
    """Format the workflow result as readable text"""
    lines = []
    lines.append("=" * 70)
    lines.append(f"VERIFICATION REPORT  N = {result.N}, M = {result.M}")
    lines.append("=" * 70)

    stage = None
    for report in result.reports:
        prefix = report.name.split(".")[0]
        if prefix != stage:
            stage = prefix
            lines.append(f"\n[{stage}]")
        status = "pass" if report.passed else "FAIL"
        timing = f"  ({report.elapsed_ms}ms)" if timings else ""
        lines.append(f"   {status:4}  {report.name:28} {report.mode:8}{timing}")
        for failure in report.failures[:5]:
            lines.append(f"         - {failure}")
        if report.residual is not None and report.mode == "numeric":
            lines.append(f"         residual {report.residual}")

    if result.highlights:
        lines.append("\n" + "-" * 70)
        for key, value in result.highlights.items():
            lines.append(f"   {key:20} {value}")

    if result.errors:
        lines.append("\n" + "-" * 70)
        lines.append("ERRORS:")
        for error in result.errors:
            lines.append(f"   - {error}")

    lines.append("\n" + "-" * 70)
    failed = len(result.failed())
    summary = "all checks passed" if result.success else f"{failed} of {len(result.reports)} checks failed"
    lines.append(f"SUMMARY: {summary}" + (f" in {result.execution_time_ms}ms" if timings else ""))
    lines.append("-" * 70)
    return "\n".join(lines)


def increment_sum_table(v: spin_sector.SectorVector) -> Dict[str, List[Fraction]]:
    """Increment and decrement sums next to A(M+1, r+1) and the e_r ratios"""
    M = v.M
    increments = spin_sector.increment_sums(v)
    return {
        "increment": increments,
        "decrement": [spin_sector.decrement_sum(v, r) for r in range(M + 1)],
        "asm_refined": [Fraction(asm_numbers.asm_refined(M + 1, r + 1)) for r in range(M + 1)],
        "ratios": [s / increments[0] for s in increments],
    }
