#!/usr/bin/env python3
"""
XXZ / ASM verifier CLI

Exact reconstruction of the Delta = -1/2 XXZ ground state for odd N and its
relation to refined alternating-sign-matrix numbers.

Usage:
    python main.py asm-table 7                 # Refined ASM numbers A(M, r)
    python main.py phi 3                       # T-Q polynomial phi(u) and xi(u)
    python main.py chi 5 --field               # chi(z), also through Q(tau)
    python main.py esym 5                      # Elementary symmetric polynomials e_r
    python main.py groundstate 11 --table      # Exact ground-state components
    python main.py sums 11                     # Increment sums of components
    python main.py bethe-roots 5               # Numeric Bethe roots and checks
    python main.py oracle 11                   # Bethe-vector comparison
    python main.py verify 11                   # Full cross-check suite
"""

import logging
import os
import sys
from contextlib import contextmanager
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Optional

import click
import mpmath
import typer
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src import config as config_module
from src.algebra.exact_arith import format_rational
from src.config import config, ground_energy
from src.core import asm_numbers, bethe_numeric, spin_sector, symfun, tq_solution
from src.core.base import CheckReport
from src.schemas import (
    AmplitudeModel,
    AsmRowModel,
    AsmTableResponse,
    BetheRootsResponse,
    ChiResponse,
    ComponentModel,
    EsymResponse,
    GroundStateResponse,
    LaurentResponse,
    OracleResponse,
    SumsResponse,
    VerificationReport,
)
from src.workflow import VerificationWorkflow, format_report_text, increment_sum_table

EXIT_UNEXPECTED = 1
EXIT_CHECK_FAILED = 3

app = typer.Typer(
    name="xxz-asm",
    help="Verify the Delta = -1/2 XXZ ground state against refined alternating-sign-matrix numbers.",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)


# ---------- shared plumbing ----------


@app.callback()
def main(
    env_file: Optional[Path] = typer.Option(None, "--env-file", help="Read settings from this dotenv file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Configure settings and logging before any command runs"""
    if env_file is not None:
        if not env_file.exists():
            raise typer.BadParameter(f"{env_file} does not exist", param_hint="--env-file")
        config_module.reload_config(str(env_file))
    level = logging.DEBUG if verbose else getattr(logging, config.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False, rich_tracebacks=True)],
        force=True,
    )


def _odd_chain(value: int) -> int:
    if value < 3 or value % 2 == 0:
        raise typer.BadParameter(f"N must be odd and >= 3, got {value}")
    return value


def _positive(value: int) -> int:
    if value < 1:
        raise typer.BadParameter(f"must be >= 1, got {value}")
    return value


@contextmanager
def _guarded() -> Iterator[None]:
    """Unexpected exceptions end the command with exit code 1 and a red message"""
    try:
        yield
    except (typer.Exit, typer.Abort, click.ClickException):
        raise
    except Exception as exc:
        err_console.print(f"[red]Error: {type(exc).__name__}: {exc}[/red]")
        raise typer.Exit(EXIT_UNEXPECTED)


def _emit(model: BaseModel, command: str, as_json: bool, output: Optional[Path], save: bool) -> None:
    """Print JSON when asked, and write it to --output or outputs/ when asked"""
    text = model.model_dump_json(indent=2, exclude_none=True)
    if as_json:
        typer.echo(text)
    if output is not None:
        output.write_text(text + "\n")
        err_console.print(f"[green]Saved results to {output}[/green]")
    if save:
        os.makedirs(config.output_dir, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        filename = Path(config.output_dir) / f"{timestamp}_{command}.json"
        filename.write_text(text + "\n")
        err_console.print(f"[green]Auto-saved results to {filename}[/green]")


def _reports(checks: List[CheckReport], timings: bool) -> List[VerificationReport]:
    return [VerificationReport.from_check(c, timings) for c in checks]


def _print_checks(checks: List[CheckReport]) -> None:
    for check in checks:
        mark = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        console.print(f"   {mark} {check.name}")
        for failure in check.failures[:5]:
            console.print(f"        [red]- {failure}[/red]")


def _finish(checks: List[CheckReport]) -> None:
    if any(not c.passed for c in checks):
        raise typer.Exit(EXIT_CHECK_FAILED)


def _complex(z, precision: int) -> List[str]:
    return bethe_numeric.format_complex(z, bethe_numeric.output_digits(precision))


JsonOption = typer.Option(False, "--json", help="Emit JSON on stdout")
OutputOption = typer.Option(None, "--output", "-o", help="Write JSON to this file")
SaveOption = typer.Option(False, "--save", "-s", help="Auto-save JSON to the outputs/ directory")
TimingsOption = typer.Option(False, "--timings", help="Include wall time in reports")


# ---------- commands ----------


@app.command("asm-table")
def asm_table(
    max_order: int = typer.Argument(7, callback=_positive, help="Largest order M"),
    brute_force: bool = typer.Option(False, "--brute-force", help="Also count matrices directly (M <= 6)"),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
):
    """Refined ASM numbers A(M, r) as the centered triangle"""
    with _guarded():
        rows = [asm_numbers.asm_row(m) for m in range(1, max_order + 1)]
        enumerated = {}
        if brute_force:
            for m in range(1, min(max_order, asm_numbers.BRUTE_FORCE_MAX_ORDER) + 1):
                enumerated[str(m)] = [str(c) for c in asm_numbers.brute_force_refined(m)]
        response = AsmTableResponse(
            max_order=max_order,
            rows=[AsmRowModel(M=r.order, counts=[str(c) for c in r.counts], total=str(r.total)) for r in rows],
            brute_force=enumerated,
        )
        if not as_json:
            console.print(asm_numbers.asm_table(max_order), highlight=False)
            mismatched = [m for m, counts in enumerated.items() if counts != response.rows[int(m) - 1].counts]
            if enumerated:
                status = "[red]disagrees[/red] at " + ", ".join(mismatched) if mismatched else "[green]agrees[/green]"
                console.print(f"\nDirect enumeration {status}")
        _emit(response, "asm-table", as_json, output, save)
        if any(counts != response.rows[int(m) - 1].counts for m, counts in enumerated.items()):
            raise typer.Exit(EXIT_CHECK_FAILED)


@app.command()
def phi(
    m: int = typer.Argument(..., metavar="M", callback=_positive, help="N = 2M + 1"),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
):
    """The T-Q polynomial phi(u), its quotient xi(u), and their exact identities"""
    with _guarded():
        p = tq_solution.build_phi(m)
        xi = tq_solution.build_xi(m)
        checks = [
            tq_solution.check_cyclic(p),
            tq_solution.check_symmetries(p),
            tq_solution.check_phi_ode(p),
            tq_solution.check_xi(xi, p),
            tq_solution.check_tq_identity(xi),
        ]
        response = LaurentResponse(
            M=m,
            N=p.n_sites,
            normalization=format_rational(p.normalization),
            degree=p.poly.degree,
            max_abs_exponent=p.poly.max_abs_exponent,
            phi=p.poly.to_json(),
            xi=xi.poly.to_json(),
            checks=_reports(checks, timings),
        )
        if not as_json:
            console.print(Panel(p.poly.to_text(), title=f"phi(u), M={m}", border_style="blue"))
            console.print(Panel(xi.poly.to_text(), title="xi(u) = phi(u) / sigma(u)^(2M+1)", border_style="blue"))
            _print_checks(checks)
        _emit(response, "phi", as_json, output, save)
        _finish(checks)


@app.command()
def chi(
    m: int = typer.Argument(..., metavar="M", callback=_positive),
    field: bool = typer.Option(False, "--field", help="Also derive chi through Q(tau) linear algebra"),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
):
    """chi(z) = prod (z - z_k) with its ODE and reciprocity checks"""
    with _guarded():
        poly = symfun.chi_polynomial(m)
        checks = [symfun.check_chi_ode(poly), symfun.check_chi_invariants(poly)]
        via_field = None
        if field:
            field_poly = tq_solution.chi_via_field(m)
            via_field = [format_rational(field_poly.coefficient(k)) for k in range(m, -1, -1)]
            failures = [] if field_poly == poly.poly else ["field-arithmetic chi differs from the recursion"]
            checks.append(CheckReport.from_failures("tq.chi_field", {"M": m}, failures))
        response = ChiResponse(
            M=m,
            text=poly.to_text(),
            coefficients=[format_rational(c) for c in poly.coefficients_descending()],
            via_field=via_field,
            checks=_reports(checks, timings),
        )
        if not as_json:
            console.print(f"chi(z) = {poly.to_text()}", highlight=False)
            _print_checks(checks)
        _emit(response, "chi", as_json, output, save)
        _finish(checks)


@app.command()
def esym(
    m: int = typer.Argument(..., metavar="M", callback=_positive),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
):
    """Elementary symmetric polynomials e_r of the Bethe roots next to A(M+1, r+1) / A(M)"""
    with _guarded():
        values = symfun.elementary_sym(m)
        total = asm_numbers.asm_total(m)
        ratios = [format_rational(asm_numbers.asm_refined(m + 1, r + 1) * Fraction(1, total)) for r in range(m + 1)]
        checks = [symfun.check_esym_invariants(values), symfun.check_asm_relation(m), symfun.check_energy_consequence(m)]
        response = EsymResponse(M=m, values=values.to_strings(), asm_ratios=ratios, checks=_reports(checks, timings))
        if not as_json:
            table = Table(show_header=True, header_style="bold magenta")
            table.add_column("r", style="cyan")
            table.add_column("e_r", style="green")
            table.add_column("A(M+1,r+1)/A(M)", style="green")
            for r, (value, ratio) in enumerate(zip(values.to_strings(), ratios)):
                table.add_row(str(r), value, ratio)
            console.print(table)
            _print_checks(checks)
        _emit(response, "esym", as_json, output, save)
        _finish(checks)


@app.command()
def groundstate(
    n: int = typer.Argument(..., metavar="N", callback=_odd_chain, help="Odd chain length"),
    table_mode: bool = typer.Option(False, "--table", help="List components in the classical label order"),
    full: bool = typer.Option(False, "--full", help="Solve the unreduced sector instead of orbit unknowns"),
    companion: bool = typer.Option(False, "--companion", help="Also check the spin-flipped companion"),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
):
    """Exact eigenvector of H with eigenvalue -3N/4, one component per symmetry orbit"""
    with _guarded():
        vector = spin_sector.ground_candidate(n, reduce_symmetry=not full)
        checks = [spin_sector.check_operator_symmetries(vector)] if companion else []
        response = GroundStateResponse(
            N=n,
            K=vector.K,
            eigenvalue=format_rational(ground_energy(n)),
            orbit_count=len(vector.orbits),
            max_component=format_rational(vector.max_component),
            integral=vector.integral,
            positive=vector.positive,
            components=[
                ComponentModel(
                    representative=list(orbit.representative),
                    label=list(spin_sector.classical_label(orbit)),
                    size=orbit.size,
                    value=format_rational(value),
                )
                for orbit, value in zip(vector.orbits, vector.values)
            ],
            companion_sector=n - vector.K if companion else None,
            checks=_reports(checks, timings),
        )
        if table_mode and not as_json:
            console.print(spin_sector.format_table(vector), highlight=False)
        elif not as_json:
            table = Table(show_header=True, header_style="bold magenta", title=f"N={n}, K={vector.K}")
            table.add_column("representative", style="cyan")
            table.add_column("orbit size")
            table.add_column("component", style="green")
            for rep, size, value in spin_sector.iter_components(vector):
                table.add_row(",".join(str(p) for p in rep), str(size), format_rational(value))
            console.print(table)
            console.print(f"max component {format_rational(vector.max_component)}")
            _print_checks(checks)
        _emit(response, "groundstate", as_json, output, save)
        if not (vector.integral and vector.positive):
            raise typer.Exit(EXIT_CHECK_FAILED)
        _finish(checks)


@app.command()
def sums(
    n: int = typer.Argument(..., metavar="N", callback=_odd_chain),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
):
    """Increment and decrement sums of components, r = 0..M"""
    with _guarded():
        vector = spin_sector.ground_candidate(n)
        columns = increment_sum_table(vector)
        response = SumsResponse(
            N=n,
            M=vector.M,
            **{key: [format_rational(v) for v in values] for key, values in columns.items()},
        )
        if not as_json:
            table = Table(show_header=True, header_style="bold magenta")
            for name in ("r", "increment", "decrement", "A(M+1,r+1)", "ratio"):
                table.add_column(name)
            for r in range(vector.M + 1):
                table.add_row(
                    str(r),
                    response.increment[r],
                    response.decrement[r],
                    response.asm_refined[r],
                    response.ratios[r],
                )
            console.print(table)
        _emit(response, "sums", as_json, output, save)
        if response.increment != response.asm_refined:
            raise typer.Exit(EXIT_CHECK_FAILED)


@app.command("bethe-roots")
def bethe_roots(
    m: int = typer.Argument(..., metavar="M", callback=_positive),
    precision: Optional[int] = typer.Option(None, "--precision", "-p", help="Working precision in bits"),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
):
    """Numeric Bethe roots from chi(z), with residuals and the energy"""
    with _guarded():
        roots = bethe_numeric.roots_of_chi(m, precision)
        checks = bethe_numeric.bethe_checks(roots)
        by_name = {c.name: c for c in checks}
        bits = roots.precision
        response = BetheRootsResponse(
            M=m,
            N=roots.N,
            precision=bits,
            roots=[_complex(z, bits) for z in roots.roots],
            u_values=[_complex(u, bits) for u in roots.u_values],
            root_loci=roots.root_loci(),
            bethe_residual=by_name["bethe.equations"].residual,
            energy=_complex(bethe_numeric.energy(roots), bits),
            transfer_residual=by_name["bethe.transfer"].residual,
            transfer_relative_residual=by_name["bethe.transfer"].details.get("relative_residual"),
            checks=_reports(checks, timings),
        )
        if not as_json:
            table = Table(show_header=True, header_style="bold magenta", title=f"M={m}, {bits} bits")
            table.add_column("k", style="cyan")
            table.add_column("z_k", style="green")
            table.add_column("u_k", style="green")
            for k, (z, u) in enumerate(zip(response.roots, response.u_values), start=1):
                table.add_row(str(k), f"{z[0]} {z[1]}i", f"{u[0]} {u[1]}i")
            console.print(table)
            console.print(f"E = {response.energy[0]} (expected {format_rational(ground_energy(roots.N))})")
            _print_checks(checks)
        _emit(response, "bethe-roots", as_json, output, save)
        _finish(checks)


@app.command()
def oracle(
    n: int = typer.Argument(..., metavar="N", callback=_odd_chain),
    amplitudes: Optional[str] = typer.Option(
        None, "--amplitudes", help="Comma-separated positions; print A_s and B_s for that state"
    ),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
):
    """Permutation-sum Bethe eigenvector compared with the exact ground state"""
    m = (n - 1) // 2
    if m > config.solver.oracle_max_m:
        raise typer.BadParameter(f"N must be <= {2 * config.solver.oracle_max_m + 1} for the permutation sum")
    positions = None
    if amplitudes:
        try:
            positions = [int(p) for p in amplitudes.split(",")]
        except ValueError:
            raise typer.BadParameter("positions must be comma-separated integers", param_hint="--amplitudes")
        if len(positions) != m:
            raise typer.BadParameter(f"expected {m} positions, got {len(positions)}", param_hint="--amplitudes")
        if len(set(positions)) != m or not all(1 <= p <= n for p in positions):
            raise typer.BadParameter(f"positions must be distinct and within 1..{n}", param_hint="--amplitudes")
    with _guarded():
        roots = bethe_numeric.roots_of_chi(m)
        vector = bethe_numeric.bethe_vector_oracle(roots)
        exact = spin_sector.ground_candidate(n)
        checks = [bethe_numeric.compare_to_exact(vector, exact)]
        bits = roots.precision
        terms = None
        if positions is not None:
            terms = [
                AmplitudeModel(permutation=list(s), A=_complex(a, bits), B=_complex(b, bits))
                for s, a, b in bethe_numeric.bethe_amplitudes(roots, positions)
            ]
        response = OracleResponse(
            N=n,
            M=m,
            precision=bits,
            max_relative_error=checks[0].residual,
            components=[(list(o.representative), _complex(vector[o.representative], bits)) for o in exact.orbits],
            amplitudes=terms,
            checks=_reports(checks, timings),
        )
        if not as_json:
            table = Table(show_header=True, header_style="bold magenta", title=f"N={n}")
            table.add_column("representative", style="cyan")
            table.add_column("Bethe vector", style="green")
            table.add_column("exact", style="green")
            for orbit, value in zip(exact.orbits, exact.values):
                z = vector[orbit.representative]
                table.add_row(",".join(map(str, orbit.representative)), mpmath.nstr(z.real, 12), format_rational(value))
            console.print(table)
            for term in terms or []:
                console.print(f"   s={term.permutation}  A_s={term.A}  B_s={term.B}")
            _print_checks(checks)
        _emit(response, "oracle", as_json, output, save)
        _finish(checks)


@app.command()
def verify(
    n: int = typer.Argument(..., metavar="N", callback=_odd_chain),
    skip_bethe: bool = typer.Option(False, "--skip-bethe", help="Skip the numeric Bethe stage"),
    as_json: bool = JsonOption,
    output: Optional[Path] = OutputOption,
    save: bool = SaveOption,
    timings: bool = TimingsOption,
    progress: bool = typer.Option(False, "--progress", help="Print each stage as it runs"),
):
    """Run the full cross-check suite for one odd N"""
    with _guarded():
        if not as_json:
            console.print(Panel(f"[bold]Verifying N = {n}[/bold]", title="XXZ / ASM", border_style="blue"))
        workflow = VerificationWorkflow(skip_bethe=skip_bethe, console=console)
        result = workflow.run(n, verbose=progress and not as_json)
        response = result.to_response(timings)
        if not as_json:
            console.print(format_report_text(result, timings), highlight=False)
        _emit(response, "verify", as_json, output, save)
        if not result.success:
            raise typer.Exit(EXIT_CHECK_FAILED)


if __name__ == "__main__":
    app()
