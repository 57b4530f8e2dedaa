"""
JSON response schemas for the verifier CLI

Computed values are strings: exact rationals as "p/q" (or "p"), complex numbers
as ["re", "im"] fixed-digit decimal pairs.  Structural integers (M, N, exponents,
positions, orbit sizes) stay integers.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from .core.base import CheckReport

ComplexPair = Tuple[str, str]
Term = Tuple[int, str]


class VerificationReport(BaseModel):
    """Outcome of one check"""

    name: str
    params: Dict[str, int]
    status: Literal["pass", "fail"]
    mode: Literal["exact", "numeric"]
    failures: List[str] = Field(default_factory=list)
    residual: Optional[str] = Field(None, description="Residual or counterexample payload")
    details: Dict[str, Any] = Field(default_factory=dict)
    wall_time_ms: Optional[int] = Field(None, description="Only present with --timings")

    @classmethod
    def from_check(cls, report: CheckReport, timings: bool = False) -> "VerificationReport":
        return cls(
            name=report.name,
            params=report.params,
            status="pass" if report.passed else "fail",
            mode=report.mode,
            failures=report.failures,
            residual=None if report.residual is None else str(report.residual),
            details=report.details,
            wall_time_ms=report.elapsed_ms if timings else None,
        )


class AsmRowModel(BaseModel):
    M: int
    counts: List[str]
    total: str


class AsmTableResponse(BaseModel):
    """Refined ASM numbers A(M, r), rows 1..max_order"""

    max_order: int
    rows: List[AsmRowModel]
    brute_force: Dict[str, List[str]] = Field(default_factory=dict, description="Order -> counts by direct enumeration")


class LaurentResponse(BaseModel):
    """phi(u) and xi(u) for one M"""

    M: int
    N: int
    normalization: str
    degree: int
    max_abs_exponent: int
    phi: List[Term]
    xi: List[Term]
    checks: List[VerificationReport] = Field(default_factory=list)


class EsymResponse(BaseModel):
    M: int
    values: List[str] = Field(..., description="e_0 ... e_M")
    asm_ratios: List[str] = Field(..., description="A(M+1, r+1) / A(M)")
    checks: List[VerificationReport] = Field(default_factory=list)


class ChiResponse(BaseModel):
    M: int
    text: str
    coefficients: List[str] = Field(..., description="Coefficients of z^M ... z^0")
    via_field: Optional[List[str]] = Field(None, description="Same coefficients from the Q(tau) route")
    checks: List[VerificationReport] = Field(default_factory=list)


class ComponentModel(BaseModel):
    representative: List[int]
    label: List[int]
    size: int
    value: str


class GroundStateResponse(BaseModel):
    """Orbit-reduced ground-state candidate"""

    N: int
    K: int
    eigenvalue: str
    orbit_count: int
    max_component: str
    integral: bool
    positive: bool
    components: List[ComponentModel]
    companion_sector: Optional[int] = Field(None, description="K of the spin-flipped companion, with --companion")
    checks: List[VerificationReport] = Field(default_factory=list)


class SumsResponse(BaseModel):
    N: int
    M: int
    increment: List[str]
    decrement: List[str]
    asm_refined: List[str] = Field(..., description="A(M+1, r+1)")
    ratios: List[str] = Field(..., description="increment sum / max component")


class BetheRootsResponse(BaseModel):
    M: int
    N: int
    precision: int
    roots: List[ComplexPair]
    u_values: List[ComplexPair]
    root_loci: List[Dict[str, str]]
    bethe_residual: Optional[str] = None
    energy: ComplexPair
    transfer_residual: Optional[str] = Field(None, description="max |lambda(u) - sigma(u)^N| over the samples")
    transfer_relative_residual: Optional[str] = Field(None, description="same gap over max(1, |sigma(u)^N|)")
    checks: List[VerificationReport] = Field(default_factory=list)


class AmplitudeModel(BaseModel):
    permutation: List[int]
    A: ComplexPair
    B: ComplexPair


class OracleResponse(BaseModel):
    N: int
    M: int
    precision: int
    max_relative_error: Optional[str] = None
    components: List[Tuple[List[int], ComplexPair]] = Field(..., description="Orbit representatives only")
    amplitudes: Optional[List[AmplitudeModel]] = None
    checks: List[VerificationReport] = Field(default_factory=list)


class VerifyResponse(BaseModel):
    N: int
    M: int
    passed: bool
    reports: List[VerificationReport]
    highlights: Dict[str, str] = Field(default_factory=dict)
    errors: List[str] = Field(default_factory=list)
    execution_time_ms: Optional[int] = None
