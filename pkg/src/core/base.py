"""
Shared report type for the exact and numeric checks
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckReport:
    """Standardized outcome of one verification check"""
    name: str
    params: Dict[str, Any]
    passed: bool
    mode: str  # "exact" or "numeric"
    failures: List[str] = field(default_factory=list)
    residual: Optional[Any] = None
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    @classmethod
    def from_failures(
        cls,
        name: str,
        params: Dict[str, Any],
        failures: List[str],
        mode: str = "exact",
        **extra: Any,
    ) -> "CheckReport":
        return cls(name=name, params=params, passed=not failures, mode=mode, failures=list(failures), **extra)

    def __bool__(self) -> bool:
        return self.passed

