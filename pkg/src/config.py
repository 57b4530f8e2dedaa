"""
Configuration for the XXZ / ASM verifier
Numeric tolerances and solver switches, overridable from the environment or a .env file
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, repr(default)))


def _env_bool(name: str, default: bool) -> bool:
    return os.getenv(name, "true" if default else "false").lower() in ("1", "true", "yes")


@dataclass
class NumericConfig:
    """Floating-point settings for the Bethe-root numerics"""

    # Working precision in bits; 53 is double precision
    precision_bits: int = field(default_factory=lambda: _env_int("XXZ_PRECISION", 53))

    # Tolerances (all checks read these, none are hard-coded)
    root_tolerance: float = field(default_factory=lambda: _env_float("XXZ_ROOT_TOL", 1e-12))
    pairing_tolerance: float = field(default_factory=lambda: _env_float("XXZ_PAIRING_TOL", 1e-10))
    bethe_residual_tolerance: float = field(default_factory=lambda: _env_float("XXZ_BETHE_TOL", 1e-9))
    energy_tolerance: float = field(default_factory=lambda: _env_float("XXZ_ENERGY_TOL", 1e-9))
    transfer_tolerance: float = field(default_factory=lambda: _env_float("XXZ_TRANSFER_TOL", 1e-8))
    oracle_tolerance: float = field(default_factory=lambda: _env_float("XXZ_ORACLE_TOL", 1e-7))
    pole_tolerance: float = field(default_factory=lambda: _env_float("XXZ_POLE_TOL", 1e-6))
    singular_tolerance: float = 1e-14

    # Transfer-eigenvalue sampling
    transfer_samples: int = field(default_factory=lambda: _env_int("XXZ_TRANSFER_SAMPLES", 20))
    sample_radius: float = 2.0
    seed: int = field(default_factory=lambda: _env_int("XXZ_SEED", 20060101))

    # Durand-Kerner iteration cap
    max_root_steps: int = field(default_factory=lambda: _env_int("XXZ_MAX_ROOT_STEPS", 200))

    # Precision used automatically above this M when precision_bits is left at 53
    extended_precision_above_m: int = 10
    extended_precision_bits: int = 128


@dataclass
class SolverConfig:
    """Exact sector-solver settings"""

    show_progress: bool = field(default_factory=lambda: _env_bool("XXZ_PROGRESS", False))
    progress_min_unknowns: int = 400

    # Largest M accepted by the permutation-sum Bethe vector
    oracle_max_m: int = 6
    # Largest M for which `verify` runs the permutation sum
    verify_oracle_max_m: int = 5
    # Largest M for which `verify` runs the field-arithmetic chi and the uniqueness solve
    field_chi_max_m: int = 8
    uniqueness_max_m: int = 4
    # Largest N for which `verify` multiplies out the commutators
    commutation_max_n: int = 9

    # Largest N for which the unreduced (full-sector) solve is attempted by default
    full_sector_max_n: int = 11


@dataclass
class AppConfig:
    """Main application configuration"""

    numeric: NumericConfig = None
    solver: SolverConfig = None

    output_dir: str = "outputs"
    log_level: str = field(default_factory=lambda: os.getenv("XXZ_LOG_LEVEL", "WARNING"))

    def __post_init__(self):
        if self.numeric is None:
            self.numeric = NumericConfig()
        if self.solver is None:
            self.solver = SolverConfig()


# Global config instance
config = AppConfig()


def reload_config(env_file: Optional[str] = None) -> AppConfig:
    """Re-read the environment (optionally from a dotenv file) into the global config"""
    global config
    if env_file:
        load_dotenv(env_file, override=True)
    fresh = AppConfig()
    config.numeric = fresh.numeric
    config.solver = fresh.solver
    config.output_dir = fresh.output_dir
    config.log_level = fresh.log_level
    return config


# Physical constants of the model under study
DELTA = Fraction(-1, 2)


def ground_energy(n_sites: int) -> Fraction:
    """The eigenvalue -3N/4 carried by the ground-state candidate"""
    return Fraction(-3 * n_sites, 4)
