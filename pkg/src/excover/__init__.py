"""Exact covering systems with precisely one repeated modulus.

A disjoint (exact) covering system is a finite set of arithmetic progressions
covering every integer exactly once.  This package searches for, verifies,
and catalogs the systems whose moduli are all distinct except the largest,
which is repeated r times, with least modulus at least 3.
"""

from .arith import CapExceeded, Fraction, UnderflowError, frac_sub_unit, gcd, lcm_checked, smallest_prime_factor
from .catalog import DiffReport, GoldenEntry, diff, format_compact, format_json, golden, parse_compact, parse_json
from .search import (
    INFEASIBLE,
    UNDECIDED,
    Catalog,
    SearchConfig,
    WorkCell,
    cells_for,
    enumerate_profiles,
    partition_cells,
    residue_witness,
    run_search,
    witness_bruteforce,
)
from .systems import (
    CongruenceClass,
    CoveringSystem,
    ModuliProfile,
    NotSingleRepeated,
    VerifyReport,
    classes_disjoint,
    density,
    double_system,
    format_moduli,
    format_system,
    parse_moduli,
    parse_system,
    profile_of,
    trivial_power_system,
    verify,
    verify_bruteforce,
)

__all__ = [
    "CapExceeded",
    "Catalog",
    "CongruenceClass",
    "CoveringSystem",
    "DiffReport",
    "Fraction",
    "GoldenEntry",
    "INFEASIBLE",
    "ModuliProfile",
    "NotSingleRepeated",
    "SearchConfig",
    "UNDECIDED",
    "UnderflowError",
    "VerifyReport",
    "WorkCell",
    "cells_for",
    "classes_disjoint",
    "density",
    "diff",
    "double_system",
    "enumerate_profiles",
    "format_compact",
    "format_json",
    "format_moduli",
    "format_system",
    "frac_sub_unit",
    "gcd",
    "golden",
    "lcm_checked",
    "parse_compact",
    "parse_json",
    "parse_moduli",
    "parse_system",
    "partition_cells",
    "profile_of",
    "residue_witness",
    "run_search",
    "smallest_prime_factor",
    "trivial_power_system",
    "verify",
    "verify_bruteforce",
    "witness_bruteforce",
]

__version__ = "0.1.0"
