"""Minimal Janet bases of polynomial ideals for degree-compatible orders.

Exact-arithmetic completion with selectable prolongation strategies, reduced
Groebner basis extraction, and an independent Buchberger oracle.
"""

from .poly import (
    DEGLEX,
    DEGREVLEX,
    MAX_DEGREE,
    MonomialOrder,
    Polynomial,
    Q,
    deglex,
    degrevlex,
    divides,
    format_monomial,
    format_polynomial,
    mindeg,
    mon_div,
    mon_lcm,
    mon_mul,
    proper_divides,
    total_degree,
    unit_mon,
)
from .division import JanetPartition, JanetTree, janet_divisor, janet_divisors, janet_partition
from .reduction import (
    ReductionContext,
    hnf_j,
    interreduce_ordinary,
    j_autoreduce,
    minimalize_heads,
    nf_j,
    nf_ordinary,
)
from .engine import (
    CompletionTimeout,
    EngineState,
    GeneratorRecord,
    RunStats,
    Strategy,
    extract_reduced_gb,
    janet_basis,
    update,
)
from .oracle import (
    CertificateReport,
    buchberger_reduced_gb,
    ideals_equal,
    is_groebner,
    is_janet_basis,
    s_polynomial,
)
from .cli import ParseError, SystemFile, generate, main, parse_system, render_system

__all__ = [
    "DEGLEX",
    "DEGREVLEX",
    "MAX_DEGREE",
    "MonomialOrder",
    "Polynomial",
    "Q",
    "deglex",
    "degrevlex",
    "divides",
    "format_monomial",
    "format_polynomial",
    "mindeg",
    "mon_div",
    "mon_lcm",
    "mon_mul",
    "proper_divides",
    "total_degree",
    "unit_mon",
    "JanetPartition",
    "JanetTree",
    "janet_divisor",
    "janet_divisors",
    "janet_partition",
    "ReductionContext",
    "hnf_j",
    "interreduce_ordinary",
    "j_autoreduce",
    "minimalize_heads",
    "nf_j",
    "nf_ordinary",
    "CompletionTimeout",
    "EngineState",
    "GeneratorRecord",
    "RunStats",
    "Strategy",
    "extract_reduced_gb",
    "janet_basis",
    "update",
    "CertificateReport",
    "buchberger_reduced_gb",
    "ideals_equal",
    "is_groebner",
    "is_janet_basis",
    "s_polynomial",
    "ParseError",
    "SystemFile",
    "generate",
    "main",
    "parse_system",
    "render_system",
]

__version__ = "0.1.0"
