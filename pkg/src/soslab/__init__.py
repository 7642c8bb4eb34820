"""Sums of squares in real quadratic rings of integers and S-integer rings.

Exact decision procedures with certificates: an exhaustive search oracle
(`decompose_sos`), local tests modulo 2*O, the five-square interval
criterion, explicit witness elements, S-integer escalation, and a scan
harness producing reproducible JSONL reports.  All arithmetic is exact.
"""

from .criteria import (
    PetersInterval,
    doubling_witness,
    large_multiplier_guaranteed,
    odd_multiple_witness,
    peters_five_squares,
    peters_interval,
    ramified_obstruction_witness,
    small_multiplier_obstructed,
)
from .decompose import (
    DEFAULT_NODE_BUDGET,
    Decomposition,
    SearchVerdict,
    VerdictKind,
    candidate_roots,
    decompose_sos,
    is_sum_of_squares,
    pythagoras_length,
)
from .errors import (
    BadModulus,
    BasisMismatch,
    BudgetExceeded,
    ContextMismatch,
    NotOdd,
    NotRamified,
    NotSquarefree,
    NotTotallyNonneg,
    NotTotallyPositive,
    ParseError,
    RTooSmall,
    SoslabError,
    TooSmall,
    WrongField,
    ZeroElement,
)
from .quadfield import DyadicClass, OmegaKind, QuadInt, RingContext, real_sign
from .residues import (
    Residue2,
    ValuationClass,
    dyadic_valuation,
    dyadic_valuation_class,
    everywhere_local_test,
    is_square_mod_two,
    local_sos_test,
    residue_mod_two,
    squares_mod_two,
)
from .sintegers import (
    ObstructionCert,
    PythagorasBound,
    SElement,
    SKind,
    SVerdict,
    s_element,
    s_is_sum_of_squares,
    s_obstruction,
    s_pythagoras_upper,
)
from .verify import (
    Report,
    ScanSpec,
    estimate_stable_multiplier,
    reports_to_jsonl,
    run_claims,
    scan_totally_positive,
    verify_doubling,
    verify_local_necessity,
    verify_maass_three_squares,
    verify_multiplier_thresholds,
    verify_peters_equivalence,
    verify_pythagoras,
    verify_scharlau,
    write_reports_jsonl,
)

__version__ = "0.1.0"

__all__ = [
    "BadModulus",
    "BasisMismatch",
    "BudgetExceeded",
    "ContextMismatch",
    "DEFAULT_NODE_BUDGET",
    "Decomposition",
    "DyadicClass",
    "NotOdd",
    "NotRamified",
    "NotSquarefree",
    "NotTotallyNonneg",
    "NotTotallyPositive",
    "ObstructionCert",
    "OmegaKind",
    "ParseError",
    "PetersInterval",
    "PythagorasBound",
    "QuadInt",
    "RTooSmall",
    "Report",
    "Residue2",
    "RingContext",
    "SElement",
    "SKind",
    "SVerdict",
    "ScanSpec",
    "SearchVerdict",
    "SoslabError",
    "TooSmall",
    "ValuationClass",
    "VerdictKind",
    "WrongField",
    "ZeroElement",
    "candidate_roots",
    "decompose_sos",
    "doubling_witness",
    "dyadic_valuation",
    "dyadic_valuation_class",
    "estimate_stable_multiplier",
    "everywhere_local_test",
    "is_square_mod_two",
    "is_sum_of_squares",
    "large_multiplier_guaranteed",
    "local_sos_test",
    "odd_multiple_witness",
    "peters_five_squares",
    "peters_interval",
    "pythagoras_length",
    "ramified_obstruction_witness",
    "real_sign",
    "reports_to_jsonl",
    "residue_mod_two",
    "run_claims",
    "s_element",
    "s_is_sum_of_squares",
    "s_obstruction",
    "s_pythagoras_upper",
    "scan_totally_positive",
    "small_multiplier_obstructed",
    "squares_mod_two",
    "verify_doubling",
    "verify_local_necessity",
    "verify_maass_three_squares",
    "verify_multiplier_thresholds",
    "verify_peters_equivalence",
    "verify_pythagoras",
    "verify_scharlau",
    "write_reports_jsonl",
]
