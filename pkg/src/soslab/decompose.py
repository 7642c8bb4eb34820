"""Sum-of-squares decompositions: exhaustive search with certificates.

`decompose_sos` is the ground-truth oracle of the package.  It either
produces a decomposition (re-verified on construction), proves that none
exists within the term bound (a completed exhaustive traversal), or gives
up with a budget verdict -- it never guesses, and it never prunes with a
representability theorem, so its negative answers are unconditional.

Two interchangeable kernels run the traversal: a pure-Python one
(arbitrary precision) and an optional compiled one (64-bit integers) built
from ``_speedups.pyx``.  ``engine="auto"`` picks the compiled kernel when
it is importable and the instance provably fits its integer envelope.
``SOSLAB_PURE_PYTHON=1`` in the environment disables the compiled kernel.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

from . import _pysearch
from .errors import BudgetExceeded, NotTotallyNonneg
from .quadfield import QuadInt

try:  # pragma: no cover - exercised only when the extension is absent
    from . import _speedups as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

if os.environ.get("SOSLAB_PURE_PYTHON") == "1":
    _compiled = None

DEFAULT_NODE_BUDGET = 10**8

# Compiled-kernel envelope: with trace T and discriminant D, every integer
# the kernel touches is bounded by 16*(T+2)^2*(D+1); stay far inside 2^63.
# The slab cap keeps its per-level candidate workspace to ~128 MiB.
_ENVELOPE_LIMIT = 2**62
_SLAB_ENTRY_CAP = 1 << 22


class VerdictKind(enum.Enum):
    FOUND = "found"
    EXHAUSTED_NONE = "exhausted_none"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class Decomposition:
    """A verified equation target = sum(term^2 for term in terms).

    Terms are canonical sign representatives (a > 0, or a = 0 and b > 0),
    stored in non-increasing (a, b) order; the identity is re-checked on
    construction, so holding an instance is holding a proof.
    """

    target: QuadInt
    terms: tuple[QuadInt, ...]

    def __post_init__(self) -> None:
        ctx = self.target.ctx
        normalized = tuple(
            sorted(
                (t.canonical() for t in self.terms if t),
                key=lambda t: t.half_coords,
                reverse=True,
            )
        )
        object.__setattr__(self, "terms", normalized)
        total = ctx.zero
        for term in normalized:
            if term.ctx != ctx:
                raise ValueError("terms and target live in different rings")
            total = total + term.square()
        if total != self.target:
            raise ValueError(
                f"decomposition does not verify: sum of squares is {total}, "
                f"target is {self.target}"
            )
        if len(normalized) > max(self.target.trace, 0) // 2:
            raise ValueError("more terms than the trace of the target allows")

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return f"{self.target} = 0 (empty sum)"
        squares = " + ".join(f"({t})^2" for t in self.terms)
        return f"{self.target} = {squares}"


@dataclass(frozen=True)
class SearchVerdict:
    """Outcome of one exhaustive search, with the node count that backs it."""

    kind: VerdictKind
    decomposition: Decomposition | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.kind is VerdictKind.FOUND


def candidate_roots(gamma: QuadInt) -> list[QuadInt]:
    """All canonical beta != 0 with beta^2 <= gamma in both real embeddings.

    These are the only possible terms of any decomposition of gamma; the
    list is returned in the descending order the search consumes.
    """
    if not gamma.is_totally_nonnegative():
        raise NotTotallyNonneg(f"{gamma} has a negative embedding")
    ctx = gamma.ctx
    big_a, big_b = gamma.half_coords
    raw = _pysearch.generate_candidates(ctx.D, ctx.kappa == 1, big_a, big_b)
    return [ctx.from_half_pair(a, b) for a, b, _, _ in raw]


def fits_compiled_kernel(d: int, trace: int, ncand: int, max_depth: int) -> bool:
    """Whether the 64-bit kernel provably cannot overflow on this instance."""
    if trace < 0:
        return False
    if 16 * (trace + 2) * (trace + 2) * (d + 1) >= _ENVELOPE_LIMIT:
        return False
    return max(ncand, 1) * (max_depth + 1) <= _SLAB_ENTRY_CAP


def _resolve_engine(engine: str, d: int, trace: int, ncand: int, max_depth: int) -> str:
    if engine == "auto":
        if _compiled is not None and fits_compiled_kernel(d, trace, ncand, max_depth):
            return "c"
        return "python"
    if engine == "c":
        if _compiled is None:
            raise RuntimeError("compiled search kernel is not available")
        if not fits_compiled_kernel(d, trace, ncand, max_depth):
            raise RuntimeError("instance exceeds the compiled kernel's envelope")
        return "c"
    if engine == "python":
        return "python"
    raise ValueError(f"unknown engine {engine!r}")


def decompose_sos(
    alpha: QuadInt,
    max_terms: int | None = None,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    engine: str = "auto",
) -> SearchVerdict:
    """Decide whether alpha is a sum of (at most max_terms) squares in O.

    Found verdicts carry a re-verified decomposition; exhausted verdicts
    are proofs of non-representability within the term bound (for the
    default unbounded search, non-representability outright); budget
    verdicts carry no claim.  Results do not depend on the kernel used.
    """
    ctx = alpha.ctx
    if not alpha.is_totally_nonnegative():
        # No sum of squares has a negative embedding; nothing to search.
        return SearchVerdict(VerdictKind.EXHAUSTED_NONE, None, 0)
    big_a, big_b = alpha.half_coords
    depth_cap = big_a // 2
    if max_terms is not None:
        depth_cap = min(depth_cap, max(max_terms, 0))
    if _pysearch.candidate_work_bound(ctx.D, big_a) > node_budget:
        # Candidate generation alone would outrun the budget.
        return SearchVerdict(VerdictKind.BUDGET_EXCEEDED, None, 0)
    cands = _pysearch.generate_candidates(ctx.D, ctx.kappa == 1, big_a, big_b)
    chosen = _resolve_engine(engine, ctx.D, big_a, len(cands), depth_cap)
    if chosen == "c":
        status, nodes, raw_terms = _compiled.run_search(
            ctx.D, big_a, big_b, cands, depth_cap, node_budget
        )
    else:
        status, nodes, raw_terms = _pysearch.run_search(
            ctx.D, big_a, big_b, cands, depth_cap, node_budget
        )
    if status == _pysearch.STATUS_FOUND:
        terms = tuple(ctx.from_half_pair(a, b) for a, b in raw_terms)
        return SearchVerdict(VerdictKind.FOUND, Decomposition(alpha, terms), nodes)
    if status == _pysearch.STATUS_BUDGET:
        return SearchVerdict(VerdictKind.BUDGET_EXCEEDED, None, nodes)
    return SearchVerdict(VerdictKind.EXHAUSTED_NONE, None, nodes)


def is_sum_of_squares(
    alpha: QuadInt,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    engine: str = "auto",
) -> bool:
    """True/False with proof either way; raises BudgetExceeded when unsure."""
    verdict = decompose_sos(alpha, node_budget=node_budget, engine=engine)
    if verdict.kind is VerdictKind.BUDGET_EXCEEDED:
        raise BudgetExceeded(verdict.nodes, node_budget)
    return verdict.found


def pythagoras_length(
    alpha: QuadInt,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    engine: str = "auto",
) -> int | None:
    """Length of the shortest sum-of-squares representation, or None.

    None is a proven negative (exhausted search), never a shrug; running
    out of node budget raises instead.  Computed by one unbounded search
    followed by iterative deepening below the length it found.
    """
    unbounded = decompose_sos(alpha, node_budget=node_budget, engine=engine)
    if unbounded.kind is VerdictKind.BUDGET_EXCEEDED:
        raise BudgetExceeded(unbounded.nodes, node_budget)
    if unbounded.kind is VerdictKind.EXHAUSTED_NONE:
        return None
    assert unbounded.decomposition is not None
    best = len(unbounded.decomposition)
    for cap in range(1, best):
        capped = decompose_sos(
            alpha, max_terms=cap, node_budget=node_budget, engine=engine
        )
        if capped.kind is VerdictKind.BUDGET_EXCEEDED:
            raise BudgetExceeded(capped.nodes, node_budget)
        if capped.found:
            assert capped.decomposition is not None
            return len(capped.decomposition)
    return best
