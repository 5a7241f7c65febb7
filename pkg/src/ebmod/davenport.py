"""Exact Davenport constant of the unit group (Z/nZ)^x.

D is the least length forcing every unit sequence of that length to
contain a nonempty product-one subsequence; equivalently one more than
the maximum length of a product-one-free unit sequence, which is what
the search engine computes.  Every returned witness is re-verified
through the independent product-set code path before it leaves this
module.

Budget exhaustion never produces a silent wrong answer: it raises
UndecidedError carrying the best certified bounds, with the classical
1 + sum(d_i - 1) construction as the floor and phi(n) (strict growth
inside the unit group) as the ceiling.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import factorize
from .errors import BudgetExceeded, InconsistencyError, UndecidedError
from .search import FreeSearch, SearchBudget
from .sequences import ResidueSequence, product_set
from .unitgroup import GroupShape, totient, unit_group_shape, units

DEFAULT_BUDGET = SearchBudget()

# decided values are budget-independent, so one cache serves all callers
_cache: dict[int, "DavenportResult"] = {}


@dataclass(frozen=True)
class DavenportResult:
    """Exact D((Z/nZ)^x) with a maximum-length product-one-free witness
    (length value - 1).  method records how the value was vouched for:
    "formula-cross-checked" when the exhaustive search agrees with the
    classical 1 + sum(d_i - 1) bound, plain "exhaustive" when the search
    value exceeds it (the bound is only a floor in general)."""

    n: int
    value: int
    witness: ResidueSequence
    method: str


def davenport_formula_bound(shape: GroupShape) -> int:
    """Classical lower bound 1 + sum(d_i - 1): the sequence taking each
    invariant-factor generator d_i - 1 times is product-one free."""
    return 1 + sum(d - 1 for d in shape.invariant_factors)


def davenport_exact(n: int, budget: SearchBudget = DEFAULT_BUDGET) -> DavenportResult:
    """Exact D((Z/nZ)^x) by exhaustive search over canonical unit
    sequences with product-set memoization.

    Raises UndecidedError with bounds (lo, hi) when the budget is
    exhausted first; both endpoints are certified (lo by an explicit
    free sequence or the classical construction, hi by strict growth).
    """
    f = factorize(n)  # validates n
    got = _cache.get(n)
    if got is not None:
        return got
    shape = unit_group_shape(f)
    formula = davenport_formula_bound(shape)
    phi = totient(f)
    us = units(n)
    candidates = [u for u in us if u != 1]
    engine = None
    try:
        engine = FreeSearch(
            n=n,
            candidates=candidates,
            forbidden_mask=1 << 1,
            cap=phi - 1,
            budget=budget,
        )
        free_len = engine.max_free_length(seed=formula - 1)
    except BudgetExceeded as exc:
        proven = engine.best_true if engine is not None else 0
        lo = max(formula, proven + 1)
        hi = max(phi, lo)
        raise UndecidedError(
            f"Davenport constant for n={n} undecided at budget: "
            f"in [{lo}, {hi}] ({exc})",
            bounds=(lo, hi),
        ) from exc
    terms = engine.witness(free_len)
    witness = ResidueSequence(n, terms)
    _check_result(n, free_len + 1, witness, formula, phi, us)
    method = "formula-cross-checked" if free_len + 1 == formula else "exhaustive"
    result = DavenportResult(n=n, value=free_len + 1, witness=witness, method=method)
    _cache[n] = result
    return result


def _check_result(n, value, witness, formula, phi, us):
    """Independent re-verification of a claimed exact result; failures
    mean an engine bug, never bad input."""
    unit_set = set(us)
    if any(a not in unit_set for a in witness):
        raise InconsistencyError(f"witness for n={n} contains a non-unit")
    if len(witness) != value - 1:
        raise InconsistencyError(
            f"witness length {len(witness)} != value {value} - 1 for n={n}"
        )
    if len(witness) > 0 and 1 in product_set(witness):
        raise InconsistencyError(f"witness for n={n} is not product-one free")
    if not formula <= value <= phi:
        raise InconsistencyError(
            f"Davenport value {value} for n={n} outside [{formula}, {phi}]"
        )
