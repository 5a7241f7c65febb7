"""Exhaustive search for maximum-length free sequences mod n.

Shared engine behind the Davenport constant (forbidden product: 1) and
the idempotent-product constant (forbidden products: every idempotent).
A sequence is *free* when no nonempty sub-multiset has a forbidden
product, i.e. its product set avoids the forbidden bit mask.

Key facts the engine leans on:

* Canonical order.  Sequences are multisets, so the search enumerates
  only nondecreasing term orders: state is (product-set bitmask, lowest
  candidate index still allowed).

* Strict growth.  Adding a term to a free sequence strictly grows the
  product set (if it didn't, some power of the added term would already
  be an achieved product and idempotent/one, contradicting freeness).
  Hence a free sequence of length L has |product set| >= L, and L can
  never exceed cap = (number of residues that may appear in a free
  product set).  This yields the slack pruning rule
  popcount(S) + r > cap  =>  no r-term extension exists.

* Monotone reach.  If state S extends by r further terms, it extends by
  fewer; if it cannot extend by r, it cannot extend by more.  The memo
  therefore stores per state a pair (best r proven reachable, worst r
  proven unreachable) packed into one int, and is shared across all
  probes and the witness reconstruction.

Probing order exploits the cost asymmetry: refuting length r costs
roughly exponential in the slack cap - r, so the engine first probes
r = cap (slack 0, cheap, and instantly TRUE for cyclic unit groups),
then gallops upward from a proven lower bound so that exactly one
refutation — at the true answer + 1, the cheapest possible — is paid.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass

from .errors import BudgetExceeded, InconsistencyError

_LO_SHIFT = 20  # memo packing: hi_true | (lo_false << _LO_SHIFT)
_LO_INIT = (1 << _LO_SHIFT) - 1
_TIME_CHECK_PERIOD = 4096


@dataclass(frozen=True)
class SearchBudget:
    """Resource limits for one exact search.

    max_states caps the memo table (distinct explored states); blowing
    it raises BudgetExceeded, which callers convert into an honest
    undecided verdict.  max_seconds is wall-clock, checked coarsely.
    """

    max_states: int = 1 << 26
    max_seconds: float | None = None


class FreeSearch:
    """Maximum free-sequence length over `candidates` avoiding
    `forbidden_mask`, with lexicographically-smallest witness."""

    def __init__(
        self,
        n: int,
        candidates: list[int],
        forbidden_mask: int,
        cap: int,
        budget: SearchBudget,
    ):
        self.n = n
        self.candidates = sorted(candidates)
        self.forbidden = forbidden_mask
        self.cap = cap
        self.budget = budget
        self._nbytes = (n + 7) // 8
        self._floor_shift = (len(self.candidates) + 1).bit_length()
        self._memo: dict[int, int] = {}
        self._states = 0
        self._deadline = (
            time.monotonic() + budget.max_seconds
            if budget.max_seconds is not None
            else None
        )
        self.best_true = 0  # largest r with exists_free(r) proven
        if cap >= 1 << _LO_SHIFT:
            raise BudgetExceeded(f"state space for n={n} is out of reach")
        table_cells = len(self.candidates) * self._nbytes * 256
        if table_cells > 1 << 23:
            raise BudgetExceeded(
                f"candidate image tables for n={n} need {table_cells} cells"
            )
        self._selfbit = [1 << a for a in self.candidates]
        self._tables = [self._build_table(a) for a in self.candidates]
        # recursion depth tracks extension length, bounded by cap
        sys.setrecursionlimit(max(sys.getrecursionlimit(), cap + 200))

    def _build_table(self, a: int) -> list[list[int]]:
        """Per 8-bit chunk of a product-set mask, the OR of images
        s -> s*a for every subset of that chunk, indexed by byte value.
        Built incrementally: image(v) = image(v minus lowest bit) |
        image(lowest bit)."""
        n = self.n
        out = []
        for c in range(self._nbytes):
            base = 8 * c
            row = [0] * 256
            for j in range(8):
                if base + j < n:
                    row[1 << j] = 1 << ((base + j) * a % n)
            for v in range(3, 256):
                low = v & -v
                if v != low:
                    row[v] = row[v & (v - 1)] | row[low]
            out.append(row)
        return out

    def _image(self, S: int, idx: int) -> int:
        """Product set after appending candidates[idx] to a sequence
        whose product set is S."""
        tbl = self._tables[idx]
        img = self._selfbit[idx]
        for c, b in enumerate(S.to_bytes(self._nbytes, "little")):
            if b:
                img |= tbl[c][b]
        return S | img

    def _tick(self) -> None:
        self._states += 1
        if self._states > self.budget.max_states:
            raise BudgetExceeded(
                f"memo table exceeded {self.budget.max_states} states"
            )
        if self._deadline is not None and self._states % _TIME_CHECK_PERIOD == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExceeded(
                    f"search exceeded {self.budget.max_seconds} seconds"
                )

    def _reach(self, S: int, floor: int, r: int) -> bool:
        """Can the free state S be extended by r further terms drawn
        (nondecreasingly) from candidates[floor:]?"""
        if r == 0:
            return True
        if S.bit_count() + r > self.cap:
            return False
        key = (S << self._floor_shift) | floor
        ent = self._memo.get(key)
        if ent is None:
            self._tick()
            ent = _LO_INIT << _LO_SHIFT  # hi_true 0, lo_false "infinity"
            self._memo[key] = ent
        else:
            if r <= ent & _LO_INIT:
                return True
            if r >= ent >> _LO_SHIFT:
                return False
        forbidden = self.forbidden
        for idx in range(floor, len(self.candidates)):
            T = self._image(S, idx)
            if T & forbidden:
                continue
            # T != S is automatic: a stalled product set would mean some
            # power of the new term is already an achieved forbidden
            # product, contradicting S being free.
            if self._reach(T, idx, r - 1):
                if r > ent & _LO_INIT:
                    self._memo[key] = (ent >> _LO_SHIFT << _LO_SHIFT) | r
                return True
        if r < ent >> _LO_SHIFT:
            self._memo[key] = (r << _LO_SHIFT) | (ent & _LO_INIT)
        return False

    def exists_free(self, r: int) -> bool:
        """Is there a free sequence of length r?"""
        if r <= 0:
            return True
        if r > self.cap:
            return False
        for idx in range(len(self.candidates)):
            if self._reach(self._selfbit[idx], idx, r - 1):
                if r > self.best_true:
                    self.best_true = r
                return True
        return False

    def max_free_length(self, seed: int = 0) -> int:
        """Largest r with a free sequence of length r.

        seed must be an already-proven lower bound (0 is always safe);
        anything stronger, e.g. from a classical formula, turns all but
        one probe into cheap confirmations.
        """
        if not self.candidates or self.cap <= 0:
            return 0
        if self.exists_free(self.cap):
            return self.cap
        g = min(max(seed, 0), self.cap - 1)
        if g > 0 and not self.exists_free(g):
            raise InconsistencyError(
                f"claimed lower bound {g} refuted for n={self.n}"
            )
        while g + 1 <= self.cap and self.exists_free(g + 1):
            g += 1
        return g

    def witness(self, length: int) -> tuple[int, ...]:
        """Lexicographically smallest free sequence of the given length
        (which must be achievable — call after max_free_length)."""
        if length == 0:
            return ()
        terms: list[int] = []
        S = 0
        floor = 0
        remaining = length
        while remaining > 0:
            for idx in range(floor, len(self.candidates)):
                T = self._selfbit[idx] if S == 0 else self._image(S, idx)
                if T & self.forbidden:
                    continue
                if self._reach(T, idx, remaining - 1):
                    terms.append(self.candidates[idx])
                    S, floor, remaining = T, idx, remaining - 1
                    break
            else:
                raise InconsistencyError(
                    f"witness reconstruction stuck at length {len(terms)}"
                )  # unreachable if length is achievable
        return tuple(terms)

    @property
    def states_used(self) -> int:
        return self._states
