"""Multiset sequences over Z_n and their subsequence-product sets.

A sequence here is an unordered finite multiset of residues; iteration
is always in nondecreasing residue order (the canonical form), which is
what makes witnesses and tie-breaks deterministic.

The product set of T is the set of pi(W) over all nonempty sub-multisets
W of T.  It is computed by the closure step

    S  ->  S | {a} | {s*a mod n : s in S}

one term at a time and represented as a width-n bit vector: the closure
step is then a scan-and-or, which is the hot path of every search in the
package.

The empty product is deliberately NOT 1 here: pi() of the empty sequence
is a domain error, so "nonempty subsequence" is enforced by types rather
than caller discipline.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import IdempotentSet, idempotents
from .errors import DomainError


class ResidueSequence:
    """Finite multiset of residues mod n; terms normalized to [0, n)."""

    __slots__ = ("n", "_counts", "_len")

    def __init__(self, n: int, terms=()):
        if n < 2:
            raise DomainError(f"modulus must be >= 2, got {n}")
        counts: dict[int, int] = {}
        for t in terms:
            a = t % n
            counts[a] = counts.get(a, 0) + 1
        self.n = n
        self._counts = dict(sorted(counts.items()))
        self._len = sum(counts.values())

    @property
    def counts(self) -> dict[int, int]:
        return dict(self._counts)

    def multiplicity(self, a: int) -> int:
        return self._counts.get(a % self.n, 0)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self)

    def extended(self, *terms: int) -> "ResidueSequence":
        return ResidueSequence(self.n, list(self) + list(terms))

    def __len__(self) -> int:
        return self._len

    def __iter__(self):
        for a, v in self._counts.items():
            for _ in range(v):
                yield a

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ResidueSequence)
            and self.n == other.n
            and self._counts == other._counts
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._counts.items())))

    def __repr__(self) -> str:
        return f"ResidueSequence({self.n}, {self.as_tuple()})"


@dataclass(frozen=True)
class ProductSet:
    """All nonempty-subsequence products of some sequence, as a width-n
    bit vector plus conveniences."""

    n: int
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def __contains__(self, a: int) -> bool:
        return 0 <= a < self.n and (self.mask >> a) & 1 == 1

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return self.mask.bit_count()


def _closure_step(mask: int, a: int, n: int) -> int:
    """One term added: S -> S | {a} | S*a."""
    img = 1 << a
    m = mask
    while m:
        low = m & -m
        img |= 1 << ((low.bit_length() - 1) * a % n)
        m ^= low
    return mask | img


def pi(T: ResidueSequence) -> int:
    """Product of all terms mod n; empty sequence is a domain error."""
    if len(T) == 0:
        raise DomainError("pi of the empty sequence is undefined")
    p = 1
    for a in T:
        p = p * a % T.n
    return p


def product_set(T: ResidueSequence) -> ProductSet:
    """Set of products over all nonempty sub-multisets of T."""
    mask = 0
    for a in T:
        mask = _closure_step(mask, a, T.n)
    return ProductSet(n=T.n, mask=mask)


def running_product_sets(T: ResidueSequence) -> list[ProductSet]:
    """Product sets after each term in canonical order; along any
    idempotent-product-free sequence these strictly grow (grow-or-some-
    power-turns-idempotent argument)."""
    out = []
    mask = 0
    for a in T:
        mask = _closure_step(mask, a, T.n)
        out.append(ProductSet(n=T.n, mask=mask))
    return out


def is_idempotent_product_free(
    T: ResidueSequence, E: IdempotentSet | None = None
) -> bool:
    """True iff product_set(T) avoids every idempotent.  Early exit on
    the first idempotent product."""
    if E is None:
        E = idempotents(T.n)
    elif E.n != T.n:
        raise DomainError(f"modulus mismatch: sequence {T.n}, idempotents {E.n}")
    mask = 0
    for a in T:
        mask = _closure_step(mask, a, T.n)
        if mask & E.mask:
            return False
    return True


def _min_product_one_pick(pairs, n: int):
    """Smallest product-one selection from (sort_key, unit) pairs.

    pairs must be sorted by sort_key.  Returns the list of chosen pairs
    minimizing length first, then lexicographic order of the sort keys,
    or None when no nonempty selection has unit product 1.

    Level j of the table holds, per suffix start, the bitmask of
    products achievable by choosing exactly j of the remaining units.
    """
    L = len(pairs)
    values = [v for _, v in pairs]
    one = 1 << 1  # bit of residue 1 (n >= 2 throughout)
    levels = [[one] * (L + 1)]  # j = 0: only the empty product
    target_level = None
    for j in range(1, L + 1):
        prev = levels[j - 1]
        cur = [0] * (L + 1)
        for start in range(L - 1, -1, -1):
            grown = 0
            m = prev[start + 1]
            v = values[start]
            while m:
                low = m & -m
                grown |= 1 << ((low.bit_length() - 1) * v % n)
                m ^= low
            cur[start] = cur[start + 1] | grown
        levels.append(cur)
        if cur[0] & one:
            target_level = j
            break
    if target_level is None:
        return None
    # walk forward, including the earliest (smallest) pair whenever the
    # remainder stays feasible: that is the lex-smallest selection
    chosen = []
    start, j, need = 0, target_level, 1
    while j > 0:
        v = values[start]
        rest = need * pow(v, -1, n) % n
        if (levels[j - 1][start + 1] >> rest) & 1:
            chosen.append(pairs[start])
            need = rest
            j -= 1
        start += 1
    return chosen


def find_product_one_subsequence(T: ResidueSequence):
    """Nonempty sub-multiset of T with product 1 mod n, or None.

    All terms must be units.  Among all such sub-multisets the shortest
    is returned, ties broken by lexicographically smallest canonical
    form.
    """
    n = T.n
    for a in T._counts:
        if gcd(a, n) != 1:
            raise DomainError(f"term {a} is not coprime to {n}")
    pairs = [(a, a) for a in T]
    picked = _min_product_one_pick(pairs, n)
    if picked is None:
        return None
    return ResidueSequence(n, [v for _, v in picked])


def parse_sequence_literal(text: str, n: int, reduce: bool = False) -> ResidueSequence:
    """Parse "5,7,2" into a sequence mod n.  Values outside [0, n) are
    rejected unless reduce is set."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    text = text.strip()
    if not text:
        return ResidueSequence(n, ())
    terms = []
    for part in text.split(","):
        part = part.strip()
        try:
            t = int(part)
        except ValueError:
            raise DomainError(f"bad sequence term {part!r}") from None
        if not reduce and not 0 <= t < n:
            raise DomainError(
                f"term {t} outside [0, {n}); pass --reduce to reduce mod n"
            )
        terms.append(t)
    return ResidueSequence(n, terms)


def format_sequence(T: ResidueSequence) -> str:
    """Canonical comma-separated form, empty string for the empty one."""
    return ",".join(str(a) for a in T)
