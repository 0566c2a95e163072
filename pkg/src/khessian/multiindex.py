"""Ordered multi-index combinatorics.

A multi-index of order k in ambient dimension n is a strictly increasing
k-tuple of integers from {1, ..., n}.  The empty index is a first-class
value (order 0).  Entries are 1-based throughout; grid code translates to
0-based storage at its own boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError

__all__ = ["MultiIndex", "indices", "sign", "splittings"]


@dataclass(frozen=True)
class MultiIndex:
    """Strictly increasing tuple of integers in [1, ambient]."""

    entries: tuple[int, ...]
    ambient: int

    def __post_init__(self):
        if self.ambient < 1:
            raise DomainError(f"ambient dimension must be >= 1, got {self.ambient}")
        ent = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", ent)
        if any(not 1 <= e <= self.ambient for e in ent):
            raise DomainError(f"entries {ent} out of range 1..{self.ambient}")
        if any(a >= b for a, b in zip(ent, ent[1:])):
            raise DomainError(f"entries {ent} not strictly increasing")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, i: int) -> bool:
        return i in self.entries

    def complement(self) -> "MultiIndex":
        """Increasing arrangement of {1..ambient} minus this index."""
        mine = set(self.entries)
        rest = tuple(i for i in range(1, self.ambient + 1) if i not in mine)
        return MultiIndex(rest, self.ambient)

    def remove(self, i: int) -> "MultiIndex":
        if i not in self.entries:
            raise DomainError(f"{i} not a member of {self.entries}")
        return MultiIndex(tuple(e for e in self.entries if e != i), self.ambient)

    def insert(self, j: int) -> "MultiIndex":
        if j in self.entries:
            raise DomainError(f"{j} already a member of {self.entries}")
        if not 1 <= j <= self.ambient:
            raise DomainError(f"{j} out of range 1..{self.ambient}")
        return MultiIndex(tuple(sorted(self.entries + (j,))), self.ambient)


def indices(k: int, n: int) -> list[MultiIndex]:
    """All order-k multi-indices in ambient n, lexicographic; k=0 gives [()]."""
    if k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    return [MultiIndex(c, n) for c in combinations(range(1, n + 1), k)]


def sign(alpha: MultiIndex, beta: MultiIndex) -> int:
    """Sign of the permutation sorting the concatenation (alpha, beta).

    alpha and beta must be disjoint.  Both tuples are increasing, so the
    inversion count is the number of pairs (a, b) with a in alpha, b in
    beta and a > b.  sign(empty, anything) == +1.
    """
    if alpha.ambient != beta.ambient:
        raise DomainError("mismatched ambient dimensions")
    sa = set(alpha.entries)
    if sa & set(beta.entries):
        raise DomainError(f"indices {alpha.entries} and {beta.entries} overlap")
    inversions = sum(1 for a in alpha.entries for b in beta.entries if a > b)
    return -1 if inversions % 2 else 1


def splittings(alpha: MultiIndex, c: int):
    """Yield all (sub, rest) with sub a c-element sub-index of alpha."""
    for chosen in combinations(alpha.entries, c):
        mine = set(chosen)
        rest = tuple(e for e in alpha.entries if e not in mine)
        yield MultiIndex(chosen, alpha.ambient), MultiIndex(rest, alpha.ambient)
