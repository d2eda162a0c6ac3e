"""Lexicographic combinatorial numbering of k-subsets of [L]: rank, unrank,
and an in-order successor, so the search can hand out disjoint rank ranges."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence


def _validate_members(members: Sequence[int], universe: int) -> tuple[int, ...]:
    m = tuple(members)
    if any(not 0 <= v < universe for v in m):
        raise ValueError(f"subset members must lie in [0, {universe})")
    if any(a >= b for a, b in zip(m, m[1:])):
        raise ValueError("subset members must be strictly ascending")
    return m


def rank(members: Sequence[int], universe: int) -> int:
    """Lexicographic position of an ascending k-subset of [universe)."""
    m = _validate_members(members, universe)
    k = len(m)
    r = 0
    prev = -1
    for pos, v in enumerate(m):
        for skipped in range(prev + 1, v):
            r += comb(universe - skipped - 1, k - pos - 1)
        prev = v
    return r


def unrank(r: int, universe: int, k: int) -> tuple[int, ...]:
    """Inverse of rank; runs in O(k * universe) without enumerating predecessors."""
    if k < 0 or k > universe:
        raise ValueError("subset size out of range")
    total = comb(universe, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} outside [0, {total})")
    members = []
    v = 0
    remaining = k
    while remaining:
        block = comb(universe - v - 1, remaining - 1)
        if r < block:
            members.append(v)
            remaining -= 1
        else:
            r -= block
        v += 1
    return tuple(members)


def successor(members: Sequence[int], universe: int) -> tuple[int, ...] | None:
    """Next subset in lexicographic order, or None past the last one."""
    m = list(members)
    k = len(m)
    for i in range(k - 1, -1, -1):
        limit = universe - (k - i)
        if m[i] < limit:
            m[i] += 1
            for j in range(i + 1, k):
                m[j] = m[j - 1] + 1
            return tuple(m)
    return None


@dataclass
class SubsetCursor:
    """Position in the C(universe, k) numbering; rank and members stay in step."""

    universe: int
    k: int
    rank: int
    members: tuple[int, ...]

    @classmethod
    def at(cls, r: int, universe: int, k: int) -> "SubsetCursor":
        return cls(universe, k, r, unrank(r, universe, k))

    def advance(self) -> bool:
        nxt = successor(self.members, self.universe)
        if nxt is None:
            return False
        self.members = nxt
        self.rank += 1
        return True
