"""Arithmetic in GF(2)[x]/(x^N - 1) and the circulant-matrix isomorphism.

Residues are kept as packed bit integers so that addition is a single XOR
and weight is a popcount; the search inner loop takes weights constantly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True, slots=True)
class PolyResidue:
    """Element of GF(2)[x]/(x^N - 1); bit s of ``bits`` is the coefficient of x^s."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError(f"modulus order must be positive, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"coefficient bits out of range for N={self.n}")

    @classmethod
    def zero(cls, n: int) -> "PolyResidue":
        return cls(n, 0)

    @classmethod
    def one(cls, n: int) -> "PolyResidue":
        return cls(n, 1)

    @classmethod
    def monomial(cls, exponent: int, n: int) -> "PolyResidue":
        return cls(n, 1 << (exponent % n))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], n: int) -> "PolyResidue":
        bits = 0
        for e in exponents:
            if not 0 <= e < n:
                raise ValueError(f"exponent {e} outside [0, {n})")
            if bits >> e & 1:
                raise ValueError(f"duplicate exponent {e}")
            bits |= 1 << e
        return cls(n, bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def exponents(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.n) if self.bits >> s & 1)

    def _check_same_ring(self, other: "PolyResidue") -> None:
        if self.n != other.n:
            raise ValueError(f"mismatched modulus orders {self.n} and {other.n}")

    def __add__(self, other: "PolyResidue") -> "PolyResidue":
        self._check_same_ring(other)
        return PolyResidue(self.n, self.bits ^ other.bits)

    def __mul__(self, other: "PolyResidue") -> "PolyResidue":
        self._check_same_ring(other)
        # shift-and-XOR over the set bits of the lighter operand
        light, heavy = (self, other) if self.weight <= other.weight else (other, self)
        n, mask = self.n, (1 << self.n) - 1
        acc = 0
        lb = light.bits
        while lb:
            low = lb & -lb
            s = low.bit_length() - 1
            acc ^= ((heavy.bits << s) | (heavy.bits >> (n - s))) & mask if s else heavy.bits
            lb ^= low
        return PolyResidue(n, acc)

    def shift(self, t: int) -> "PolyResidue":
        """Multiply by x^t, i.e. rotate the coefficients."""
        return self * PolyResidue.monomial(t, self.n)

    def __bool__(self) -> bool:
        return self.bits != 0

    def render(self) -> str:
        """Sorted exponent list, e.g. ``0,2`` for 1+x^2; ``-`` for zero."""
        if not self.bits:
            return "-"
        return ",".join(str(s) for s in self.exponents())

    @classmethod
    def parse(cls, text: str, n: int) -> "PolyResidue":
        text = text.strip()
        if text in ("-", "-1"):
            return cls.zero(n)
        return cls.from_exponents((int(tok) for tok in text.split(",")), n)

    def __repr__(self) -> str:
        return f"PolyResidue(n={self.n}, {self.render()!r})"


def poly_from_column(column: Sequence[int]) -> PolyResidue:
    """Residue whose coefficient of x^s is entry s of a circulant's left-most column."""
    if len(column) == 0:
        raise ValueError("empty column")
    bits = 0
    for s, v in enumerate(column):
        if v:
            bits |= 1 << s
    return PolyResidue(len(column), bits)


def circulant_expand(a: PolyResidue) -> np.ndarray:
    """N x N binary circulant; each successive row is the previous one rotated right."""
    n = a.n
    out = np.zeros((n, n), dtype=np.uint8)
    for s in range(n):
        if a.bits >> s & 1:
            for j in range(n):
                out[(s + j) % n, j] = 1
    return out


class PolyVector:
    """Length-L sequence of residues over one ring; weight is the sum of weights."""

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[PolyResidue]):
        elems = tuple(elements)
        if not elems:
            raise ValueError("empty vector")
        n = elems[0].n
        for e in elems:
            if e.n != n:
                raise ValueError("elements must share one modulus order")
        self.elements = elems

    @property
    def n(self) -> int:
        return self.elements[0].n

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> PolyResidue:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyVector) and self.elements == other.elements

    @property
    def weight(self) -> int:
        return sum(e.weight for e in self.elements)

    def shift_all(self, t: int) -> "PolyVector":
        """Apply the same circular shift x^t to every component."""
        return PolyVector(e.shift(t) for e in self.elements)

    def to_bits(self) -> int:
        """Concatenate components into one n*L bit integer, component 0 lowest."""
        n = self.n
        acc = 0
        for i, e in enumerate(self.elements):
            acc |= e.bits << (i * n)
        return acc

    def __repr__(self) -> str:
        return f"PolyVector([{', '.join(e.render() for e in self.elements)}], n={self.n})"
