"""Exact permanents of nonnegative-integer matrices and of square polynomial
matrices over the ring.

Engines: brute-force over permutations (oracle, small orders), recursive
cofactor expansion along the sparsest row, Gray-coded inclusion-exclusion,
and its halved variant iterating 2^(order-1) subsets. All values are exact;
crossing the 128-bit range raises instead of wrapping or going float.
"""

from __future__ import annotations

import random
from itertools import permutations
from typing import Sequence

from .ring import PolyResidue

VALUE_CAP = (1 << 128) - 1
BRUTE_MAX_ORDER = 10
RYSER_MAX_ORDER = 63


class PermanentOverflowError(OverflowError):
    """Permanent value exceeded the supported 128-bit range."""


class IntMatrix:
    """Immutable nonnegative-integer matrix; permanents act on views of it."""

    def __init__(self, entries: Sequence[Sequence[int]]):
        self.entries = tuple(tuple(int(v) for v in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for v in row:
                if v < 0:
                    raise ValueError("entries must be nonnegative")

    def view(self) -> "MatrixView":
        return MatrixView(self)


class MatrixView:
    """Active-row/column masks over an IntMatrix.

    The masks are plain mutable state: engines may toggle them during one
    call (and restore them on unwind), so a view must not be shared between
    concurrent calls. Clone per worker instead; the base matrix is immutable
    and freely shared.
    """

    __slots__ = ("base", "row_mask", "col_mask")

    def __init__(self, base: IntMatrix, row_mask: int | None = None, col_mask: int | None = None):
        self.base = base
        self.row_mask = (1 << base.rows) - 1 if row_mask is None else row_mask
        self.col_mask = (1 << base.cols) - 1 if col_mask is None else col_mask

    @property
    def order(self) -> int:
        return self.row_mask.bit_count()

    def is_square(self) -> bool:
        return self.row_mask.bit_count() == self.col_mask.bit_count()

    def set_cols(self, cols: Sequence[int]) -> "MatrixView":
        self.col_mask = 0
        for c in cols:
            self.col_mask |= 1 << c
        return self

    def set_rows(self, rows: Sequence[int]) -> "MatrixView":
        self.row_mask = 0
        for r in rows:
            self.row_mask |= 1 << r
        return self

    def active_rows(self) -> list[int]:
        return [r for r in range(self.base.rows) if self.row_mask >> r & 1]

    def active_cols(self) -> list[int]:
        return [c for c in range(self.base.cols) if self.col_mask >> c & 1]

    def clone(self) -> "MatrixView":
        return MatrixView(self.base, self.row_mask, self.col_mask)

    def dense(self) -> list[list[int]]:
        rows, cols = self.active_rows(), self.active_cols()
        e = self.base.entries
        return [[e[r][c] for c in cols] for r in rows]

    def active_nnz(self) -> int:
        e = self.base.entries
        return sum(
            1
            for r in self.active_rows()
            for c in self.active_cols()
            if e[r][c]
        )


def _as_view(m) -> MatrixView:
    if isinstance(m, MatrixView):
        view = m
    elif isinstance(m, IntMatrix):
        view = m.view()
    else:
        view = IntMatrix(m).view()
    if not view.is_square():
        raise ValueError("permanent requires a square view")
    return view


def _checked(value: int) -> int:
    if value > VALUE_CAP:
        raise PermanentOverflowError(f"permanent {value} exceeds 128-bit range")
    return value


def perm_brute(m) -> int:
    """Sum over all permutations; the oracle engine, refused past order 10."""
    view = _as_view(m)
    if view.order > BRUTE_MAX_ORDER:
        raise ValueError(f"brute-force engine refused past order {BRUTE_MAX_ORDER}")
    dense = view.dense()
    n = len(dense)
    total = 0
    for sigma in permutations(range(n)):
        prod = 1
        for r in range(n):
            prod *= dense[r][sigma[r]]
            if prod == 0:
                break
        total += prod
    return _checked(total)


def perm_recursive(m) -> int:
    """Cofactor expansion along the lowest-index active row.

    The matrix is never copied: active rows and columns are tracked as masks
    mutated in place and restored on unwind. Sparse inputs truncate early
    because a row with no active nonzero entry kills its whole branch.
    """
    view = _as_view(m)
    entries = view.base.entries

    def recurse() -> int:
        rm = view.row_mask
        if rm == 0:
            return 1
        low = rm & -rm
        row = entries[low.bit_length() - 1]
        total = 0
        view.row_mask = rm ^ low
        cm = view.col_mask
        while cm:
            cl = cm & -cm
            cm ^= cl
            v = row[cl.bit_length() - 1]
            if v:
                view.col_mask &= ~cl
                total += v * recurse()
                view.col_mask |= cl
        view.row_mask = rm
        return total

    return _checked(recurse())


def _gray_dense(m) -> tuple[list[list[int]], int]:
    view = _as_view(m)
    if view.order > RYSER_MAX_ORDER:
        raise ValueError(f"inclusion-exclusion engines refused past order {RYSER_MAX_ORDER}")
    return view.dense(), view.order


def perm_ryser(m) -> int:
    """Inclusion-exclusion over column subsets with Gray-coded row-sum updates."""
    dense, n = _gray_dense(m)
    if n == 0:
        return 1
    cols = [[dense[r][c] for r in range(n)] for c in range(n)]
    sums = [0] * n
    total = 0
    sign = 1
    gray = 0
    for k in range(1, 1 << n):
        g = k ^ (k >> 1)
        bit = gray ^ g
        gray = g
        c = bit.bit_length() - 1
        col = cols[c]
        if g & bit:
            for r in range(n):
                sums[r] += col[r]
        else:
            for r in range(n):
                sums[r] -= col[r]
        sign = -sign
        prod = 1
        for r in range(n):
            prod *= sums[r]
            if prod == 0:
                break
        total += sign * prod
    if n & 1:
        total = -total
    return _checked(total)


def perm_ryser_nw(m) -> int:
    """Halved inclusion-exclusion: 2^(order-1) subsets over all but the last column.

    Works on doubled row values to stay in exact integers; the final sum is
    divisible by 2^(order-1) by construction.
    """
    dense, n = _gray_dense(m)
    if n == 0:
        return 1
    if n == 1:
        return _checked(dense[0][0])
    cols = [[dense[r][c] for r in range(n)] for c in range(n)]
    # y_r tracks 2*(subset row sum) + 2*a[r][n-1] - (full row sum)
    row_totals = [sum(dense[r]) for r in range(n)]
    y = [2 * dense[r][n - 1] - row_totals[r] for r in range(n)]
    total = 1
    for v in y:
        total *= v
        if total == 0:
            break
    sign = 1
    gray = 0
    for k in range(1, 1 << (n - 1)):
        g = k ^ (k >> 1)
        bit = gray ^ g
        gray = g
        c = bit.bit_length() - 1
        col = cols[c]
        if g & bit:
            for r in range(n):
                y[r] += 2 * col[r]
        else:
            for r in range(n):
                y[r] -= 2 * col[r]
        sign = -sign
        prod = 1
        for r in range(n):
            prod *= y[r]
            if prod == 0:
                break
        total += sign * prod
    if (n - 1) & 1:
        total = -total
    q, rem = divmod(total, 1 << (n - 1))
    if rem:
        raise AssertionError("halved inclusion-exclusion lost exactness")
    return _checked(q)


def perm_kallman(m) -> int:
    """Named extension slot for Kallman's {0,1}-permanent method; not implemented."""
    raise NotImplementedError(
        "the Kallman engine is an extension point; use recursive or ryser_nw"
    )


# density threshold: sparse matrices favor cofactor recursion
_DISPATCH_SMALL_ORDER = 4
_DISPATCH_NNZ_FACTOR = 3


def perm_dispatch(m) -> int:
    """Pick an engine by order and density; the value does not depend on the pick."""
    view = _as_view(m)
    n = view.order
    if n > RYSER_MAX_ORDER:
        return perm_recursive(view)
    if n <= _DISPATCH_SMALL_ORDER or view.active_nnz() <= _DISPATCH_NNZ_FACTOR * n:
        return perm_recursive(view)
    return perm_ryser_nw(view)


ENGINES = {
    "brute": perm_brute,
    "recursive": perm_recursive,
    "ryser": perm_ryser,
    "ryser_nw": perm_ryser_nw,
    "kallman": perm_kallman,
}


def perm_poly(entries) -> PolyResidue:
    """Permanent of a square polynomial matrix over the ring.

    In characteristic 2 the permanent coincides with the determinant; a
    repeated row therefore yields the zero residue.
    """
    if hasattr(entries, "entries"):
        entries = entries.entries
    grid = [list(row) for row in entries]
    n_rows = len(grid)
    if any(len(row) != n_rows for row in grid):
        raise ValueError("permanent requires a square matrix")
    if n_rows == 0:
        raise ValueError("empty matrix")
    ring_n = grid[0][0].n
    zero = PolyResidue.zero(ring_n)

    col_mask = (1 << n_rows) - 1

    def recurse(r: int, cols: int) -> PolyResidue:
        if r == n_rows:
            return PolyResidue.one(ring_n)
        acc = zero
        cm = cols
        while cm:
            cl = cm & -cm
            cm ^= cl
            c = cl.bit_length() - 1
            e = grid[r][c]
            if e:
                acc = acc + e * recurse(r + 1, cols ^ cl)
        return acc

    return recurse(0, col_mask)


def random_benchmark_matrix(order: int, column_weight: int, seed: int) -> IntMatrix:
    """Random {0,1} matrix with every column summing to column_weight and a
    nonzero permanent; deterministic per seed, resampled when singular."""
    if column_weight < 1 or column_weight > order:
        raise ValueError("column weight must be in [1, order]")
    rng = random.Random(seed)
    for _ in range(10000):
        cols = [rng.sample(range(order), column_weight) for _ in range(order)]
        entries = [[0] * order for _ in range(order)]
        for c, picks in enumerate(cols):
            for r in picks:
                entries[r][c] = 1
        m = IntMatrix(entries)
        if perm_dispatch(m) > 0:
            return m
    raise ValueError("could not sample a matrix with a nonzero permanent")
