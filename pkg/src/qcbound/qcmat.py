"""Polynomial parity-check matrices, their weight matrices, binary expansion,
syndrome checks, and the qcmat text format for standard exponent tables."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .ring import PolyResidue, PolyVector, circulant_expand


class QcmatParseError(ValueError):
    """Raised on a malformed qcmat file; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class CodeInfo:
    standard: str | None = None
    rate: Fraction | None = None
    k: int | None = None
    punctured: frozenset[int] = frozenset()
    extra: dict[str, str] = field(default_factory=dict)


class ExponentTable:
    """J x L grid of shift-exponent lists; the published form of standard matrices."""

    def __init__(self, n: int, cells: Sequence[Sequence[Sequence[int]]]):
        if n <= 0:
            raise ValueError("modulus order must be positive")
        self.n = n
        self.cells = tuple(tuple(tuple(sorted(c)) for c in row) for row in cells)
        self.rows = len(self.cells)
        self.cols = len(self.cells[0]) if self.rows else 0
        for row in self.cells:
            if len(row) != self.cols:
                raise ValueError("ragged exponent table")
            for cell in row:
                if len(set(cell)) != len(cell):
                    raise ValueError("duplicate exponent in a cell")
                for e in cell:
                    if not 0 <= e < n:
                        raise ValueError(f"exponent {e} outside [0, {n})")

    def to_matrix(self) -> "PolyMatrix":
        return PolyMatrix(
            [[PolyResidue.from_exponents(cell, self.n) for cell in row] for row in self.cells]
        )

    def scale(self, n_target: int, mode: str) -> "ExponentTable":
        return scale_exponents(self, n_target, mode)


def scale_exponents(base: ExponentTable, n_target: int, mode: str) -> ExponentTable:
    """Derive a smaller-ring table by modulo or proportional shift scaling.

    Only monomial-or-empty cells are supported; scaling is defined on shift
    values, not on general weight-2+ cells.
    """
    if n_target <= 0:
        raise ValueError("target modulus order must be positive")
    if n_target > base.n:
        raise ValueError("target modulus order exceeds the base")
    if mode not in ("modulo", "proportional"):
        raise ValueError(f"unknown scaling mode {mode!r}")
    out: list[list[tuple[int, ...]]] = []
    for row in base.cells:
        new_row: list[tuple[int, ...]] = []
        for cell in row:
            if len(cell) > 1:
                raise ValueError("scaling is unsupported for cells of weight 2 or more")
            if not cell:
                new_row.append(())
            else:
                s = cell[0]
                t = s % n_target if mode == "modulo" else (s * n_target) // base.n
                new_row.append((t,))
        out.append(new_row)
    return ExponentTable(n_target, out)


class PolyMatrix:
    """The J x L parity-check matrix H(x) over GF(2)[x]/(x^N - 1)."""

    def __init__(self, entries: Sequence[Sequence[PolyResidue]]):
        self.entries = tuple(tuple(row) for row in entries)
        if not self.entries or not self.entries[0]:
            raise ValueError("empty matrix")
        self.rows = len(self.entries)
        self.cols = len(self.entries[0])
        self.n = self.entries[0][0].n
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.n != self.n:
                    raise ValueError("entries must share one modulus order")

    @property
    def block_rows(self) -> int:
        return self.rows * self.n

    @property
    def block_cols(self) -> int:
        return self.cols * self.n

    def entry(self, j: int, i: int) -> PolyResidue:
        return self.entries[j][i]

    def column(self, i: int) -> tuple[PolyResidue, ...]:
        return tuple(self.entries[j][i] for j in range(self.rows))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[j][i] for i in col_idx] for j in row_idx])

    def weight_matrix(self) -> "WeightMatrix":
        return WeightMatrix([[e.weight for e in row] for row in self.entries])

    def to_exponent_table(self) -> ExponentTable:
        return ExponentTable(self.n, [[e.exponents() for e in row] for row in self.entries])

    def expand(self) -> "BinaryMatrix":
        """Full (J*N) x (L*N) binary matrix with circulant blocks."""
        n = self.n
        masks = [0] * self.block_rows
        for j, row in enumerate(self.entries):
            for i, e in enumerate(row):
                for s in range(n):
                    if e.bits >> s & 1:
                        # exponent s puts a 1 at block row (s+t) % n, block column t
                        for t in range(n):
                            masks[j * n + (s + t) % n] |= 1 << (i * n + t)
        return BinaryMatrix(masks, self.block_cols)

    def poly_syndrome(self, c: PolyVector) -> tuple[PolyResidue, ...]:
        """H(x) applied to a length-L polynomial vector."""
        if len(c) != self.cols:
            raise ValueError("vector length must equal the column count")
        out = []
        for row in self.entries:
            acc = PolyResidue.zero(self.n)
            for h, ci in zip(row, c):
                acc = acc + h * ci
            out.append(acc)
        return tuple(out)


class WeightMatrix:
    """J x L nonnegative-integer protomatrix A = wt(H(x))."""

    def __init__(self, entries: Sequence[Sequence[int]]):
        self.entries = tuple(tuple(int(v) for v in row) for row in entries)
        if not self.entries or not self.entries[0]:
            raise ValueError("empty matrix")
        self.rows = len(self.entries)
        self.cols = len(self.entries[0])
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for v in row:
                if v < 0:
                    raise ValueError("entries must be nonnegative")

    def __getitem__(self, ji: tuple[int, int]) -> int:
        return self.entries[ji[0]][ji[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightMatrix) and self.entries == other.entries

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(self.entries[j][i] for j in range(self.rows))

    def digest(self) -> str:
        """Stable content hash used to guard checkpoint resumption."""
        canon = f"{self.rows} {self.cols};" + ";".join(
            ",".join(str(v) for v in row) for row in self.entries
        )
        return hashlib.sha256(canon.encode()).hexdigest()


class BinaryMatrix:
    """Sparse binary matrix held as per-row column bitmasks."""

    def __init__(self, row_masks: Sequence[int], ncols: int):
        self.row_masks = list(row_masks)
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.row_masks)

    @property
    def nnz(self) -> int:
        return sum(m.bit_count() for m in self.row_masks)

    def syndrome(self, c: int | Sequence[int]) -> int:
        """GF(2) product H * c^T; accepts a bit integer or a 0/1 sequence."""
        if not isinstance(c, int):
            seq = list(c)
            if len(seq) != self.ncols:
                raise ValueError("codeword length must equal the column count")
            c = sum(1 << i for i, v in enumerate(seq) if v)
        elif c >> self.ncols:
            raise ValueError("codeword length must equal the column count")
        out = 0
        for r, mask in enumerate(self.row_masks):
            if (mask & c).bit_count() & 1:
                out |= 1 << r
        return out

    def is_codeword(self, c: int | Sequence[int]) -> bool:
        return self.syndrome(c) == 0

    def toarray(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for r, mask in enumerate(self.row_masks):
            for j in range(self.ncols):
                if mask >> j & 1:
                    out[r, j] = 1
        return out

    def to_alist(self) -> str:
        """Conventional alist rendering (1-based indices, zero-padded lists)."""
        cols = [[] for _ in range(self.ncols)]
        rows = []
        for r, mask in enumerate(self.row_masks):
            members = [j for j in range(self.ncols) if mask >> j & 1]
            rows.append(members)
            for j in members:
                cols[j].append(r)
        max_col = max((len(c) for c in cols), default=0)
        max_row = max((len(r) for r in rows), default=0)
        lines = [
            f"{self.ncols} {self.nrows}",
            f"{max_col} {max_row}",
            " ".join(str(len(c)) for c in cols),
            " ".join(str(len(r)) for r in rows),
        ]
        for c in cols:
            padded = [v + 1 for v in c] + [0] * (max_col - len(c))
            lines.append(" ".join(str(v) for v in padded))
        for r in rows:
            padded = [v + 1 for v in r] + [0] * (max_row - len(r))
            lines.append(" ".join(str(v) for v in padded))
        return "\n".join(lines) + "\n"


_KNOWN_KEYS = ("standard", "rate", "k", "punctured")


def parse_qcmat(text: str) -> tuple[PolyMatrix, CodeInfo]:
    """Parse the qcmat text format; see render_qcmat for the emitter."""
    lines = text.splitlines()
    header_no = None
    n = j_rows = l_cols = None
    meta: dict[str, str] = {}
    grid: list[list[PolyResidue]] = []
    for idx, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body:
                key, _, value = body.partition(" ")
                meta[key] = value.strip()
            continue
        if header_no is None:
            parts = line.split()
            fields = {}
            for part in parts:
                key, eq, value = part.partition("=")
                if eq != "=" or key not in ("N", "J", "L"):
                    raise QcmatParseError(idx, f"malformed header field {part!r}")
                try:
                    fields[key] = int(value)
                except ValueError:
                    raise QcmatParseError(idx, f"non-integer header value {part!r}") from None
            if sorted(fields) != ["J", "L", "N"]:
                raise QcmatParseError(idx, "header must define N=, J= and L=")
            n, j_rows, l_cols = fields["N"], fields["J"], fields["L"]
            if n <= 0 or j_rows <= 0 or l_cols <= 0:
                raise QcmatParseError(idx, "N, J and L must be positive")
            header_no = idx
            continue
        cells = line.split()
        if len(cells) != l_cols:
            raise QcmatParseError(idx, f"expected {l_cols} cells, found {len(cells)}")
        row = []
        for cell in cells:
            try:
                row.append(PolyResidue.parse(cell, n))
            except ValueError as exc:
                raise QcmatParseError(idx, f"bad cell {cell!r}: {exc}") from None
        grid.append(row)
    if header_no is None:
        raise QcmatParseError(len(lines) or 1, "missing header line")
    if len(grid) != j_rows:
        raise QcmatParseError(len(lines) or 1, f"expected {j_rows} rows, found {len(grid)}")
    matrix = PolyMatrix(grid)

    rate = None
    if "rate" in meta:
        num, _, den = meta["rate"].partition("/")
        rate = Fraction(int(num), int(den)) if den else Fraction(int(num))
    k = int(meta["k"]) if "k" in meta else None
    punctured = frozenset()
    if meta.get("punctured"):
        punctured = frozenset(int(t) for t in meta["punctured"].split(","))
        bad = [i for i in punctured if not 0 <= i < l_cols]
        if bad:
            raise QcmatParseError(header_no, f"punctured column {bad[0]} outside [0, {l_cols})")
    info = CodeInfo(
        standard=meta.get("standard"),
        rate=rate,
        k=k,
        punctured=punctured,
        extra={key: v for key, v in meta.items() if key not in _KNOWN_KEYS},
    )
    return matrix, info


def render_qcmat(matrix: PolyMatrix, info: CodeInfo | None = None) -> str:
    lines = [f"N={matrix.n} J={matrix.rows} L={matrix.cols}"]
    if info is not None:
        if info.standard:
            lines.append(f"#standard {info.standard}")
        if info.rate is not None:
            lines.append(f"#rate {info.rate.numerator}/{info.rate.denominator}")
        if info.k is not None:
            lines.append(f"#k {info.k}")
        if info.punctured:
            lines.append("#punctured " + ",".join(str(i) for i in sorted(info.punctured)))
        for key, value in info.extra.items():
            lines.append(f"#{key} {value}")
    for row in matrix.entries:
        lines.append(" ".join(e.render() for e in row))
    return "\n".join(lines) + "\n"


def expand_codeword(c: PolyVector) -> int:
    """Binary image of a polynomial vector, matching expand()'s column order."""
    return c.to_bits()


def load_qcmat(path) -> tuple[PolyMatrix, CodeInfo]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_qcmat(fh.read())
