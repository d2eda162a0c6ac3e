"""Explicit low-weight codewords from polynomial permanents of (J+1)-column
submatrices, plus the N-dependent refined bound they induce.

For a subset S, placing perm_poly(H_{S minus i}(x)) at position i gives a
vector whose syndrome row j is the permanent of a matrix with row j doubled,
which vanishes in characteristic 2. Component weights are bounded by the
corresponding integer permanents, so the construction never exceeds the
weight-matrix bound on the same subset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .permanent import perm_poly
from .qcmat import PolyMatrix
from .ring import PolyResidue, PolyVector
from .search import BoundResult, run_chunked
from .subsets import SubsetCursor


@dataclass(frozen=True)
class ConstructedCodeword:
    subset: tuple[int, ...]
    components: PolyVector
    weight: int
    verified: bool


def cramer_codeword(h: PolyMatrix, members) -> ConstructedCodeword | None:
    """Codeword supported on S with components perm_poly(H_{S minus i}(x)).

    Returns None when every component is the zero residue.
    """
    members = tuple(members)
    if len(members) != h.rows + 1:
        raise ValueError("subset size must be J+1")
    zero = PolyResidue.zero(h.n)
    row_idx = tuple(range(h.rows))
    parts = {i: perm_poly(h.submatrix(row_idx, [c for c in members if c != i])) for i in members}
    if not any(parts.values()):
        return None
    components = PolyVector(parts.get(i, zero) for i in range(h.cols))
    syndrome = h.poly_syndrome(components)
    verified = not any(syndrome)
    if not verified:
        raise AssertionError("construction produced a vector outside the null space")
    return ConstructedCodeword(members, components, components.weight, verified)


class CramerBoundKernel:
    """Per-subset kernel reporting constructed-codeword weights; picklable."""

    form = "cramer"

    def __init__(self, h: PolyMatrix):
        if h.rows >= h.cols:
            raise ValueError("the bound requires J < L")
        self.n = h.n
        self.cells = tuple(tuple(e.exponents() for e in row) for row in h.entries)
        self.universe = h.cols
        self.subset_size = h.rows + 1

    def digest(self) -> str:
        from hashlib import sha256

        canon = f"cramer|{self.n}|{self.cells}"
        return sha256(canon.encode()).hexdigest()

    def _matrix(self) -> PolyMatrix:
        return PolyMatrix(
            [[PolyResidue.from_exponents(c, self.n) for c in row] for row in self.cells]
        )

    def evaluate_range(self, start: int, end: int) -> tuple[int | None, int | None, int]:
        h = self._matrix()
        cursor = SubsetCursor.at(start, self.universe, self.subset_size)
        best: int | None = None
        best_rank: int | None = None
        for r in range(start, end):
            cw = cramer_codeword(h, cursor.members)
            # zero constructions count as evaluated but yield no candidate
            if cw is not None and (best is None or cw.weight < best):
                best, best_rank = cw.weight, r
            if r + 1 < end:
                cursor.advance()
        return best, best_rank, end - start


def refined_bound(h: PolyMatrix, subset_budget: int | None = None, **run_kwargs) -> BoundResult:
    """Minimum constructed-codeword weight over (J+1)-column subsets.

    A budget evaluates only the first subset_budget ranks and reports a
    partial result; the scheduler, chunking, and checkpoint behavior are
    shared with the weight-matrix bound.
    """
    kernel = CramerBoundKernel(h)
    return run_chunked(kernel, limit=subset_budget, **run_kwargs)


def witness_record(cw: ConstructedCodeword, h: PolyMatrix) -> dict:
    """JSON-ready description sufficient for independent re-verification."""
    return {
        "n": h.n,
        "columns": h.cols,
        "subset": list(cw.subset),
        "components": {str(i): list(cw.components[i].exponents()) for i in cw.subset},
        "weight": cw.weight,
    }


def witness_to_json(cw: ConstructedCodeword, h: PolyMatrix) -> str:
    return json.dumps(witness_record(cw, h), indent=2) + "\n"


def load_witness(text: str) -> dict:
    data = json.loads(text)
    for key in ("n", "columns", "subset", "components", "weight"):
        if key not in data:
            raise ValueError(f"witness record is missing {key!r}")
    return data


def witness_vector(data: dict) -> PolyVector:
    n = data["n"]
    cols = data["columns"]
    zero = PolyResidue.zero(n)
    parts = [zero] * cols
    for key, exps in data["components"].items():
        parts[int(key)] = PolyResidue.from_exponents(exps, n)
    return PolyVector(parts)


def verify_witness(h: PolyMatrix, data: dict) -> bool:
    """Re-check a witness record against a matrix: ring syndrome and weight."""
    if data["n"] != h.n or data["columns"] != h.cols:
        return False
    vector = witness_vector(data)
    if vector.weight != data["weight"]:
        return False
    return not any(h.poly_syndrome(vector))
