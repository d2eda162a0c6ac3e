"""Shared test fixtures: fixture paths and random-instance samplers."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from qcbound import PolyMatrix, PolyResidue, WeightMatrix

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


def random_weight_matrix(rng: random.Random, rows: int, cols: int, max_entry: int = 3) -> WeightMatrix:
    """Random protomatrix; half the draws are sparse, half near-dense."""
    if rng.random() < 0.5:
        grid = [
            [rng.randint(1, max_entry) if rng.random() < 0.4 else 0 for _ in range(cols)]
            for _ in range(rows)
        ]
    else:
        grid = [[rng.randint(0, max_entry) for _ in range(cols)] for _ in range(rows)]
    return WeightMatrix(grid)


def random_poly_matrix(
    rng: random.Random, rows: int, cols: int, n: int, max_cell_weight: int = 2
) -> PolyMatrix:
    """Random polynomial parity-check matrix with no all-zero column."""
    grid = [[PolyResidue.zero(n) for _ in range(cols)] for _ in range(rows)]
    for i in range(cols):
        while all(not grid[j][i] for j in range(rows)):
            for j in range(rows):
                if rng.random() < 0.55:
                    w = rng.randint(1, min(max_cell_weight, n))
                    exps = rng.sample(range(n), w)
                    grid[j][i] = PolyResidue.from_exponents(exps, n)
                else:
                    grid[j][i] = PolyResidue.zero(n)
    return PolyMatrix(grid)
