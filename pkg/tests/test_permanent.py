"""Exact permanent engines against a brute-force oracle and each other."""

import math
import random

import pytest

from oracles import oracle_permanent
from conftest import random_weight_matrix
from qcbound import (
    ENGINES,
    IntMatrix,
    MatrixView,
    PermanentOverflowError,
    PolyResidue,
    VALUE_CAP,
    perm_brute,
    perm_dispatch,
    perm_poly,
    perm_recursive,
    perm_ryser,
    perm_ryser_nw,
)
from qcbound.permanent import perm_kallman, random_benchmark_matrix

GENERAL_ENGINES = (perm_brute, perm_recursive, perm_ryser, perm_ryser_nw, perm_dispatch)


def test_order_zero_and_one():
    for engine in GENERAL_ENGINES:
        assert engine(IntMatrix([])) == 1  # empty product
        assert engine(IntMatrix([[7]])) == 7
        assert engine(IntMatrix([[0]])) == 0


def test_known_small_values():
    m = IntMatrix([[1, 2], [3, 4]])
    for engine in GENERAL_ENGINES:
        assert engine(m) == 1 * 4 + 2 * 3
    m3 = IntMatrix([[1, 1, 0], [1, 1, 1], [0, 1, 1]])
    for engine in GENERAL_ENGINES:
        assert engine(m3) == 3


def test_engines_match_oracle_on_random_matrices():
    rng = random.Random(2024)
    for trial in range(200):
        n = rng.randint(1, 6)
        rows = [[rng.randint(0, 4) if rng.random() < 0.6 else 0 for _ in range(n)] for _ in range(n)]
        want = oracle_permanent(rows)
        m = IntMatrix(rows)
        for engine in GENERAL_ENGINES:
            assert engine(m) == want, (engine.__name__, rows)


def test_all_ones_gives_factorial():
    for n in range(1, 13):
        m = IntMatrix([[1] * n for _ in range(n)])
        assert perm_ryser(m) == math.factorial(n)
        assert perm_ryser_nw(m) == math.factorial(n)
        if n <= 9:
            assert perm_recursive(m) == math.factorial(n)
        if n <= 8:
            assert perm_brute(m) == math.factorial(n)


def test_permutation_and_transpose_invariance():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(2, 6)
        rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
        base = perm_ryser_nw(IntMatrix(rows))
        perm_rows = rng.sample(range(n), n)
        perm_cols = rng.sample(range(n), n)
        shuffled = [[rows[perm_rows[i]][perm_cols[j]] for j in range(n)] for i in range(n)]
        transposed = [[rows[j][i] for j in range(n)] for i in range(n)]
        assert perm_ryser_nw(IntMatrix(shuffled)) == base
        assert perm_recursive(IntMatrix(transposed)) == base


def test_zero_row_or_column_kills_permanent():
    rng = random.Random(12)
    for _ in range(20):
        n = rng.randint(2, 6)
        rows = [[rng.randint(1, 3) for _ in range(n)] for _ in range(n)]
        kill = rng.randrange(n)
        by_row = [list(r) for r in rows]
        by_row[kill] = [0] * n
        by_col = [list(r) for r in rows]
        for r in by_col:
            r[kill] = 0
        for engine in GENERAL_ENGINES:
            assert engine(IntMatrix(by_row)) == 0
            assert engine(IntMatrix(by_col)) == 0


def test_engine_order_limits():
    big = IntMatrix([[1] * 11 for _ in range(11)])
    with pytest.raises(ValueError):
        perm_brute(big)
    huge = IntMatrix([[0] * 64 for _ in range(64)])
    with pytest.raises(ValueError):
        perm_ryser(huge)
    with pytest.raises(ValueError):
        perm_ryser_nw(huge)
    with pytest.raises(ValueError):
        perm_brute(IntMatrix([[1, 2], [3, 4], [5, 6]]))


def test_non_square_rejected():
    rect = IntMatrix([[1, 2, 3], [4, 5, 6]])
    for engine in GENERAL_ENGINES:
        with pytest.raises(ValueError):
            engine(rect)


def test_kallman_slot_is_declared_but_not_implemented():
    assert ENGINES["kallman"] is perm_kallman
    with pytest.raises(NotImplementedError):
        perm_kallman(IntMatrix([[1]]))


def test_overflow_is_reported_not_wrapped():
    n = 4
    huge = 1 << 45
    m = IntMatrix([[huge] * n for _ in range(n)])
    assert math.factorial(n) * huge**n > VALUE_CAP
    for engine in (perm_recursive, perm_ryser, perm_ryser_nw, perm_dispatch):
        with pytest.raises(PermanentOverflowError):
            engine(m)
    # just under the cap is fine
    ok = IntMatrix([[1 << 30] * 4 for _ in range(4)])
    assert perm_ryser_nw(ok) == math.factorial(4) * (1 << 120)


def test_dispatch_handles_orders_above_ryser_range():
    n = 64
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    assert perm_dispatch(IntMatrix(rows)) == 1


def test_matrix_view_masks_select_submatrix():
    m = IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    view = MatrixView(m)
    assert view.order == 3 and view.is_square
    view.set_rows((0, 2))
    view.set_cols((1, 2))
    assert view.active_rows() == [0, 2]
    assert view.active_cols() == [1, 2]
    assert view.dense() == [[2, 3], [8, 9]]
    assert perm_ryser_nw(view) == 2 * 9 + 3 * 8
    clone = view.clone()
    clone.set_rows((1,))
    assert view.active_rows() == [0, 2]
    assert view.active_nnz() == 4


def test_view_permanent_equals_dense_submatrix():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(3, 7)
        rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
        k = rng.randint(1, n - 1)
        rsel = tuple(sorted(rng.sample(range(n), k)))
        csel = tuple(sorted(rng.sample(range(n), k)))
        view = MatrixView(IntMatrix(rows))
        view.set_rows(rsel)
        view.set_cols(csel)
        sub = [[rows[i][j] for j in csel] for i in rsel]
        want = oracle_permanent(sub)
        assert perm_recursive(view) == want
        assert perm_ryser_nw(view) == want


def test_perm_poly_reduces_to_integer_permanent_mod2():
    rng = random.Random(9)
    from qcbound import PolyMatrix

    for _ in range(60):
        n = 1  # residues mod x^1 - 1 are plain GF(2) scalars
        k = rng.randint(1, 5)
        cells = [[PolyResidue(n, rng.randint(0, 1)) for _ in range(k)] for _ in range(k)]
        h = PolyMatrix(cells)
        ints = [[c.bits for c in row] for row in cells]
        want = oracle_permanent(ints) & 1
        got = perm_poly(h)
        assert got.bits == want


def test_perm_poly_vanishes_on_repeated_columns():
    rng = random.Random(21)
    from qcbound import PolyMatrix

    for _ in range(30):
        n = rng.randint(2, 6)
        k = rng.randint(2, 4)
        col = [PolyResidue(n, rng.randrange(1, 1 << n)) for _ in range(k)]
        cells = [
            [col[i] if j < 2 else PolyResidue(n, rng.randrange(1 << n)) for j in range(k)]
            for i in range(k)
        ]
        assert perm_poly(PolyMatrix(cells)).weight == 0


def test_perm_poly_matches_weight_parity_bound():
    # the binary weight of the polynomial permanent never exceeds the
    # integer permanent of the cell-weight matrix
    rng = random.Random(30)
    from qcbound import PolyMatrix

    for _ in range(40):
        n = rng.randint(2, 6)
        k = rng.randint(1, 4)
        cells = [
            [PolyResidue(n, rng.randrange(1 << n)) for _ in range(k)] for _ in range(k)
        ]
        weights = [[c.weight for c in row] for row in cells]
        assert perm_poly(PolyMatrix(cells)).weight <= oracle_permanent(weights)


def test_random_benchmark_matrix_is_deterministic_and_shaped():
    a = random_benchmark_matrix(9, 3, seed=42)
    b = random_benchmark_matrix(9, 3, seed=42)
    c = random_benchmark_matrix(9, 3, seed=43)
    assert a.entries == b.entries
    assert a.entries != c.entries
    for mat in (a, c):
        cols = list(zip(*mat.entries))
        assert all(sum(col) == 3 for col in cols)
        assert all(v in (0, 1) for row in mat.entries for v in row)
    assert perm_dispatch(a) > 0


def test_dispatch_matches_reference_engines():
    rng = random.Random(77)
    for _ in range(50):
        n = rng.randint(1, 8)
        rows = [[rng.randint(0, 2) if rng.random() < 0.5 else 0 for _ in range(n)] for _ in range(n)]
        m = IntMatrix(rows)
        assert perm_dispatch(m) == perm_ryser(m)
