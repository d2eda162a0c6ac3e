import io
import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).parent / "data"

HEADER = "engine,order,column_weight,seed,seconds"


def csv_text(rows):
    """Schema-conformant CSV text from (engine, order, weight, seed, seconds) tuples."""
    lines = [HEADER]
    lines += [",".join(str(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


@pytest.fixture
def real_csv_path():
    return str(DATA_DIR / "real_bench.csv")


@pytest.fixture
def synthetic_csv(tmp_path):
    """Two engines, three orders, two weights, two trials per point."""
    rows = []
    for engine, base in (("alpha", 0.001), ("beta", 0.004)):
        for order in (3, 4, 5):
            for weight in (2, 3):
                for trial in (0, 1):
                    rows.append(
                        (engine, order, weight, 100 + trial, base * order + 0.0001 * trial)
                    )
    path = tmp_path / "synthetic.csv"
    path.write_text(csv_text(rows))
    return str(path)
