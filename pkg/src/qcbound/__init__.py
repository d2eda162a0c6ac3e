"""Upper bounds on the minimum distance of quasi-cyclic LDPC codes.

A quasi-cyclic parity-check matrix is stored as a small array of binary
polynomials modulo x^n - 1; each polynomial stands for an n-by-n circulant
block. The entry-weight matrix alone yields an upper bound on the code's
minimum Hamming distance, computed from exact permanents of its square
submatrices, and explicit codewords built from cofactor permanents in the
polynomial ring certify (and sometimes sharpen) that bound.
"""

from .bench import run_benchmark, write_csv
from .codewords import (
    ConstructedCodeword,
    CramerBoundKernel,
    cramer_codeword,
    load_witness,
    refined_bound,
    verify_witness,
    witness_record,
    witness_to_json,
)
from .permanent import (
    ENGINES,
    IntMatrix,
    MatrixView,
    PermanentOverflowError,
    VALUE_CAP,
    perm_brute,
    perm_dispatch,
    perm_poly,
    perm_recursive,
    perm_ryser,
    perm_ryser_nw,
)
from .qcmat import (
    BinaryMatrix,
    CodeInfo,
    ExponentTable,
    PolyMatrix,
    QcmatParseError,
    WeightMatrix,
    load_qcmat,
    parse_qcmat,
    render_qcmat,
    scale_exponents,
)
from .ring import PolyResidue, PolyVector, circulant_expand, poly_from_column
from .search import (
    BoundOverflowError,
    BoundResult,
    CheckpointError,
    CheckpointMismatchError,
    WeightBoundKernel,
    weight_bound,
    run_chunked,
    subset_term,
    subset_term_augmented,
)
from .subsets import SubsetCursor, rank, successor, unrank

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "BoundOverflowError",
    "BoundResult",
    "CheckpointError",
    "CheckpointMismatchError",
    "CodeInfo",
    "ConstructedCodeword",
    "CramerBoundKernel",
    "ENGINES",
    "ExponentTable",
    "IntMatrix",
    "MatrixView",
    "PermanentOverflowError",
    "PolyMatrix",
    "PolyResidue",
    "PolyVector",
    "QcmatParseError",
    "SubsetCursor",
    "VALUE_CAP",
    "WeightBoundKernel",
    "WeightMatrix",
    "weight_bound",
    "circulant_expand",
    "cramer_codeword",
    "load_qcmat",
    "load_witness",
    "parse_qcmat",
    "perm_brute",
    "perm_dispatch",
    "perm_poly",
    "perm_recursive",
    "perm_ryser",
    "perm_ryser_nw",
    "poly_from_column",
    "rank",
    "refined_bound",
    "render_qcmat",
    "run_benchmark",
    "run_chunked",
    "scale_exponents",
    "subset_term",
    "subset_term_augmented",
    "successor",
    "unrank",
    "verify_witness",
    "witness_record",
    "witness_to_json",
    "write_csv",
]
