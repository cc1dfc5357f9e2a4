"""Dense Kronecker-structured linear algebra.

Nearest Kronecker products, Kronecker rank, block rearrangements, tensor
unfoldings, multilinear rank and HOSVD on top of a self-contained Jacobi SVD.
Hot loops run in a Cython extension when it is built, else in numpy.
"""
from . import _backend
from .dense import delinearize, fro_norm, inf_norm, linearize, sgn, sym, unvec, vec
from .errors import (
    ContractError,
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    FormatError,
    KronkitError,
    ParseError,
    RangeError,
    ShapeError,
    SizeError,
)
from .kron import KronOperator, blockmat, blockvec, kron, kron_matvec
from .nkp import KronTermList, kron_rank, kron_spectrum, kron_sum_approx, nearest_kron
from .rearrange import BlockShape, matrix_to_tensor4, rearrange, tensor4_to_matrix, unrearrange
from .svd import (
    SINGULAR,
    RankTolerance,
    SvdResult,
    cond2,
    dominant_triplet,
    jacobi_svd,
    numeric_rank,
    truncated_svd,
)
from .unfold import HosvdResult, ModeUnfolding, hosvd, mode_fold, mode_mult, mode_unfold, multilinear_rank

__version__ = "0.1.0"

backend = _backend.name
set_backend = _backend.set_backend

__all__ = [
    "BlockShape", "ContractError", "ConvergenceError", "DegenerateInputError", "DomainError",
    "FormatError", "HosvdResult", "KronOperator", "KronTermList", "KronkitError", "ModeUnfolding",
    "ParseError", "RangeError", "RankTolerance", "SINGULAR", "ShapeError", "SizeError", "SvdResult",
    "backend", "blockmat", "blockvec", "cond2", "delinearize", "dominant_triplet", "fro_norm",
    "hosvd", "inf_norm", "jacobi_svd", "kron", "kron_matvec", "kron_rank", "kron_spectrum",
    "kron_sum_approx", "linearize", "matrix_to_tensor4", "mode_fold", "mode_mult", "mode_unfold",
    "multilinear_rank", "nearest_kron", "numeric_rank", "rearrange", "set_backend", "sgn", "sym",
    "tensor4_to_matrix", "truncated_svd", "unrearrange", "unvec", "vec",
]
