from .field import GF, QQ, Mod, PrimeField, RationalField, is_prime, parse_scalar, format_scalar, primes_from
from .matrix import FieldMismatch, Mat, ShapeError, mat_kernel, mat_rank, mat_solve, rational_roots
from .poly import (
    A_VARS,
    T_VARS,
    VARIABLES,
    Interpolation,
    MultiPoly,
    poly_add,
    poly_interpolate_q,
    poly_mul,
    poly_sub,
    poly_substitute,
)

__all__ = [
    "GF", "QQ", "Mod", "PrimeField", "RationalField", "is_prime", "parse_scalar", "format_scalar",
    "primes_from", "FieldMismatch", "Mat", "ShapeError", "mat_kernel", "mat_rank", "mat_solve",
    "rational_roots", "A_VARS", "T_VARS", "VARIABLES", "Interpolation", "MultiPoly", "poly_add",
    "poly_interpolate_q", "poly_mul", "poly_sub", "poly_substitute",
]
