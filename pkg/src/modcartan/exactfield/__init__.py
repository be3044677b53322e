"""Exact arithmetic and linear algebra over prime fields."""
from .field import FpScalar, PrimeField, check_same_field, is_prime
from .kernels import BACKEND, available_backends
from .matrix import FpMatrix, SubspaceBasis, kernel_basis, quotient_dim, rank, solve

__all__ = [
    "BACKEND",
    "FpMatrix",
    "FpScalar",
    "PrimeField",
    "SubspaceBasis",
    "available_backends",
    "check_same_field",
    "is_prime",
    "kernel_basis",
    "quotient_dim",
    "rank",
    "solve",
]
