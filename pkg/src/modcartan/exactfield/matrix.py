"""Immutable sparse matrices over F_p and subspaces given by RREF bases."""
from __future__ import annotations

from typing import Iterable

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionError
from . import elim
from .field import PrimeField, as_field, check_same_field


class FpMatrix:
    """A ``rows x cols`` matrix over F_p, stored as CSR with entries in [0, p).

    Duplicate triplets are summed on construction, so the stored triplet list
    never repeats a position. Instances are treated as immutable.
    """

    __slots__ = ("field", "_csr")

    def __init__(self, field, csr: sp.csr_matrix):
        self.field = as_field(field)
        self._csr = elim.as_csr(csr, self.field.p)

    # construction ---------------------------------------------------------
    @classmethod
    def from_triplets(cls, field, shape, rows, cols, vals) -> "FpMatrix":
        f = as_field(field)
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.int64) % f.p
        return cls(f, sp.csr_matrix((vals, (rows, cols)), shape=shape, dtype=np.int64))

    @classmethod
    def from_dense(cls, field, array) -> "FpMatrix":
        f = as_field(field)
        arr = np.asarray(array, dtype=object)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        arr = np.array([[int(x) % f.p for x in row] for row in arr], dtype=np.int64).reshape(arr.shape)
        return cls(f, sp.csr_matrix(arr, dtype=np.int64))

    @classmethod
    def from_rows(cls, field, ncols: int, rows: Iterable[dict]) -> "FpMatrix":
        r, c, v = [], [], []
        n = 0
        for i, row in enumerate(rows):
            for k, val in row.items():
                r.append(i)
                c.append(k)
                v.append(val)
            n = i + 1
        return cls.from_triplets(field, (n, ncols), r, c, v)

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "FpMatrix":
        return cls(field, sp.csr_matrix((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n: int) -> "FpMatrix":
        return cls(field, sp.identity(n, dtype=np.int64, format="csr"))

    @classmethod
    def from_scipy(cls, field, mat) -> "FpMatrix":
        return cls(field, sp.csr_matrix(mat, dtype=np.int64))

    # accessors ------------------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def shape(self) -> tuple[int, int]:
        return self._csr.shape

    @property
    def rows(self) -> int:
        return self._csr.shape[0]

    @property
    def cols(self) -> int:
        return self._csr.shape[1]

    @property
    def nnz(self) -> int:
        return self._csr.nnz

    @property
    def density(self) -> float:
        m, n = self.shape
        return self.nnz / (m * n) if m and n else 0.0

    @property
    def csr(self) -> sp.csr_matrix:
        return self._csr.copy()

    def to_dense(self) -> np.ndarray:
        return self._csr.toarray().astype(np.int64)

    def triplets(self) -> list[tuple[int, int, int]]:
        coo = self._csr.tocoo()
        trip = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        return trip

    def row(self, i: int) -> dict[int, int]:
        s, e = self._csr.indptr[i], self._csr.indptr[i + 1]
        return dict(zip(self._csr.indices[s:e].tolist(), self._csr.data[s:e].tolist()))

    def __getitem__(self, key) -> "FpMatrix":
        sub = self._csr[key]
        if not sp.issparse(sub):
            raise TypeError("use slices or index arrays, not scalar indices")
        return FpMatrix(self.field, sub)

    # algebra --------------------------------------------------------------
    def _check(self, other: "FpMatrix") -> None:
        check_same_field(self.p, other.p)

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            self._check(other)
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return FpMatrix(self.field, _spmul_mod(self._csr, other._csr, self.p))
        vec = np.asarray(other, dtype=np.int64)
        if vec.shape[0] != self.cols:
            raise DimensionError(f"cannot apply {self.shape} to vector of length {vec.shape[0]}")
        return _spmul_mod(self._csr, sp.csr_matrix(vec.reshape(len(vec), -1)), self.p).toarray().reshape(
            (self.rows,) + vec.shape[1:]
        )

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return FpMatrix(self.field, self._csr + other._csr)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return FpMatrix(self.field, self._csr + (self.p - 1) * other._csr)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.field, (self.p - 1) * self._csr)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.field, (int(c) % self.p) * self._csr)

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.field, self._csr.T.tocsr())

    def vstack(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return FpMatrix(self.field, sp.vstack([self._csr, other._csr], format="csr"))

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and (self._csr != other._csr).nnz == 0

    __hash__ = None

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.shape}, nnz={self.nnz})"

    # elimination ----------------------------------------------------------
    def rank(self) -> int:
        return elim.rank(self._csr, self.p)

    def rref(self) -> tuple["FpMatrix", list[int]]:
        """Nonzero rows of the reduced row-echelon form and the pivot columns."""
        mat, piv = elim.rref(self._csr, self.p)
        return FpMatrix(self.field, mat), piv.tolist()

    def row_space(self) -> "SubspaceBasis":
        mat, _ = self.rref()
        return SubspaceBasis(self.cols, mat)

    def kernel_basis(self) -> "SubspaceBasis":
        return SubspaceBasis(self.cols, FpMatrix(self.field, elim.nullspace_rref(self._csr, self.p)))


def _spmul_mod(A: sp.csr_matrix, B: sp.csr_matrix, p: int) -> sp.csr_matrix:
    # reduce partial sums often enough to stay far from int64 overflow
    bound = (p - 1) ** 2
    inner = A.shape[1]
    if inner * bound < 2**62:
        C = (A @ B).tocsr()
        C.data %= p
        return C
    out = sp.csr_matrix((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, 2**62 // bound)
    for s in range(0, inner, step):
        part = (A[:, s:s + step] @ B[s:s + step]).tocsr()
        part.data %= p
        out = out + part
        out.data %= p
    return out


class SubspaceBasis:
    """A subspace of F_p^n given by a basis in reduced row-echelon form."""

    __slots__ = ("ambient_dim", "basis_rows")

    def __init__(self, ambient_dim: int, basis_rows: FpMatrix):
        if basis_rows.cols != ambient_dim:
            raise DimensionError("basis rows must live in the ambient space")
        self.ambient_dim = ambient_dim
        self.basis_rows = basis_rows

    @classmethod
    def span(cls, vectors: FpMatrix) -> "SubspaceBasis":
        return vectors.row_space()

    @property
    def field(self) -> PrimeField:
        return self.basis_rows.field

    @property
    def dim(self) -> int:
        return self.basis_rows.rows

    def __len__(self) -> int:
        return self.dim

    def vectors(self) -> np.ndarray:
        return self.basis_rows.to_dense()

    def contains(self, vec) -> bool:
        v = FpMatrix.from_dense(self.field, np.asarray(vec).reshape(1, -1))
        return self.basis_rows.vstack(v).rank() == self.dim

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim}, p={self.field.p})"


def rank(M: FpMatrix) -> int:
    return M.rank()


def kernel_basis(M: FpMatrix) -> SubspaceBasis:
    return M.kernel_basis()


def quotient_dim(ambient_dim: int, relations: FpMatrix) -> int:
    """Dimension of F_p^ambient_dim modulo the row span of ``relations``."""
    if relations.cols != ambient_dim:
        raise DimensionError(
            f"relations have {relations.cols} columns, ambient dimension is {ambient_dim}"
        )
    return ambient_dim - relations.rank()


def solve(M: FpMatrix, b) -> np.ndarray | None:
    """One solution of ``M x = b``, or ``None`` if the system is inconsistent."""
    b = np.asarray(b, dtype=np.int64).reshape(-1) % M.p
    if b.shape[0] != M.rows:
        raise DimensionError(f"right-hand side has length {b.shape[0]}, expected {M.rows}")
    aug = sp.hstack([M.csr, sp.csr_matrix(((-b) % M.p).reshape(-1, 1))], format="csr")
    K = FpMatrix(M.field, aug).kernel_basis().basis_rows
    for r in range(K.rows):
        row = K.row(r)
        last = row.get(M.cols)
        if last:
            inv = M.field.inv(last)
            x = np.zeros(M.cols, dtype=np.int64)
            for c, v in row.items():
                if c < M.cols:
                    x[c] = v * inv % M.p
            return x
    return None
