"""Derivations, Kähler differentials and first cyclic homology."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import check_cap, limits
from ..exactfield import FpMatrix
from .algebra import CommAlgebra


@dataclass(frozen=True)
class DerivationBasis:
    algebra: CommAlgebra
    matrices: tuple[FpMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.matrices)

    def satisfies_leibniz(self, D: FpMatrix) -> bool:
        return leibniz_defect(self.algebra, D.to_dense()) == 0

    def closed_under_commutator(self) -> bool:
        A = self.algebra
        if not self.matrices:
            return True
        p = A.p
        dense = [D.to_dense() for D in self.matrices]
        span = FpMatrix.from_dense(A.field, np.array([D.reshape(-1) for D in dense]))
        r = span.rank()
        comms = [(X @ Y - Y @ X) % p for i, X in enumerate(dense) for Y in dense[i + 1:]]
        if not comms:
            return True
        extra = FpMatrix.from_dense(A.field, np.array([C.reshape(-1) for C in comms]))
        return span.vstack(extra).rank() == r


def leibniz_defect(A: CommAlgebra, D: np.ndarray) -> int:
    """Number of basis pairs on which D(ab) != D(a)b + aD(b); ``D[:, i]`` = D(e_i)."""
    p, T = A.p, A.tensor()
    bad = 0
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = D @ T[i, j] % p
            rhs = (D[:, i] @ T[:, j] + T[i].T @ D[:, j]) % p
            bad += int(not np.array_equal(lhs, rhs))
    return bad


def derivations(A: CommAlgebra) -> DerivationBasis:
    """All derivations of A: kernel of the Leibniz system in the unknowns D[k, i]."""
    d, p = A.dim, A.p
    rows, cols, vals = [], [], []
    r = 0

    def var(k, i):
        return k * d + i

    for i in range(d):
        for j in range(i, d):
            eq = {}
            # D(e_i e_j)_m - (D(e_i) e_j)_m - (e_i D(e_j))_m
            for l, c in A.basis_product(i, j).items():
                for m in range(d):
                    eq[(m, var(m, l))] = eq.get((m, var(m, l)), 0) + c
            for k in range(d):
                for m, c in A.basis_product(k, j).items():
                    eq[(m, var(k, i))] = eq.get((m, var(k, i)), 0) - c
                for m, c in A.basis_product(i, k).items():
                    eq[(m, var(k, j))] = eq.get((m, var(k, j)), 0) - c
            for (m, v), c in eq.items():
                if c % p:
                    rows.append(r + m)
                    cols.append(v)
                    vals.append(c)
            r += d
    system = FpMatrix.from_triplets(A.field, (r, d * d), rows, cols, vals)
    K = system.kernel_basis().vectors()
    mats = tuple(FpMatrix.from_dense(A.field, v.reshape(d, d)) for v in K)
    return DerivationBasis(A, mats)


@dataclass(frozen=True)
class Omega1Report:
    dim_omega1: int
    dim_dA: int
    dim_quotient: int


def _omega_relations(A: CommAlgebra):
    """Leibniz relations c*d(e_i e_j) - (c e_i) de_j - (c e_j) de_i in generators (c, k) -> c*d + k."""
    d = A.dim
    rows, cols, vals = [], [], []
    r = 0
    for c in range(d):
        for i in range(d):
            for j in range(i, d):
                eq = {}
                for l, v in A.basis_product(i, j).items():
                    eq[c * d + l] = eq.get(c * d + l, 0) + v
                for m, v in A.basis_product(c, i).items():
                    eq[m * d + j] = eq.get(m * d + j, 0) - v
                for m, v in A.basis_product(c, j).items():
                    eq[m * d + i] = eq.get(m * d + i, 0) - v
                for k, v in eq.items():
                    rows.append(r)
                    cols.append(k)
                    vals.append(v)
                r += 1
    return FpMatrix.from_triplets(A.field, (r, d * d), rows, cols, vals)


def kaehler_omega1(A: CommAlgebra) -> Omega1Report:
    """Dimensions of Omega^1_A, of dA inside it, and of Omega^1_A / dA."""
    d = A.dim
    check_cap(d, limits().algebra_dim, "kaehler_omega1")
    rel = _omega_relations(A)
    r_rel = rel.rank()
    # de_k = 1 * de_k expands through the unit's coordinates
    exact = [{u * d + k: c for u, c in enumerate(A.unit) if c} for k in range(d)]
    both = rel.vstack(FpMatrix.from_rows(A.field, d * d, exact))
    r_both = both.rank()
    omega = d * d - r_rel
    quotient = d * d - r_both
    return Omega1Report(dim_omega1=omega, dim_dA=omega - quotient, dim_quotient=quotient)


class CyclicComplex:
    """Total complex of the cyclic bicomplex in degrees 0..2.

    Tot2 = A⊗3 ⊕ A⊗2 ⊕ A -> Tot1 = A⊗2 ⊕ A -> Tot0 = A. Column 0 carries b,
    column 1 carries -b', horizontal maps are 1 - t then N, with
    t(a0⊗...⊗an) = (-1)^n an⊗a0⊗...⊗a(n-1).
    """

    def __init__(self, A: CommAlgebra):
        check_cap(A.dim, limits().hc1_dim, "hc1")
        self.A = A
        d = A.dim
        self.dims = (d, d * d + d, d**3 + d * d + d)
        self.d1 = self._build_d1()
        self.d2 = self._build_d2()

    def _prod(self, i, j):
        return self.A.basis_product(i, j)

    def _build_d1(self) -> FpMatrix:
        # columns index Tot1, rows index Tot0
        A, d = self.A, self.A.dim
        rows, cols, vals = [], [], []
        for a in range(d):
            for b in range(d):
                col = a * d + b
                for k, c in self._prod(a, b).items():  # a0 a1
                    rows.append(k); cols.append(col); vals.append(c)
                for k, c in self._prod(b, a).items():  # - a1 a0
                    rows.append(k); cols.append(col); vals.append(-c)
        # (1 - t) on A is zero
        return FpMatrix.from_triplets(A.field, (d, self.dims[1]), rows, cols, vals)

    def _build_d2(self) -> FpMatrix:
        A, d = self.A, self.A.dim
        off_a = d * d  # A summand inside Tot1
        rows, cols, vals = [], [], []

        def put(r, c, v):
            rows.append(r); cols.append(c); vals.append(v)

        for a in range(d):
            for b in range(d):
                for c in range(d):
                    col = (a * d + b) * d + c
                    # b(a⊗b⊗c) = ab⊗c - a⊗bc + ca⊗b
                    for k, v in self._prod(a, b).items():
                        put(k * d + c, col, v)
                    for k, v in self._prod(b, c).items():
                        put(a * d + k, col, -v)
                    for k, v in self._prod(c, a).items():
                        put(k * d + b, col, v)
        base = d**3
        for a in range(d):
            for b in range(d):
                col = base + a * d + b
                # (1 - t)(a⊗b) = a⊗b + b⊗a
                put(a * d + b, col, 1)
                put(b * d + a, col, 1)
                # -b'(a⊗b) = -ab
                for k, v in self._prod(a, b).items():
                    put(off_a + k, col, -v)
        base += d * d
        for a in range(d):
            put(off_a + a, base + a, 1)  # N = id on A
        return FpMatrix.from_triplets(A.field, (self.dims[1], self.dims[2]), rows, cols, vals)

    def composite_is_zero(self) -> bool:
        return (self.d1 @ self.d2).is_zero()

    def hc1(self) -> int:
        # rank of d2 via its transpose: rows are images of Tot2 basis vectors
        return self.dims[1] - self.d1.rank() - self.d2.T.rank()


def hc1(A: CommAlgebra) -> int:
    """dim HC_1(A) from the cyclic bicomplex."""
    return CyclicComplex(A).hc1()
