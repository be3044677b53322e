"""The A-multilinear Chevalley–Eilenberg complex C_A^•(L, A) in degrees 0..2.

A cochain is recorded by its values on the A-basis D_1..D_r of L: C^0 = A,
C^1 = A^r (slot k at offset k * dim A), C^2 = A^(r choose 2) with slots
ordered as pairs i < j.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .comalg import CommAlgebra, tensor
from .errors import PreconditionError, ValidationError
from .exactfield import FpMatrix
from .invariants import Report, ce_homology, hom_condition
from .liealg import AModuleLie, current


@dataclass
class ACochainComplex:
    source: AModuleLie
    d0: FpMatrix
    d1: FpMatrix

    @property
    def r(self) -> int:
        return self.source.r

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.d0.cols, self.d0.rows, self.d1.rows

    def composite_is_zero(self) -> bool:
        return (self.d1 @ self.d0).is_zero()


def _mult_matrix(A: CommAlgebra, coeff: np.ndarray) -> np.ndarray:
    """Matrix of f -> c f for c in A."""
    return np.einsum("a,abc->cb", np.asarray(coeff) % A.p, A.tensor()) % A.p


def build_complex(LA: AModuleLie) -> ACochainComplex:
    """d0(a)(D) = D(a);  d1(φ)(D_i, D_j) = D_i φ(D_j) - D_j φ(D_i) - φ([D_i, D_j])."""
    try:
        LA.check_compatibility()
    except ValidationError as exc:
        raise PreconditionError(f"not a Lie–Rinehart pair: {exc}") from exc
    A, r, p = LA.algebra, LA.r, LA.p
    d = A.dim
    gens = LA.a_basis()
    I = np.eye(d, dtype=np.int64)
    Dm = [np.stack([LA.apply(gens[k], I[:, a]) for a in range(d)], axis=1) if d else np.zeros((0, 0), np.int64) for k in range(r)]
    d0 = np.vstack(Dm) if r else np.zeros((0, d), dtype=np.int64)
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    sf = LA.structure_functions()
    d1 = np.zeros((len(pairs) * d, r * d), dtype=np.int64)
    for w, (i, j) in enumerate(pairs):
        rows = slice(w * d, (w + 1) * d)
        d1[rows, j * d:(j + 1) * d] += Dm[i]
        d1[rows, i * d:(i + 1) * d] -= Dm[j]
        for k, c in enumerate(sf[(i, j)]):
            if c.any():
                d1[rows, k * d:(k + 1) * d] -= _mult_matrix(A, c)
    return ACochainComplex(LA, FpMatrix.from_dense(A.field, d0 % p) if d0.size else FpMatrix.zeros(A.field, r * d, d),
                           FpMatrix.from_dense(A.field, d1 % p) if d1.size else FpMatrix.zeros(A.field, len(pairs) * d, r * d))


def cohomology_dims(C: ACochainComplex) -> tuple[int, int]:
    c0, c1, _ = C.dims
    r0 = C.d0.rank()
    r1 = C.d1.rank()
    return c0 - r0, c1 - r1 - r0


def skryabin_check(LA: AModuleLie) -> Report:
    """H2(L, K) ≅ H^1(C_A) when L has rank 1 over A; H2(L, K) = 0 for higher rank."""
    if not hom_condition(LA):
        raise PreconditionError("Hom_A(L, A) is not spanned by the functionals a'·d(a)")
    h2 = ce_homology(LA.lie).dim_h2
    params = {"lie": LA.lie.name, "rank": LA.r, "p": LA.p}
    if LA.r == 1:
        _, h1 = cohomology_dims(build_complex(LA))
        return Report("skryabin", params, lhs=h2, rhs=h1, dims={"h2": h2, "h1_CA": h1})
    return Report("skryabin", params, lhs=h2, rhs=0, dims={"h2": h2})


def tensor_pair(LA: AModuleLie, B: CommAlgebra) -> AModuleLie:
    """(L⊗B, A⊗B) with A⊗B-basis D_k⊗1 acting as D_k ⊗ id."""
    big = current(LA.lie, B)
    AB = tensor(LA.algebra, B)
    IB = np.eye(B.dim, dtype=np.int64)
    anchor = tuple(np.kron(D, IB) % LA.p for D in LA.anchor)
    labels = tuple(f"{g}⊗1" for g in LA.generator_labels)
    return AModuleLie(big, AB, anchor, labels)


def lemma_check(LA: AModuleLie, B: CommAlgebra) -> Report:
    """dim H^n(C_(A⊗B)(L⊗B, A⊗B)) = dim H^n(C_A(L, A)) · dim B for n = 0, 1."""
    small = cohomology_dims(build_complex(LA))
    big = cohomology_dims(build_complex(tensor_pair(LA, B)))
    rhs = [h * B.dim for h in small]
    params = {"lie": LA.lie.name, "algebra": B.name, "p": LA.p}
    rep = Report("lemma", params, lhs=list(big), rhs=rhs, dims={"small": list(small), "big": list(big), "dim_B": B.dim})
    return rep
