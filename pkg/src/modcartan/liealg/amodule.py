"""Lie algebras of derivations that are free modules over a commutative algebra."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..comalg import CommAlgebra
from ..errors import FieldMismatchError, ValidationError
from .algebra import LieAlgebra


@dataclass
class AModuleLie:
    """A Lie algebra L = A D_1 ⊕ ... ⊕ A D_r of derivations of A.

    Coordinates: basis vector ``k * dim A + a`` of ``lie`` is e_a D_k.
    ``anchor[k]`` is the matrix of D_k acting on A (column i = D_k(e_i)).
    """

    lie: LieAlgebra
    algebra: CommAlgebra
    anchor: tuple[np.ndarray, ...]
    generator_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.lie.p != self.algebra.p:
            raise FieldMismatchError("Lie algebra and coordinate algebra live over different fields")
        if self.lie.dim != self.r * self.algebra.dim:
            raise ValidationError("L is not free of rank r over A in the declared coordinates")

    @property
    def r(self) -> int:
        return len(self.anchor)

    @property
    def p(self) -> int:
        return self.algebra.p

    def index(self, k: int, a: int) -> int:
        return k * self.algebra.dim + a

    def a_basis(self) -> list[dict[int, int]]:
        """The generators 1·D_k as coordinate vectors of L."""
        d = self.algebra.dim
        return [{k * d + a: u for a, u in enumerate(self.algebra.unit) if u} for k in range(self.r)]

    def act(self, a: int, x: Mapping[int, int]) -> dict[int, int]:
        """e_a · x for x in L."""
        d, p = self.algebra.dim, self.p
        out: dict[int, int] = {}
        for idx, c in x.items():
            k, b = divmod(idx, d)
            for m, v in self.algebra.basis_product(a, b).items():
                key = k * d + m
                out[key] = (out.get(key, 0) + c * v) % p
        return {k: v for k, v in out.items() if v}

    def apply(self, x: Mapping[int, int], f: np.ndarray) -> np.ndarray:
        """x(f) for x in L acting as a derivation on f in A."""
        d, p = self.algebra.dim, self.p
        T = self.algebra.tensor()
        out = np.zeros(d, dtype=np.int64)
        for idx, c in x.items():
            k, a = divmod(idx, d)
            out = (out + c * (T[a].T @ (self.anchor[k] @ f % p))) % p
        return out

    def structure_functions(self) -> dict[tuple[int, int], list[np.ndarray]]:
        """[D_i, D_j] = sum_k c_ij^k D_k with c_ij^k in A (coordinate vectors)."""
        d = self.algebra.dim
        gens = self.a_basis()
        out = {}
        for i in range(self.r):
            for j in range(i + 1, self.r):
                v = self.lie.bracket_vec(gens[i], gens[j])
                coeffs = [np.zeros(d, dtype=np.int64) for _ in range(self.r)]
                for idx, c in v.items():
                    k, a = divmod(idx, d)
                    coeffs[k][a] = c
                out[(i, j)] = coeffs
        return out

    def check_compatibility(self) -> None:
        """Lie–Rinehart rule [D, aD'] = a[D, D'] + D(a)D' on generators D, D'."""
        p, d = self.p, self.algebra.dim
        gens = self.a_basis()
        for a in range(d):
            e_a = np.zeros(d, dtype=np.int64)
            e_a[a] = 1
            for i in range(self.r):
                Da = self.apply(gens[i], e_a)
                for j in range(self.r):
                    lhs = self.lie.bracket_vec(gens[i], self.act(a, gens[j]))
                    rhs = dict(self.act(a, self.lie.bracket_vec(gens[i], gens[j])))
                    for b, c in enumerate(Da):
                        if c:
                            for idx, v in self.act(b, gens[j]).items():
                                rhs[idx] = (rhs.get(idx, 0) + int(c) * v) % p
                    rhs = {k: v for k, v in rhs.items() if v}
                    if lhs != rhs:
                        raise ValidationError(f"Lie–Rinehart rule fails for D_{i}, e_{a} D_{j}")

    def check_anchor(self) -> None:
        """The anchor is a Lie homomorphism into Der(A): [x, y] acts as [x(.), y(.)]."""
        p, d = self.p, self.algebra.dim
        I = np.eye(d, dtype=np.int64)
        mats = []
        for idx in range(self.lie.dim):
            mats.append(np.stack([self.apply({idx: 1}, I[:, c]) for c in range(d)], axis=1))
        for i, j, v in self.lie.items():
            comm = (mats[i] @ mats[j] - mats[j] @ mats[i]) % p
            target = np.zeros((d, d), dtype=np.int64)
            for k, c in v.items():
                target = (target + c * mats[k]) % p
            if not np.array_equal(comm, target):
                raise ValidationError(f"anchor is not a homomorphism on {(i, j)}")


def free_lie_module(
    A: CommAlgebra,
    derivations: Sequence[np.ndarray],
    generator_labels: Sequence[str],
    structure: Mapping[tuple[int, int], Sequence[np.ndarray]] | None = None,
    grading: Sequence[int] | None = None,
    descriptor: Mapping | None = None,
) -> AModuleLie:
    """Build L = ⊕ A D_k with [aD_i, bD_j] = a D_i(b) D_j - b D_j(a) D_i + ab [D_i, D_j].

    ``structure[(i, j)][k]`` gives the A-coefficient of D_k in [D_i, D_j]
    (omitted pairs commute). The derivations are checked against it.
    """
    p, d = A.p, A.dim
    r = len(derivations)
    D = [np.asarray(m, dtype=np.int64) % p for m in derivations]
    structure = dict(structure or {})
    T = A.tensor()
    for i in range(r):
        for j in range(i + 1, r):
            comm = (D[i] @ D[j] - D[j] @ D[i]) % p
            target = np.zeros((d, d), dtype=np.int64)
            for k, coeff in enumerate(structure.get((i, j), [])):
                mult = np.einsum("a,abc->cb", np.asarray(coeff) % p, T) % p
                target = (target + mult @ D[k]) % p
            if not np.array_equal(comm, target):
                raise ValidationError(f"[D_{i}, D_{j}] disagrees with the structure functions")
    brackets: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(r):
        for j in range(r):
            sf = structure.get((i, j)) if i < j else None
            if i > j and (j, i) in structure:
                sf = [(-np.asarray(c)) % p for c in structure[(j, i)]]
            for a in range(d):
                for b in range(d):
                    x, y = i * d + a, j * d + b
                    if x >= y:
                        continue
                    vec: dict[int, int] = {}
                    # a D_i(b) D_j
                    for m, c in enumerate(D[i][:, b]):
                        if c:
                            for n, v in A.basis_product(a, m).items():
                                vec[j * d + n] = (vec.get(j * d + n, 0) + int(c) * v) % p
                    # - b D_j(a) D_i
                    for m, c in enumerate(D[j][:, a]):
                        if c:
                            for n, v in A.basis_product(b, m).items():
                                vec[i * d + n] = (vec.get(i * d + n, 0) - int(c) * v) % p
                    if sf is not None:
                        for k, coeff in enumerate(sf):
                            for m, c in enumerate(np.asarray(coeff) % p):
                                if c:
                                    for n1, v1 in A.basis_product(a, b).items():
                                        for n2, v2 in A.basis_product(n1, m).items():
                                            vec[k * d + n2] = (vec.get(k * d + n2, 0) + int(c) * v1 * v2) % p
                    vec = {k: v for k, v in vec.items() if v}
                    if vec:
                        brackets[(x, y)] = vec
    labels = [f"{A.labels[a]}*{g}" for g in generator_labels for a in range(d)]
    lie = LieAlgebra(p, labels, brackets, grading, descriptor or {"family": "free-module", "r": r, "p": p})
    return AModuleLie(lie, A, tuple(D), tuple(generator_labels))
