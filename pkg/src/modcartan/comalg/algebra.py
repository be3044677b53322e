"""Commutative associative unital algebras by structure constants."""
from __future__ import annotations

import json
from typing import Mapping, Sequence

import numpy as np

from ..config import check_cap, limits
from ..errors import FieldMismatchError, ValidationError
from ..exactfield.field import PrimeField
from ..monomials import DividedPowerBasis

EXHAUSTIVE_DIM = 64
SAMPLED_TRIPLES = 20_000

Product = dict[tuple[int, int], dict[int, int]]


class CommAlgebra:
    """A finite-dimensional commutative associative unital F_p-algebra.

    ``mult[(i, j)]`` holds the nonzero coordinates of e_i * e_j; both orders of
    every pair are stored. The defining identities are checked on
    construction (exhaustively up to dimension 64, sampled above).
    """

    def __init__(
        self,
        p: int,
        labels: Sequence[str],
        mult: Mapping[tuple[int, int], Mapping[int, int]],
        unit: Sequence[int],
        name: str = "",
        validate: bool = True,
    ):
        self.field = PrimeField(p)
        self.p = p
        self.dim = len(labels)
        self.labels = tuple(labels)
        self.name = name or f"algebra(dim={self.dim})"
        check_cap(self.dim, limits().algebra_dim, self.name)
        self.mult: Product = {}
        for (i, j), vec in mult.items():
            clean = {k: c % p for k, c in vec.items() if c % p}
            if clean:
                self.mult[(i, j)] = clean
        self.unit = tuple(int(u) % p for u in unit)
        if len(self.unit) != self.dim:
            raise ValidationError("unit has the wrong length")
        self._tensor = None
        if validate:
            self.validate()

    # products ---------------------------------------------------------------
    def basis_product(self, i: int, j: int) -> dict[int, int]:
        return self.mult.get((i, j), {})

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64) % self.p
        y = np.asarray(y, dtype=np.int64) % self.p
        return np.einsum("i,j,ijk->k", x, y, self.tensor()) % self.p

    def tensor(self) -> np.ndarray:
        """Dense structure tensor T[i, j, k] = coefficient of e_k in e_i e_j."""
        if self._tensor is None:
            T = np.zeros((self.dim,) * 3, dtype=np.int64)
            for (i, j), vec in self.mult.items():
                for k, c in vec.items():
                    T[i, j, k] = c
            self._tensor = T
        return self._tensor

    def left_mult_matrix(self, i: int) -> np.ndarray:
        """Matrix of x -> e_i x (columns are images of basis vectors)."""
        return self.tensor()[i].T.copy()

    def unit_vector(self) -> np.ndarray:
        return np.array(self.unit, dtype=np.int64)

    # checks -----------------------------------------------------------------
    def validate(self, exhaustive: bool | None = None, seed: int = 0) -> None:
        p, d = self.p, self.dim
        if d == 0:
            raise ValidationError("a unital algebra has dimension at least 1")
        T = self.tensor()
        if not np.array_equal(T, T.transpose(1, 0, 2)):
            raise ValidationError(f"{self.name}: multiplication is not commutative")
        u = self.unit_vector()
        left = np.einsum("i,ijk->jk", u, T) % p
        if not np.array_equal(left, np.eye(d, dtype=np.int64)):
            raise ValidationError(f"{self.name}: unit law fails")
        if exhaustive is None:
            exhaustive = d <= EXHAUSTIVE_DIM
        if exhaustive:
            Tf = T.astype(np.float64)
            flat = Tf.reshape(d * d, d)
            for i in range(d):
                # (e_i e_j) e_k versus e_i (e_j e_k), indexed [j, k, m]
                lhs = np.remainder(Tf[i] @ Tf.reshape(d, d * d), p).reshape(d, d, d)
                rhs = np.remainder(flat @ Tf[i], p).reshape(d, d, d)
                if not np.array_equal(lhs, rhs):
                    raise ValidationError(f"{self.name}: multiplication is not associative")
        else:
            rng = np.random.default_rng(seed)
            for i, j, k in rng.integers(0, d, size=(SAMPLED_TRIPLES, 3)):
                a = T[i, j] @ T[:, k] % p
                b = T[j, k] @ T[i] % p
                if not np.array_equal(a, b):
                    raise ValidationError(f"{self.name}: associativity fails at {(i, j, k)}")

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        mult = [[i, j, k, c] for (i, j), vec in sorted(self.mult.items()) for k, c in sorted(vec.items())]
        return {"prime": self.p, "dim": self.dim, "labels": list(self.labels), "unit": list(self.unit), "mult": mult, "name": self.name}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "CommAlgebra":
        if doc.get("dim") != len(doc["labels"]):
            raise ValidationError("dim does not match the number of labels")
        mult: Product = {}
        for i, j, k, c in doc["mult"]:
            mult.setdefault((i, j), {})[k] = c
        return cls(doc["prime"], doc["labels"], mult, doc["unit"], name=doc.get("name", ""))

    @classmethod
    def loads(cls, text: str) -> "CommAlgebra":
        return cls.from_json(json.loads(text))

    def same_structure(self, other: "CommAlgebra") -> bool:
        return self.p == other.p and self.dim == other.dim and self.mult == other.mult and self.unit == other.unit

    def __repr__(self) -> str:
        return f"CommAlgebra({self.name}, dim={self.dim}, p={self.p})"


def ground_field(p: int) -> CommAlgebra:
    return CommAlgebra(p, ["1"], {(0, 0): {0: 1}}, [1], name=f"F_{p}")


def divided_powers(n: int, heights: Sequence[int], p: int) -> CommAlgebra:
    """O_n(m): basis x^(a), x^(a) x^(b) = prod binom(a_i+b_i, a_i) x^(a+b)."""
    heights = tuple(heights)
    if len(heights) != n:
        raise ValueError(f"need {n} exponent heights, got {len(heights)}")
    basis = DividedPowerBasis(heights, p)
    mult: Product = {}
    for i, a in enumerate(basis.exps):
        for j, b in enumerate(basis.exps):
            prod = basis.mul(a, b)
            if prod is not None:
                coef, c = prod
                mult[(i, j)] = {basis.index[c]: coef}
    unit = [0] * len(basis)
    unit[0] = 1
    alg = CommAlgebra(
        p, [basis.label(a) for a in basis.exps], mult, unit, name=f"O_{n}{heights} over F_{p}"
    )
    alg.monomials = basis
    return alg


def truncated_poly(n: int, p: int) -> CommAlgebra:
    """K[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    labels = ["1", "x"] + [f"x^{k}" for k in range(2, n)]
    mult = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return CommAlgebra(p, labels[:n], mult, [1] + [0] * (n - 1), name=f"F_{p}[x]/(x^{n})")


def unit_plus_nil(k: int, p: int) -> CommAlgebra:
    """K1 + N where N has basis n1..nk and N*N = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mult: Product = {(0, 0): {0: 1}}
    for i in range(1, k + 1):
        mult[(0, i)] = {i: 1}
        mult[(i, 0)] = {i: 1}
    labels = ["1"] + [f"n{i}" for i in range(1, k + 1)]
    return CommAlgebra(p, labels, mult, [1] + [0] * k, name=f"F_{p}1+N{k}")


def tensor(A: CommAlgebra, B: CommAlgebra) -> CommAlgebra:
    """A (x) B with basis e_i (x) f_j at index i * dim B + j."""
    if A.p != B.p:
        raise FieldMismatchError(f"cannot tensor algebras over F_{A.p} and F_{B.p}")
    p, db = A.p, B.dim
    check_cap(A.dim * B.dim, limits().algebra_dim, "tensor product")
    mult: Product = {}
    for (i, i2), va in A.mult.items():
        for (j, j2), vb in B.mult.items():
            vec = {}
            for k, ca in va.items():
                for l, cb in vb.items():
                    vec[k * db + l] = ca * cb % p
            mult[(i * db + j, i2 * db + j2)] = vec
    unit = [ua * ub % p for ua in A.unit for ub in B.unit]
    labels = [f"{la} ⊗ {lb}" for la in A.labels for lb in B.labels]
    return CommAlgebra(p, labels, mult, unit, name=f"({A.name}) ⊗ ({B.name})")
