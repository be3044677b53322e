"""Polynomial deformations {x,y} = [x,y] + φ_1(x,y) t + ... + φ_k(x,y) t^k.

A form (x,y) = (x,y)_0 + (x,y)_1 t + ... is invariant for the deformed
bracket iff for every order n

    ([z,x],y)_n + (x,[z,y])_n + Σ_{i>=1, j>=0, i+j=n} (φ_i(z,x),y)_j + (x,φ_i(z,y))_j = 0,

so order 0 is plain invariance of the seed and later orders are linear
conditions on (.,.)_n given the lower ones.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import PreconditionError, ValidationError
from .exactfield import FpMatrix, solve
from .invariants import InvariantFormSpace, sym_pair_index
from .liealg import LieAlgebra


@dataclass
class DeformationData:
    base: LieAlgebra
    cochains: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        d, p = self.base.dim, self.base.p
        clean = []
        for n, phi in enumerate(self.cochains, start=1):
            phi = np.asarray(phi, dtype=np.int64) % p
            if phi.shape != (d, d, d):
                raise ValidationError(f"φ_{n} must be a {d}x{d}x{d} table")
            if not np.array_equal(phi, (-phi.transpose(1, 0, 2)) % p):
                raise ValidationError(f"φ_{n} is not antisymmetric")
            clean.append(phi)
        self.cochains = clean

    @classmethod
    def from_entries(cls, base: LieAlgebra, entries, order: int | None = None) -> "DeformationData":
        """Build from ``(order, i, j, k, coeff)`` meaning φ_order(e_i, e_j) ∋ coeff·e_k.

        The antisymmetric partner entry is filled in automatically.
        """
        d, p = base.dim, base.p
        k = max([e[0] for e in entries], default=0) if order is None else order
        phis = [np.zeros((d, d, d), dtype=np.int64) for _ in range(k)]
        for n, i, j, l, c in entries:
            phis[n - 1][i, j, l] = c % p
            phis[n - 1][j, i, l] = (-c) % p
        return cls(base, phis)

    @property
    def order(self) -> int:
        return len(self.cochains)

    @property
    def p(self) -> int:
        return self.base.p

    def phi(self, i: int) -> np.ndarray:
        """φ_i as a dense table; φ_0 is the undeformed bracket, φ_i = 0 past the last order."""
        if i == 0:
            return self.base.structure_tensor()
        if i <= self.order:
            return self.cochains[i - 1]
        return np.zeros((self.base.dim,) * 3, dtype=np.int64)

    def at(self, t: int = 1) -> LieAlgebra:
        """The bracket with the deformation parameter specialised to ``t``."""
        p, d = self.p, self.base.dim
        T = sum(pow(t, i, p) * self.phi(i) for i in range(self.order + 1)) % p
        br = {}
        for i in range(d):
            for j in range(i + 1, d):
                v = {k: int(c) for k, c in enumerate(T[i, j]) if c}
                if v:
                    br[(i, j)] = v
        desc = {"family": "deformed", "base": self.base.name, "t": t, "p": p}
        return LieAlgebra(p, self.base.labels, br, None, desc)

    def to_json(self) -> dict:
        entries = []
        for n, phi in enumerate(self.cochains, start=1):
            for i, j, k in zip(*np.nonzero(phi)):
                if i < j:
                    entries.append([n, int(i), int(j), int(k), int(phi[i, j, k])])
        return {"base": self.base.to_json(), "order": self.order, "cochains": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "DeformationData":
        base = LieAlgebra.from_json(doc["base"])
        return cls.from_entries(base, [tuple(e) for e in doc["cochains"]], doc.get("order"))


def jacobi_up_to_order(D: DeformationData, m: int) -> bool:
    """Does the deformed bracket satisfy Jacobi modulo t^(m+1)?"""
    p = D.p
    phis = [D.phi(i) for i in range(m + 1)]
    for n in range(m + 1):
        J = 0
        for a in range(n + 1):
            # φ_a(φ_b(x, y), z)
            J = J + np.einsum("ijl,lkm->ijkm", phis[n - a], phis[a])
        J = J % p
        cyc = (J + J.transpose(1, 2, 0, 3) + J.transpose(2, 0, 1, 3)) % p
        if cyc.any():
            return False
    return True


def invariance_operator(phi: np.ndarray, p: int) -> FpMatrix:
    """ω ↦ (ω(φ(z,x), y) + ω(x, φ(z,y)))_(z, x<=y) on symmetric ω in pair coordinates."""
    d = phi.shape[0]
    pidx = sym_pair_index(d)
    npairs = d * (d + 1) // 2
    rows, cols, vals = [], [], []
    for z in range(d):
        for x in range(d):
            for y in range(x, d):
                r = z * npairs + pidx[x, y]
                for k in np.flatnonzero(phi[z, x]):
                    rows.append(r); cols.append(pidx[k, y]); vals.append(phi[z, x, k])
                for k in np.flatnonzero(phi[z, y]):
                    rows.append(r); cols.append(pidx[x, k]); vals.append(phi[z, y, k])
    return FpMatrix.from_triplets(p, (d * npairs, npairs), rows, cols, vals)


def _to_pairs(W: np.ndarray) -> np.ndarray:
    d = W.shape[0]
    return np.array([W[i, j] for i in range(d) for j in range(i, d)], dtype=np.int64)


def _from_pairs(v: np.ndarray, d: int) -> np.ndarray:
    W = np.zeros((d, d), dtype=np.int64)
    n = 0
    for i in range(d):
        for j in range(i, d):
            W[i, j] = W[j, i] = v[n]
            n += 1
    return W


@dataclass
class FormJet:
    orders: list[np.ndarray]

    def __post_init__(self):
        for W in self.orders:
            if not np.array_equal(W, W.T):
                raise ValidationError("every order of a form jet must be symmetric")


@dataclass
class Obstruction:
    """First inconsistent order.

    ``certificate`` maps equation index to coefficient; that combination kills
    the left side of the order-n system but not its right side.
    """

    order: int
    rank_deficit: int
    certificate: dict[int, int]


@dataclass
class Prolongation:
    max_order: int
    jet: FormJet
    obstruction: Obstruction | None = None

    @property
    def complete(self) -> bool:
        return self.obstruction is None


def prolong_form(D: DeformationData, seed, m: int) -> Prolongation:
    """Extend ``seed`` order by order up to t^m, stopping at the first inconsistent order."""
    p, d = D.p, D.base.dim
    W0 = np.asarray(seed, dtype=np.int64) % p
    if not np.array_equal(W0, W0.T):
        raise PreconditionError("seed must be symmetric")
    ops = [invariance_operator(D.phi(i), p) for i in range(m + 1)]
    if (ops[0] @ _to_pairs(W0) % p).any():
        raise PreconditionError("seed is not invariant for the undeformed bracket")
    jet = [_to_pairs(W0)]
    for n in range(1, m + 1):
        rhs = np.zeros(ops[0].rows, dtype=np.int64)
        for i in range(1, n + 1):
            rhs = (rhs - ops[i] @ jet[n - i]) % p
        x = solve(ops[0], rhs)
        if x is None:
            obs = _certificate(ops[0], rhs, n)
            return Prolongation(n - 1, FormJet([_from_pairs(v, d) for v in jet]), obs)
        jet.append(x)
    return Prolongation(m, FormJet([_from_pairs(v, d) for v in jet]))


def _certificate(M: FpMatrix, b: np.ndarray, order: int) -> Obstruction:
    """Find y with y^T M = 0 and y^T b != 0."""
    p = M.p
    left = M.T.kernel_basis().basis_rows
    for r in range(left.rows):
        y = left.row(r)
        if sum(v * int(b[k]) for k, v in y.items()) % p:
            aug = FpMatrix.from_scipy(M.field, sp.hstack([M.csr, sp.csr_matrix(b.reshape(-1, 1))]))
            return Obstruction(order, aug.rank() - M.rank(), dict(y))
    raise AssertionError("system reported inconsistent but no certificate exists")


def joint_system(D: DeformationData, m: int) -> FpMatrix:
    """Block system in (ω_0, ..., ω_m): row block n holds Σ_i Inv_i(ω_(n-i)) = 0."""
    p = D.p
    ops = [invariance_operator(D.phi(i), p) for i in range(m + 1)]
    R, C = ops[0].shape
    rows, cols, vals = [], [], []
    for n in range(m + 1):
        for j in range(n + 1):
            for r, c, v in ops[n - j].triplets():
                rows.append(n * R + r); cols.append(j * C + c); vals.append(v)
    return FpMatrix.from_triplets(p, ((m + 1) * R, (m + 1) * C), rows, cols, vals)


def classify_prolongable(D: DeformationData, m: int) -> InvariantFormSpace:
    """Invariant forms of the base that extend to an invariant form modulo t^(m+1)."""
    d, p = D.base.dim, D.p
    npairs = d * (d + 1) // 2
    K = joint_system(D, m).kernel_basis().basis_rows
    seeds = FpMatrix.from_scipy(p, K.csr[:, :npairs]) if K.rows else FpMatrix.zeros(p, 0, npairs)
    R, _ = seeds.rref()
    basis = [FpMatrix.from_dense(p, _from_pairs(R.to_dense()[r], d)) for r in range(R.rows)]
    return InvariantFormSpace(D.base, basis)
