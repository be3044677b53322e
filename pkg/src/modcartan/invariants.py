"""Invariant symmetric forms, symmetric coinvariants and low-degree homology.

Symmetric pairs (i <= j) and wedge pairs (i < j) are indexed
lexicographically; wedge triples i < j < k likewise.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .comalg import CommAlgebra, hc1
from .config import check_cap, limits
from .errors import PreconditionError
from .exactfield import FpMatrix, quotient_dim
from .exactfield import elim
from .liealg import AModuleLie, LieAlgebra, current


def sym_pair_index(d: int) -> np.ndarray:
    """Symmetric d x d array mapping (i, j) to the index of the pair {i, j}."""
    idx = np.zeros((d, d), dtype=np.int64)
    n = 0
    for i in range(d):
        for j in range(i, d):
            idx[i, j] = idx[j, i] = n
            n += 1
    return idx


def wedge_pair_index(d: int) -> np.ndarray:
    """``idx[i, j]`` for i < j; -1 on and below the diagonal."""
    idx = -np.ones((d, d), dtype=np.int64)
    n = 0
    for i in range(d):
        for j in range(i + 1, d):
            idx[i, j] = n
            n += 1
    return idx


def torus_weights(L: LieAlgebra) -> np.ndarray | None:
    """Independent weight functionals of the diagonal basis elements, or None.

    Row t holds the eigenvalues of one torus element on the basis; only the
    row space matters, so it is reduced to an echelon basis first.
    """
    diag = L.diagonal_elements()
    if not diag:
        return None
    W = FpMatrix.from_dense(L.field, np.array(list(diag.values()), dtype=np.int64))
    R, _ = W.rref()
    return R.to_dense()


@dataclass
class InvariantFormSpace:
    lie: LieAlgebra
    basis: list[FpMatrix]
    graded: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_invariant(self, omega) -> bool:
        """ad(z)^T ω + ω ad(z) = 0 for every basis element z."""
        L = self.lie
        W = omega.to_dense() if isinstance(omega, FpMatrix) else np.asarray(omega, dtype=np.int64)
        if not np.array_equal(W, W.T):
            return False
        Wf = FpMatrix.from_dense(L.field, W)
        for z in range(L.dim):
            A = FpMatrix.from_scipy(L.field, L.ad_sparse(z))
            if not (A.T @ Wf + Wf @ A).is_zero():
                return False
        return True

    def evaluate(self, k: int, x, y) -> int:
        W = self.basis[k].to_dense()
        return int(np.asarray(x) @ W @ np.asarray(y) % self.lie.p)


def _weight_keys(w: np.ndarray, p: int) -> np.ndarray:
    """One Python int per column of the weight matrix ``w`` (entries in [0, p))."""
    keys = np.zeros(w.shape[1], dtype=object)
    for row in w:
        keys = keys * p + row.astype(object)
    return keys


def _invariance_system(L: LieAlgebra, use_grading: bool):
    """Rows of the invariance system and the symmetric pairs they act on.

    Returns ``(matrix, (I, J))`` where column c of ``matrix`` is the unknown
    ω(e_I[c], e_J[c]). With grading, pairs of nonzero torus weight are dropped
    (a diagonal element forces them to vanish) together with the equations that
    only involve them, and invariance is imposed for a set of Lie generators
    only: if ad z and ad z' are skew for ω then so is ad [z, z'].
    """
    d, p = L.dim, L.p
    pidx = sym_pair_index(d)
    I, J = np.triu_indices(d)
    weights = torus_weights(L) if use_grading else None
    if weights is None:
        allowed = np.ones(len(I), dtype=bool)
    else:
        allowed = ~((weights[:, I] + weights[:, J]) % p).any(axis=0)
    colmap = -np.ones(len(I), dtype=np.int64)
    colmap[allowed] = np.arange(int(allowed.sum()))
    I, J = I[allowed], J[allowed]
    if weights is not None:
        keys = _weight_keys(weights, p)
        order = np.argsort(keys, kind="stable")
        uniq, starts = np.unique(keys[order], return_index=True)
        by_key = dict(zip(uniq.tolist(), np.split(order, starts[1:])))
    zs = L.lie_generators() if use_grading else range(d)
    npairs = len(allowed)
    Jall = np.arange(d)
    rows, cols, vals = [], [], []
    nrows = 0
    for z in zs:
        ad = L.ad_sparse(z).tocoo()
        k_idx, i_idx, c = ad.row, ad.col, ad.data % p
        nz = c != 0
        k_idx, i_idx, c = k_idx[nz], i_idx[nz], c[nz]
        if len(k_idx) == 0:
            continue
        if weights is not None:
            # keep only (z, i, j) of total weight zero
            need = _weight_keys((-(weights[:, [z]] + weights[:, i_idx])) % p, p)
            ent = [np.full(len(by_key.get(key, ())), e) for e, key in enumerate(need)]
            jj = [by_key.get(key, np.zeros(0, dtype=np.int64)) for key in need]
            ent, jj = np.concatenate(ent), np.concatenate(jj)
            r = pidx[i_idx[ent], jj]
            col = colmap[pidx[k_idx[ent], jj]]
            v = c[ent]
        else:
            r = pidx[i_idx[:, None], Jall[None, :]].ravel()
            col = colmap[pidx[k_idx[:, None], Jall[None, :]]].ravel()
            v = np.repeat(c, d)
        keep = col >= 0
        rows.append(r[keep] + nrows)
        cols.append(col[keep])
        vals.append(v[keep])
        nrows += npairs
    if rows:
        r = np.concatenate(rows)
        used, r = np.unique(r, return_inverse=True)
        mat = FpMatrix.from_triplets(L.field, (len(used), len(I)), r, np.concatenate(cols), np.concatenate(vals))
    else:
        mat = FpMatrix.zeros(L.field, 0, len(I))
    return mat, (I, J)


def invariant_forms(L: LieAlgebra, use_grading: bool = False) -> InvariantFormSpace:
    """Basis of the invariant symmetric bilinear forms on L.

    ``use_grading`` prunes the system with the torus of diagonal basis
    elements; independent blocks (for instance homogeneous components of a
    graded algebra) are always eliminated separately. The result does not
    depend on the flag.
    """
    d = L.dim
    system, (I, J) = _invariance_system(L, use_grading)
    K = system.kernel_basis().basis_rows
    basis = []
    for r in range(K.rows):
        W = np.zeros((d, d), dtype=np.int64)
        for c, v in K.row(r).items():
            W[I[c], J[c]] = W[J[c], I[c]] = v
        basis.append(FpMatrix.from_dense(L.field, W))
    return InvariantFormSpace(L, basis, graded=use_grading)


def coinvariant_relations(L: LieAlgebra, use_grading: bool = False) -> tuple[FpMatrix, int]:
    """Relations [z,x]∨y + x∨[z,y] over all z and ordered basis pairs (x, y).

    Returns the relation matrix and the dimension of the ambient part of L∨L
    it lives in (the weight-zero part when ``use_grading`` is set).
    """
    d, p = L.dim, L.p
    pidx = sym_pair_index(d)
    weights = torus_weights(L) if use_grading else None
    if weights is None:
        keep = np.ones(d * (d + 1) // 2, dtype=bool)
    else:
        keep = np.zeros(d * (d + 1) // 2, dtype=bool)
        for i in range(d):
            for j in range(i, d):
                keep[pidx[i, j]] = not ((weights[:, i] + weights[:, j]) % p).any()
    colmap = -np.ones(len(keep), dtype=np.int64)
    colmap[keep] = np.arange(int(keep.sum()))
    rel_rows = []
    for z in range(d):
        row_z = L.nonzero_brackets(z)
        if not row_z:
            continue
        for x in range(d):
            bx = row_z.get(x)
            for y in range(d):
                by = row_z.get(y)
                if not bx and not by:
                    continue
                rel: dict[int, int] = {}
                for k, c in (bx or {}).items():
                    col = colmap[pidx[k, y]]
                    if col >= 0:
                        rel[col] = (rel.get(col, 0) + c) % p
                for k, c in (by or {}).items():
                    col = colmap[pidx[x, k]]
                    if col >= 0:
                        rel[col] = (rel.get(col, 0) + c) % p
                rel = {k: v for k, v in rel.items() if v}
                if rel:
                    rel_rows.append(rel)
    ambient = int(keep.sum())
    return FpMatrix.from_rows(L.field, ambient, rel_rows), ambient


def sym_coinvariants_dim(L: LieAlgebra, use_grading: bool = False) -> int:
    """dim B(L) = dim (L∨L) / span{[z,x]∨y + x∨[z,y]}."""
    rel, ambient = coinvariant_relations(L, use_grading)
    return quotient_dim(ambient, rel)


@dataclass
class H2Report:
    lie: str
    dim: int
    dim_wedge2: int
    dim_wedge3: int
    rank_d2: int
    rank_d3: int
    composite_zero: bool

    @property
    def dim_h1(self) -> int:
        return self.dim - self.rank_d2

    @property
    def dim_h2(self) -> int:
        return self.dim_wedge2 - self.rank_d2 - self.rank_d3

    def to_json(self) -> dict:
        out = asdict(self)
        out.update(dim_h1=self.dim_h1, dim_h2=self.dim_h2)
        return out


def _wedge_add(out: dict, c: int, l: int, m: int, widx: np.ndarray, p: int) -> None:
    if l == m:
        return
    if l > m:
        l, m, c = m, l, -c
    key = int(widx[l, m])
    v = (out.get(key, 0) + c) % p
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def boundary_maps(L: LieAlgebra) -> tuple[FpMatrix, FpMatrix]:
    """∂2: Λ²L → L and ∂3: Λ³L → Λ²L as matrices (columns are images).

    ∂(x∧y) = [x,y];  ∂(x∧y∧z) = -[x,y]∧z + [x,z]∧y - [y,z]∧x.
    """
    d, p = L.dim, L.p
    n3 = d * (d - 1) * (d - 2) // 6
    check_cap(n3, limits().wedge3_dim, f"Λ³ of {L.name}")
    widx = wedge_pair_index(d)
    n2 = d * (d - 1) // 2
    d2_cols = []
    for i in range(d):
        for j in range(i + 1, d):
            d2_cols.append(L.bracket_basis(i, j))
    d2 = FpMatrix.from_rows(L.field, d, d2_cols).T
    cols = []
    for i, j, k in combinations(range(d), 3):
        out: dict[int, int] = {}
        for l, c in L.bracket_basis(i, j).items():
            _wedge_add(out, -c, l, k, widx, p)
        for l, c in L.bracket_basis(i, k).items():
            _wedge_add(out, c, l, j, widx, p)
        for l, c in L.bracket_basis(j, k).items():
            _wedge_add(out, -c, l, i, widx, p)
        cols.append(out)
    d3 = FpMatrix.from_rows(L.field, n2, cols).T if cols else FpMatrix.zeros(L.field, n2, 0)
    return d2, d3


def ce_homology(L: LieAlgebra) -> H2Report:
    """H_1 and H_2 of L with trivial coefficients."""
    d = L.dim
    d2, d3 = boundary_maps(L)
    return H2Report(
        lie=L.name,
        dim=d,
        dim_wedge2=d2.cols,
        dim_wedge3=d3.cols,
        rank_d2=d2.T.rank(),
        rank_d3=d3.T.rank(),
        composite_zero=(d2 @ d3).is_zero(),
    )


@dataclass
class Report:
    """Outcome of a two-sided check; serializes as {check, params, lhs, rhs, dims, status}."""

    check: str
    params: dict
    lhs: int
    rhs: int
    dims: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"check": self.check, "params": self.params, "lhs": self.lhs, "rhs": self.rhs, "dims": self.dims, "status": self.status}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def verify_current_h2(L: LieAlgebra, B: CommAlgebra) -> Report:
    """dim H2(L⊗B) against dim H2(L)·dim B + dim B(L)·dim HC1(B)."""
    if not L.is_perfect():
        raise PreconditionError(f"{L.name} is not perfect; the current-algebra formula needs [L, L] = L")
    big = ce_homology(current(L, B))
    small = ce_homology(L)
    coinv = sym_coinvariants_dim(L)
    cyc = hc1(B)
    rhs = small.dim_h2 * B.dim + coinv * cyc
    return Report(
        check="current-h2",
        params={"lie": L.name, "algebra": B.name, "p": L.p},
        lhs=big.dim_h2,
        rhs=rhs,
        dims={"h2_L": small.dim_h2, "dim_B": B.dim, "B_L": coinv, "hc1_B": cyc, "dim_LB": big.dim},
    )


def hom_condition(LA: AModuleLie) -> bool:
    """Is Hom_A(L, A) spanned over K by the functionals a'·d(a)?

    A functional φ is recorded by its values (φ(D_1), ..., φ(D_r)) ∈ A^r.
    """
    A = LA.algebra
    d, r, p = A.dim, LA.r, LA.p
    if r == 0:
        return True
    T = A.tensor()
    gens = LA.a_basis()
    I = np.eye(d, dtype=np.int64)
    # Da[k][:, a] = D_k(e_a)
    Da = [np.stack([LA.apply(gens[k], I[:, a]) for a in range(d)], axis=1) for k in range(r)]
    rows = []
    for a in range(d):
        for a2 in range(d):
            vec = np.concatenate([T[a2].T @ Da[k][:, a] % p for k in range(r)])
            rows.append(vec)
    span = FpMatrix.from_dense(A.field, np.array(rows))
    return span.rank() == r * d
