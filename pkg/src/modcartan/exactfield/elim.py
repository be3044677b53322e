"""Exact elimination over F_p on scipy CSR matrices with entries in [0, p).

Pipeline: split the matrix into independent blocks (connected components of
the row/column incidence graph), then eliminate each block with either a
streaming dense RREF (compiled kernel) or a Markowitz-ordered sparse
elimination that hands over to the dense path once fill-in gets heavy.
Every path is exact; the chosen strategy never changes the result.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from . import kernels

DENSE_DENSITY = 0.20
DENSE_DIM = 64
# switch from sparse to dense once pivot rows fill this fraction of their box
FILL_SWITCH = 0.20
MIN_SWITCH_PIVOTS = 32
BLOCK_ENTRIES = 1 << 22


class Echelon:
    """A reduced row-echelon basis over F_p, grown block by block."""

    def __init__(self, ncols: int, p: int, backend: str | None = None):
        self.ncols = ncols
        self.p = p
        self.backend = backend
        self.R = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = np.zeros(0, dtype=np.int64)
        self._is_pivot = np.zeros(ncols, dtype=bool)
        self.last_added = np.zeros((0, ncols), dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def add(self, X: np.ndarray) -> int:
        """Insert the rows of ``X``; return how many pivots they added.

        ``last_added`` then holds rows spanning a complement of the old span
        inside the new one.
        """
        self.last_added = np.zeros((0, self.ncols), dtype=np.int64)
        if X.shape[0] == 0 or self.full:
            return 0
        p = self.p
        free = np.flatnonzero(~self._is_pivot)
        if self.rank:
            # R is in RREF, so only free columns survive the reduction
            resid = X[:, free] - kernels.matmul_mod(X[:, self.pivots], self.R[:, free], p)
            resid %= p
        else:
            resid = X[:, free] % p
        resid = resid[resid.any(axis=1)]
        if resid.shape[0] == 0:
            return 0
        resid = np.ascontiguousarray(resid, dtype=np.int64)
        local = kernels.rref_inplace(resid, p, self.backend)
        k = len(local)
        if k == 0:
            return 0
        new = np.zeros((k, self.ncols), dtype=np.int64)
        new[:, free] = resid[:k]
        newpiv = free[local]
        self.last_added = new
        if self.rank:
            coef = self.R[:, newpiv]
            if coef.any():
                self.R = (self.R - kernels.matmul_mod(coef, new, p)) % p
        R = np.vstack([self.R, new])
        piv = np.concatenate([self.pivots, newpiv])
        order = np.argsort(piv, kind="stable")
        self.R = np.ascontiguousarray(R[order])
        self.pivots = piv[order]
        self._is_pivot[newpiv] = True
        return k

    def add_sparse(self, csr: sp.csr_matrix) -> int:
        added = 0
        step = _block_rows(self.ncols)
        for s in range(0, csr.shape[0], step):
            if self.full:
                break
            added += self.add(csr[s:s + step].toarray().astype(np.int64))
        return added

    def kernel(self) -> np.ndarray:
        """Dense basis of the null space, one vector per free column (not reduced)."""
        free = np.flatnonzero(~self._is_pivot)
        K = np.zeros((len(free), self.ncols), dtype=np.int64)
        K[np.arange(len(free)), free] = 1
        if self.rank:
            K[:, self.pivots] = (-self.R[:, free].T) % self.p
        return K


def _block_rows(ncols: int) -> int:
    return int(max(64, min(8192, BLOCK_ENTRIES // max(ncols, 1))))


def as_csr(M, p: int) -> sp.csr_matrix:
    csr = sp.csr_matrix(M, dtype=np.int64)
    csr.sum_duplicates()
    csr.data %= p
    csr.eliminate_zeros()
    return csr


@dataclass
class Block:
    rows: np.ndarray
    cols: np.ndarray


def components(csr: sp.csr_matrix) -> list[Block]:
    """Independent blocks of ``csr``: rows and columns linked by nonzeros.

    Columns touched by no row and empty rows are omitted.
    """
    m, n = csr.shape
    if csr.nnz == 0:
        return []
    coo = csr.tocoo()
    graph = sp.coo_matrix(
        (np.ones(coo.nnz, dtype=np.int8), (coo.row, m + coo.col)), shape=(m + n, m + n)
    )
    ncomp, labels = connected_components(graph, directed=False)
    row_lab = labels[:m]
    col_lab = labels[m:]
    used_rows = np.diff(csr.indptr) > 0
    used_cols = np.zeros(n, dtype=bool)
    used_cols[coo.col] = True
    row_order = np.argsort(row_lab, kind="stable")
    col_order = np.argsort(col_lab, kind="stable")
    rs = np.searchsorted(row_lab[row_order], np.arange(ncomp + 1))
    cs = np.searchsorted(col_lab[col_order], np.arange(ncomp + 1))
    blocks = []
    for c in range(ncomp):
        rows = row_order[rs[c]:rs[c + 1]]
        cols = col_order[cs[c]:cs[c + 1]]
        rows = rows[used_rows[rows]]
        cols = cols[used_cols[cols]]
        if len(rows) and len(cols):
            blocks.append(Block(np.sort(rows), np.sort(cols)))
    return blocks


def _dense_echelon(sub: sp.csr_matrix, p: int, backend=None) -> Echelon:
    ech = Echelon(sub.shape[1], p, backend)
    ech.add_sparse(sub)
    return ech


def _markowitz(sub: sp.csr_matrix, p: int, backend=None):
    """Sparse elimination; returns ``(pivot_rows, None)`` or ``(None, Echelon)``.

    Rows are taken shortest first and each pivot is placed in the column with
    the fewest structural nonzeros, which keeps fill-in low on the very sparse
    boundary and invariance systems. When the accumulated pivot rows become
    dense the remaining work moves to :class:`Echelon`.
    """
    m, n = sub.shape
    indptr, indices, data = sub.indptr, sub.indices, sub.data
    colcount = np.bincount(indices, minlength=n).tolist()
    order = np.argsort(np.diff(indptr), kind="stable")
    pivrows: dict[int, tuple[int, dict]] = {}
    fill = 0
    for pos, ri in enumerate(order.tolist()):
        s, e = indptr[ri], indptr[ri + 1]
        row = dict(zip(indices[s:e].tolist(), data[s:e].tolist()))
        heap = [(pivrows[c][0], c) for c in row if c in pivrows]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            f = row.get(c)
            if not f:
                continue
            for k, v in pivrows[c][1].items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    if k not in row and k in pivrows:
                        heapq.heappush(heap, (pivrows[k][0], k))
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        c = min(row, key=lambda k: (colcount[k], k))
        inv = pow(row[c], -1, p)
        if inv != 1:
            row = {k: v * inv % p for k, v in row.items()}
        pivrows[c] = (len(pivrows), row)
        fill += len(row)
        if len(pivrows) == n:
            return pivrows, None
        if len(pivrows) >= MIN_SWITCH_PIVOTS and fill > FILL_SWITCH * len(pivrows) * n:
            ech = Echelon(n, p, backend)
            ech.add(_rows_to_dense([r for _, r in pivrows.values()], n))
            rest = order[pos + 1:]
            if len(rest):
                ech.add_sparse(sub[np.sort(rest)])
            return None, ech
    return pivrows, None


def _rows_to_dense(rows: list[dict], n: int) -> np.ndarray:
    X = np.zeros((len(rows), n), dtype=np.int64)
    for i, r in enumerate(rows):
        if r:
            X[i, list(r.keys())] = list(r.values())
    return X


def _use_dense(sub: sp.csr_matrix) -> bool:
    m, n = sub.shape
    return n < DENSE_DIM or m < DENSE_DIM or sub.nnz > DENSE_DENSITY * m * n


def block_rank(sub: sp.csr_matrix, p: int, backend=None) -> int:
    if _use_dense(sub):
        return _dense_echelon(sub, p, backend).rank
    piv, ech = _markowitz(sub, p, backend)
    return len(piv) if ech is None else ech.rank


def block_echelon(sub: sp.csr_matrix, p: int, backend=None) -> Echelon:
    if _use_dense(sub):
        return _dense_echelon(sub, p, backend)
    piv, ech = _markowitz(sub, p, backend)
    if ech is None:
        ech = Echelon(sub.shape[1], p, backend)
        ech.add(_rows_to_dense([r for _, r in piv.values()], sub.shape[1]))
    return ech


def _pivot_kernel(piv: dict, n: int, p: int) -> np.ndarray:
    """Null space from sparse pivot rows, one vector per free column.

    A pivot row holds its own pivot, free columns and pivots found later, so
    back-substitution in reverse insertion order resolves every pivot value.
    """
    free = np.array([c for c in range(n) if c not in piv], dtype=np.int64)
    V = np.zeros((n, len(free)), dtype=np.int64)
    if len(free) == 0:
        return V.T
    V[free, np.arange(len(free))] = 1
    for c, (_, row) in sorted(piv.items(), key=lambda kv: -kv[1][0]):
        acc = np.zeros(len(free), dtype=np.int64)
        for k, v in row.items():
            if k != c:
                acc = (acc + v * V[k]) % p
        V[c] = (-acc) % p
    return np.ascontiguousarray(V.T)


def block_kernel(sub: sp.csr_matrix, p: int, backend=None) -> np.ndarray:
    """Dense null-space basis (rows) of one block, not reduced."""
    if _use_dense(sub):
        return _dense_echelon(sub, p, backend).kernel()
    piv, ech = _markowitz(sub, p, backend)
    if ech is None:
        return _pivot_kernel(piv, sub.shape[1], p)
    return ech.kernel()


def rank(csr: sp.csr_matrix, p: int, backend=None) -> int:
    return sum(block_rank(csr[b.rows][:, b.cols], p, backend) for b in components(csr))


def rref(csr: sp.csr_matrix, p: int, backend=None) -> tuple[sp.csr_matrix, np.ndarray]:
    """Reduced row-echelon form (nonzero rows only) and pivot columns."""
    n = csr.shape[1]
    rows, cols, vals, pivs = [], [], [], []
    offset = 0
    for b in components(csr):
        ech = block_echelon(csr[b.rows][:, b.cols], p, backend)
        r, c = np.nonzero(ech.R)
        rows.append(r + offset)
        cols.append(b.cols[c])
        vals.append(ech.R[r, c])
        pivs.append(b.cols[ech.pivots])
        offset += ech.rank
    return _assemble(rows, cols, vals, pivs, offset, n)


def nullspace_rref(csr: sp.csr_matrix, p: int, backend=None) -> sp.csr_matrix:
    """Kernel basis of ``csr`` in reduced row-echelon form."""
    n = csr.shape[1]
    touched = np.zeros(n, dtype=bool)
    rows, cols, vals, pivs = [], [], [], []
    offset = 0
    for b in components(csr):
        touched[b.cols] = True
        K = block_kernel(csr[b.rows][:, b.cols], p, backend)
        if K.shape[0] == 0:
            continue
        K = np.ascontiguousarray(K)
        kp = kernels.rref_inplace(K, p, backend)
        K = K[: len(kp)]
        r, c = np.nonzero(K)
        rows.append(r + offset)
        cols.append(b.cols[c])
        vals.append(K[r, c])
        pivs.append(b.cols[kp])
        offset += len(kp)
    free = np.flatnonzero(~touched)
    rows.append(np.arange(len(free)) + offset)
    cols.append(free)
    vals.append(np.ones(len(free), dtype=np.int64))
    pivs.append(free)
    offset += len(free)
    mat, _ = _assemble(rows, cols, vals, pivs, offset, n)
    return mat


def _assemble(rows, cols, vals, pivs, nrows, n):
    if nrows == 0:
        return sp.csr_matrix((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    v = np.concatenate(vals).astype(np.int64)
    piv = np.concatenate(pivs).astype(np.int64)
    # blocks are column-disjoint: sorting rows by pivot yields a global RREF
    order = np.argsort(piv, kind="stable")
    rank_of = np.empty_like(order)
    rank_of[order] = np.arange(len(order))
    mat = sp.csr_matrix((v, (rank_of[r], c)), shape=(nrows, n), dtype=np.int64)
    mat.sort_indices()
    return mat, piv[order]


def streaming_rank(blocks, ncols: int, p: int, target: int | None = None, backend=None) -> Echelon:
    """Accumulate an :class:`Echelon` from an iterable of CSR row blocks.

    Stops consuming blocks once the rank reaches ``target`` (default: ncols).
    """
    target = ncols if target is None else target
    ech = Echelon(ncols, p, backend)
    for blk in blocks:
        if ech.rank >= target:
            break
        blk = as_csr(blk, p)
        if blk.nnz == 0:
            continue
        if ech.rank == 0 and not _use_dense(blk):
            e = block_echelon(blk, p, backend)
            ech.add(e.R)
        else:
            ech.add_sparse(blk)
    return ech
