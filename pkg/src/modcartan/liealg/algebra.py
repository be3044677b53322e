"""Lie algebras given by sparse structure constants over F_p."""
from __future__ import annotations

import json
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from ..config import check_cap, limits
from ..errors import ValidationError
from ..exactfield import FpMatrix
from ..exactfield.elim import Echelon
from ..exactfield.field import PrimeField

EXHAUSTIVE_DIM = 128
SAMPLED_TRIPLES = 10_000

Vec = dict[int, int]


def _axpy(out: Vec, c: int, vec: Mapping[int, int], p: int) -> None:
    for k, v in vec.items():
        nv = (out.get(k, 0) + c * v) % p
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


class LieAlgebra:
    """Finite-dimensional Lie algebra with basis e_0..e_(dim-1).

    ``brackets`` maps ``(i, j)`` to the nonzero coordinates of [e_i, e_j];
    giving either order of a pair is enough, giving both requires them to
    be negatives of each other.
    """

    def __init__(
        self,
        p: int,
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, int]],
        grading: Sequence[int] | None = None,
        descriptor: Mapping | None = None,
    ):
        self.field = PrimeField(p)
        self.p = p
        self.dim = len(labels)
        self.labels = tuple(labels)
        self.descriptor = dict(descriptor or {"family": "custom"})
        check_cap(self.dim, limits().algebra_dim, self.name)
        if grading is not None and len(grading) != self.dim:
            raise ValidationError("grading must assign a degree to every basis vector")
        self.grading = tuple(int(g) for g in grading) if grading is not None else None
        table: list[dict[int, Vec]] = [dict() for _ in range(self.dim)]
        for (i, j), vec in brackets.items():
            clean = {k: c % p for k, c in vec.items() if c % p}
            if not clean:
                continue
            if i == j:
                raise ValidationError(f"[e_{i}, e_{i}] must vanish")
            neg = {k: (-c) % p for k, c in clean.items()}
            for a, b, v in ((i, j, clean), (j, i, neg)):
                old = table[a].get(b)
                if old is not None and old != v:
                    raise ValidationError(f"bracket table is not antisymmetric at {(i, j)}")
                table[a][b] = v
        self._table = table
        self._generators: list[int] | None = None

    @property
    def name(self) -> str:
        d = self.descriptor
        fam = d.get("family", "custom")
        params = ",".join(f"{k}={v}" for k, v in d.items() if k not in ("family",))
        return f"{fam}({params})" if params else fam

    # brackets -----------------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> Vec:
        return self._table[i].get(j, {})

    def nonzero_brackets(self, i: int) -> dict[int, Vec]:
        """Row i of the bracket table: j -> [e_i, e_j] for the nonzero ones."""
        return self._table[i]

    def bracket_vec(self, x: Mapping[int, int], y: Mapping[int, int]) -> Vec:
        p = self.p
        out: Vec = {}
        for i, a in x.items():
            row = self._table[i]
            for j, b in y.items():
                v = row.get(j)
                if v:
                    _axpy(out, a * b, v, p)
        return out

    def bracket(self, x, y) -> np.ndarray:
        xv = {i: int(c) for i, c in enumerate(np.asarray(x) % self.p) if c}
        yv = {i: int(c) for i, c in enumerate(np.asarray(y) % self.p) if c}
        out = np.zeros(self.dim, dtype=np.int64)
        for k, c in self.bracket_vec(xv, yv).items():
            out[k] = c
        return out

    def ad_matrix(self, z: int) -> np.ndarray:
        """Dense matrix of ad(e_z); column i holds [e_z, e_i]."""
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i, v in self._table[z].items():
            for k, c in v.items():
                M[k, i] = c
        return M

    def ad_sparse(self, z: int) -> sp.csr_matrix:
        """ad(e_z) as a sparse matrix, same layout as :meth:`ad_matrix`."""
        rows, cols, vals = [], [], []
        for i, v in self._table[z].items():
            for k, c in v.items():
                rows.append(k)
                cols.append(i)
                vals.append(c)
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.dim, self.dim), dtype=np.int64)

    def lie_generators(self) -> list[int]:
        """Basis elements that generate L as a Lie algebra.

        Candidates are taken in increasing degree (basis order when ungraded);
        one is kept when it lies outside the subalgebra generated so far, which
        is grown to closure under the ad-action of the kept elements.
        """
        if self._generators is not None:
            return self._generators
        d, p = self.dim, self.p
        order = range(d) if self.grading is None else sorted(range(d), key=lambda i: (self.grading[i], i))
        E = Echelon(d, p)
        gens: list[int] = []
        ads: list[sp.csr_matrix] = []
        for g in order:
            if E.full:
                break
            unit = np.zeros((1, d), dtype=np.int64)
            unit[0, g] = 1
            old = E.R.copy()
            if not E.add(unit):
                continue
            gens.append(g)
            ads.append(self.ad_sparse(g))
            frontier = E.last_added
            if len(old):
                # the new generator acting on the old span
                E.add(_act(ads[-1], old, p))
                frontier = np.vstack([frontier, E.last_added])
            while len(frontier):
                E.add(np.vstack([_act(ad, frontier, p) for ad in ads]))
                frontier = E.last_added
        self._generators = gens
        return gens

    def structure_tensor(self) -> np.ndarray:
        T = np.zeros((self.dim,) * 3, dtype=np.int64)
        for i, row in enumerate(self._table):
            for j, v in row.items():
                for k, c in v.items():
                    T[i, j, k] = c
        return T

    def items(self):
        """Yield ``(i, j, [e_i, e_j])`` for i < j with nonzero bracket."""
        for i, row in enumerate(self._table):
            for j in sorted(row):
                if j > i:
                    yield i, j, row[j]

    # identities ---------------------------------------------------------------
    def jacobiator(self, i: int, j: int, k: int) -> Vec:
        p = self.p
        out: Vec = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, v in self.bracket_basis(a, b).items():
                _axpy(out, v, self.bracket_basis(l, c), p)
        return out

    def check_jacobi(self, exhaustive: bool | None = None, samples: int = SAMPLED_TRIPLES, seed: int = 0) -> None:
        """Raise :class:`ValidationError` on the first failing basis triple."""
        d = self.dim
        if exhaustive is None:
            exhaustive = d <= EXHAUSTIVE_DIM
        if exhaustive:
            for i in range(d):
                for j in range(i + 1, d):
                    for k in range(j + 1, d):
                        if self.jacobiator(i, j, k):
                            raise ValidationError(f"{self.name}: Jacobi fails on {(i, j, k)}")
        else:
            rng = np.random.default_rng(seed)
            for i, j, k in rng.integers(0, d, size=(samples, 3)).tolist():
                if self.jacobiator(i, j, k):
                    raise ValidationError(f"{self.name}: Jacobi fails on {(i, j, k)}")

    def check_antisymmetry(self) -> None:
        p = self.p
        for i, row in enumerate(self._table):
            if i in row:
                raise ValidationError(f"[e_{i}, e_{i}] != 0")
            for j, v in row.items():
                back = self._table[j].get(i, {})
                if {k: (-c) % p for k, c in v.items()} != back:
                    raise ValidationError(f"antisymmetry fails at {(i, j)}")

    def check_grading(self) -> None:
        if self.grading is None:
            return
        g = self.grading
        for i, j, v in self.items():
            for k in v:
                if g[k] != g[i] + g[j]:
                    raise ValidationError(f"{self.name}: [e_{i}, e_{j}] leaves degree {g[i] + g[j]}")

    def validate(self, exhaustive: bool | None = None) -> None:
        self.check_antisymmetry()
        self.check_grading()
        self.check_jacobi(exhaustive)

    # structure ----------------------------------------------------------------
    def bracket_span(self) -> FpMatrix:
        """Matrix whose rows are the nonzero brackets [e_i, e_j], i < j."""
        return FpMatrix.from_rows(self.field, self.dim, (v for _, _, v in self.items()))

    def derived_subalgebra(self) -> "LieAlgebra":
        return self.subalgebra(self.bracket_span(), suffix="'")

    def is_perfect(self) -> bool:
        return self.bracket_span().rank() == self.dim

    def is_abelian(self) -> bool:
        return not any(self._table)

    def diagonal_elements(self) -> dict[int, tuple[int, ...]]:
        """Basis elements h with ad(h) diagonal; maps h to its eigenvalues."""
        out = {}
        for h, row in enumerate(self._table):
            eig = [0] * self.dim
            ok = True
            for i, v in row.items():
                if len(v) != 1 or i not in v:
                    ok = False
                    break
                eig[i] = v[i]
            if ok and row:
                out[h] = tuple(eig)
        return out

    def subalgebra(self, rows: FpMatrix, suffix: str = "") -> "LieAlgebra":
        """The subalgebra spanned by ``rows``, in its reduced row-echelon basis.

        When the span is a coordinate subspace the original labels and degrees
        are kept.
        """
        R, piv = rows.rref()
        k = R.rows
        if k == self.dim:
            return self
        basis = [R.row(i) for i in range(k)]
        pos = {c: i for i, c in enumerate(piv)}
        brackets = {}
        for a in range(k):
            for b in range(a + 1, k):
                v = self.bracket_vec(basis[a], basis[b])
                coords = {pos[c]: val for c, val in v.items() if c in pos}
                # membership: recombining the pivot coordinates must give v back
                check: Vec = {}
                for i, c in coords.items():
                    _axpy(check, c, basis[i], self.p)
                if check != v:
                    raise ValidationError("the span is not closed under the bracket")
                if coords:
                    brackets[(a, b)] = coords
        coordinate = all(len(r) == 1 for r in basis)
        labels = [self.labels[piv[i]] if coordinate else f"s{i}" for i in range(k)]
        grading = None
        if self.grading is not None:
            degs = []
            for r in basis:
                ds = {self.grading[c] for c in r}
                if len(ds) != 1:
                    break
                degs.append(ds.pop())
            else:
                grading = degs
        desc = dict(self.descriptor)
        desc["derived"] = desc.get("derived", 0) + 1 if suffix == "'" else desc.get("derived", 0)
        return LieAlgebra(self.p, labels, brackets, grading, desc)

    # serialization --------------------------------------------------------------
    def to_json(self) -> dict:
        bracket = [[i, j, k, c] for i, j, v in self.items() for k, c in sorted(v.items())]
        doc = {"prime": self.p, "dim": self.dim, "labels": list(self.labels), "bracket": bracket, "descriptor": self.descriptor}
        if self.grading is not None:
            doc["grading"] = list(self.grading)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict, validate: bool = True) -> "LieAlgebra":
        if doc.get("dim") != len(doc["labels"]):
            raise ValidationError("dim does not match the number of labels")
        br: dict = {}
        for i, j, k, c in doc["bracket"]:
            br.setdefault((i, j), {})[k] = c
        L = cls(doc["prime"], doc["labels"], br, doc.get("grading"), doc.get("descriptor"))
        if validate:
            L.validate()
        return L

    @classmethod
    def loads(cls, text: str) -> "LieAlgebra":
        return cls.from_json(json.loads(text))

    def same_structure(self, other: "LieAlgebra") -> bool:
        return self.p == other.p and self.dim == other.dim and self._table == other._table

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name}, dim={self.dim}, p={self.p})"


def _act(ad: sp.csr_matrix, X: np.ndarray, p: int) -> np.ndarray:
    """Rows of ``X`` mapped by ``ad`` (x -> ad x), reduced mod p without int64 overflow."""
    width = int(np.diff(ad.indptr).max(initial=0))
    step = max(1, (2**63 - 1) // max((p - 1) ** 2, 1) - 1)
    if width <= step:
        return np.ascontiguousarray((ad @ X.T).T % p)
    out = np.zeros((X.shape[0], ad.shape[0]), dtype=np.int64)
    csc = ad.tocsc()
    for s in range(0, ad.shape[1], step):
        out = (out + (csc[:, s:s + step] @ X[:, s:s + step].T).T) % p
    return np.ascontiguousarray(out)

