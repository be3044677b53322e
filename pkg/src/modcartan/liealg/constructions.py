"""Small fixtures and generic constructions: currents and semidirect sums."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..comalg import CommAlgebra
from ..config import check_cap, limits
from ..errors import FieldMismatchError, ValidationError
from .algebra import LieAlgebra


def abelian(n: int, p: int) -> LieAlgebra:
    return LieAlgebra(p, [f"e{i + 1}" for i in range(n)], {}, [0] * n, {"family": "abelian", "n": n, "p": p})


def heisenberg(p: int) -> LieAlgebra:
    """Three-dimensional Heisenberg algebra: [e1, e2] = e3."""
    return LieAlgebra(p, ["e1", "e2", "e3"], {(0, 1): {2: 1}}, [1, 1, 2], {"family": "heisenberg", "p": p})


def sl2(p: int) -> LieAlgebra:
    """sl_2 in the basis e, h, f."""
    br = {(1, 0): {0: 2}, (1, 2): {2: -2}, (0, 2): {1: 1}}
    return LieAlgebra(p, ["e", "h", "f"], br, [1, 0, -1], {"family": "sl2", "p": p})


def current(L: LieAlgebra, B: CommAlgebra) -> LieAlgebra:
    """L (x) B with [x (x) a, y (x) b] = [x, y] (x) ab; basis index l * dim B + b."""
    if L.p != B.p:
        raise FieldMismatchError(f"cannot combine F_{L.p} and F_{B.p}")
    p, db = L.p, B.dim
    check_cap(L.dim * db, limits().algebra_dim, "current algebra")
    brackets = {}
    for i, j, v in L.items():
        for (a, b), w in B.mult.items():
            vec = {}
            for k, c in v.items():
                for l, d in w.items():
                    vec[k * db + l] = c * d % p
            brackets[(i * db + a, j * db + b)] = vec
    labels = [f"{x} ⊗ {y}" for x in L.labels for y in B.labels]
    grading = [g for g in L.grading for _ in range(db)] if L.grading is not None else None
    desc = {"family": "current", "lie": L.name, "algebra": B.name, "p": p}
    return LieAlgebra(p, labels, brackets, grading, desc)


def semidirect(S: LieAlgebra, M: LieAlgebra, action: Sequence) -> LieAlgebra:
    """M ⋊ S on M ⊕ S (M first) with [(m,s),(m',s')] = ([m,m'] + ρ(s)m' - ρ(s')m, [s,s']).

    ``action[i]`` is the matrix of ρ(s_i) on M, columns being images of the
    basis of M. It must act by derivations and be a representation.
    """
    if S.p != M.p:
        raise FieldMismatchError(f"cannot combine F_{S.p} and F_{M.p}")
    p, dm, ds = S.p, M.dim, S.dim
    if len(action) != ds:
        raise ValidationError("need one action matrix per basis element of S")
    rho = [np.asarray(getattr(a, "to_dense", lambda: a)(), dtype=np.int64) % p for a in action]
    for r in rho:
        if r.shape != (dm, dm):
            raise ValidationError("action matrices must be dim M x dim M")
    T = M.structure_tensor()
    for idx, r in enumerate(rho):
        # r[m, m'] = [r m, m'] + [m, r m']
        lhs = np.einsum("ijk,lk->ijl", T, r) % p
        rhs = (np.einsum("ki,kjl->ijl", r, T) + np.einsum("kj,ikl->ijl", r, T)) % p
        if not np.array_equal(lhs, rhs):
            raise ValidationError(f"ρ(s_{idx}) is not a derivation of M")
    for a in range(ds):
        for b in range(a + 1, ds):
            comm = (rho[a] @ rho[b] - rho[b] @ rho[a]) % p
            target = np.zeros((dm, dm), dtype=np.int64)
            for k, c in S.bracket_basis(a, b).items():
                target = (target + c * rho[k]) % p
            if not np.array_equal(comm, target):
                raise ValidationError(f"ρ is not a representation on (s_{a}, s_{b})")
    brackets = {}
    for i, j, v in M.items():
        brackets[(i, j)] = dict(v)
    for a, b, v in S.items():
        brackets[(dm + a, dm + b)] = {dm + k: c for k, c in v.items()}
    for a in range(ds):
        for m in range(dm):
            col = {k: int(c) for k, c in enumerate(rho[a][:, m]) if c}
            if col:
                brackets[(dm + a, m)] = col
    labels = [f"m:{x}" for x in M.labels] + [f"s:{x}" for x in S.labels]
    desc = {"family": "semidirect", "ideal": M.name, "acting": S.name, "p": p}
    return LieAlgebra(p, labels, brackets, None, desc)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    zero = [np.zeros((L1.dim, L1.dim), dtype=np.int64)] * L2.dim
    return semidirect(L2, L1, zero)
