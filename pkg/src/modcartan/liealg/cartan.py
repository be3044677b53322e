"""Cartan-type families W_n(m), H, K over divided powers algebras."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..comalg import divided_powers
from ..errors import PreconditionError
from ..exactfield.field import PrimeField
from ..monomials import DividedPowerBasis
from .algebra import LieAlgebra, _axpy
from .amodule import AModuleLie, free_lie_module


def witt(n: int, heights: Sequence[int], p: int) -> AModuleLie:
    """Generalized Jacobson–Witt algebra W_n(m) as a free O_n(m)-module on d_1..d_n.

    Basis vector ``i * p**|m| + idx(a)`` is x^(a) d_i, of degree |a| - 1.
    """
    PrimeField(p)
    heights = tuple(heights)
    A = divided_powers(n, heights, p)
    mono = A.monomials
    d = len(mono)
    partials = []
    for i in range(n):
        D = np.zeros((d, d), dtype=np.int64)
        for idx, a in enumerate(mono.exps):
            b = mono.partial(a, i)
            if b is not None:
                D[mono.index[b], idx] = 1
        partials.append(D)
    grading = [sum(a) - 1 for _ in range(n) for a in mono.exps]
    desc = {"family": "W", "n": n, "m": list(heights), "p": p}
    return free_lie_module(A, partials, [f"d{i + 1}" for i in range(n)], grading=grading, descriptor=desc)


def _poly_terms(mono: DividedPowerBasis, terms):
    """Sum of coef * (x^(a) x^(b)) over (coef, a, b); returns {exponent: coef}."""
    p = mono.p
    out: dict = {}
    for coef, a, b in terms:
        if a is None or b is None or coef % p == 0:
            continue
        prod = mono.mul(a, b)
        if prod is None:
            continue
        c, e = prod
        out[e] = (out.get(e, 0) + coef * c) % p
    return {e: c for e, c in out.items() if c}


def poisson_bracket(mono: DividedPowerBasis, a, b) -> dict:
    """{x^(a), x^(b)} = sum_i d_i f d_(i+n) g - d_(i+n) f d_i g on O_2n(m)."""
    n = mono.nvars // 2
    terms = []
    for i in range(n):
        terms.append((1, mono.partial(a, i), mono.partial(b, i + n)))
        terms.append((-1, mono.partial(a, i + n), mono.partial(b, i)))
    return _poly_terms(mono, terms)


def contact_bracket(mono: DividedPowerBasis, a, b) -> dict:
    """<f, g> = Δ(f) d_z g - Δ(g) d_z f + sum_(i<=n) (d_i f d_(i+n) g - d_(i+n) f d_i g).

    z is the last variable and Δ(x^(a)) = (2 - sum_(i<=2n) a_i) x^(a).
    """
    p = mono.p
    n = (mono.nvars - 1) // 2
    z = 2 * n
    delta_a = (2 - sum(a[:z])) % p
    delta_b = (2 - sum(b[:z])) % p
    terms = [(delta_a, a, mono.partial(b, z)), (-delta_b, b, mono.partial(a, z))]
    for i in range(n):
        terms.append((1, mono.partial(a, i), mono.partial(b, i + n)))
        terms.append((-1, mono.partial(a, i + n), mono.partial(b, i)))
    return _poly_terms(mono, terms)


def _monomial_algebra(mono, exps, bracket, degree, desc) -> LieAlgebra:
    index = {a: i for i, a in enumerate(exps)}
    brackets = {}
    p = mono.p
    for i, a in enumerate(exps):
        for j in range(i + 1, len(exps)):
            vec = {}
            for e, c in bracket(mono, a, exps[j]).items():
                if e in index:
                    vec[index[e]] = c
            if vec:
                brackets[(i, j)] = vec
    labels = [mono.label(a) for a in exps]
    return LieAlgebra(p, labels, brackets, [degree(a) for a in exps], desc)


def _perfect_core(L: LieAlgebra) -> LieAlgebra:
    while True:
        D = L.derived_subalgebra()
        if D.dim == L.dim:
            return L
        L = D


def hamiltonian(heights: Sequence[int], p: int) -> LieAlgebra:
    """Simple Hamiltonian algebra: perfect core of the Poisson algebra O_2n(m)/K·1.

    Degree of x^(a) is |a| - 2; dimension p^|m| - 2 in the standard case.
    """
    heights = tuple(heights)
    if len(heights) % 2 or not heights:
        raise PreconditionError("Hamiltonian algebras need an even, nonzero number of variables")
    mono = DividedPowerBasis(heights, p)
    exps = [a for a in mono.exps if any(a)]
    desc = {"family": "H", "n": len(heights) // 2, "m": list(heights), "p": p}
    P = _monomial_algebra(mono, exps, poisson_bracket, lambda a: sum(a) - 2, desc)
    return _perfect_core(P)


def contact(n: int, heights: Sequence[int], p: int) -> LieAlgebra:
    """Contact algebra K(2n+1; m) on O_(2n+1)(m) with the Lagrange bracket.

    ``heights`` has one entry per variable (length 2n+1). Degrees: x_i has 1,
    the last variable has 2, and x^(a) sits in degree deg(a) - 2. When
    2n + 1 ≡ -3 (mod p) the derived algebra is returned.
    """
    heights = tuple(heights)
    if len(heights) != 2 * n + 1:
        raise PreconditionError(
            f"contact({n}, ...) needs {2 * n + 1} exponent heights (one per variable), got {len(heights)}"
        )
    mono = DividedPowerBasis(heights, p)
    desc = {"family": "K", "n": n, "m": list(heights), "p": p}

    def degree(a):
        return sum(a[:-1]) + 2 * a[-1] - 2

    L = _monomial_algebra(mono, list(mono.exps), contact_bracket, degree, desc)
    if (2 * n + 4) % p == 0:
        L = L.derived_subalgebra()
    return L


def check_witt_identity(LA: AModuleLie) -> bool:
    """[D, aD] = D(a) D for every generator D and basis element a of A."""
    p, d = LA.p, LA.algebra.dim
    for D in LA.a_basis():
        for a in range(d):
            e = np.zeros(d, dtype=np.int64)
            e[a] = 1
            lhs = LA.lie.bracket_vec(D, LA.act(a, D))
            Da = LA.apply(D, e)
            rhs: dict = {}
            for b, c in enumerate(Da):
                if c:
                    _axpy(rhs, int(c), LA.act(b, D), p)
            if lhs != rhs:
                return False
    return True
