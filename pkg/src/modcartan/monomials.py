"""Divided-power monomials x^(a) with 0 <= a_i < p**m_i."""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .config import check_cap, limits
from .exactfield.field import PrimeField


class DividedPowerBasis:
    """Exponent bookkeeping for the divided powers algebra O_n(m).

    Basis order is lexicographic in the exponent tuple (last variable fastest).
    """

    def __init__(self, exponents: tuple[int, ...], p: int):
        PrimeField(p)
        if any(m < 1 for m in exponents):
            raise ValueError("exponent heights must be positive")
        self.p = p
        self.heights = tuple(exponents)
        self.bounds = tuple(p**m for m in exponents)
        size = 1
        for b in self.bounds:
            size *= b
        check_cap(size, limits().algebra_dim, f"O_{len(exponents)}{self.heights}")
        self.nvars = len(exponents)
        self.exps = list(itertools.product(*(range(b) for b in self.bounds)))
        self.index = {a: i for i, a in enumerate(self.exps)}

    def __len__(self) -> int:
        return len(self.exps)

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(b - 1 for b in self.bounds)

    def label(self, a) -> str:
        return "".join(f"x{i + 1}^({ai})" for i, ai in enumerate(a))

    def mul(self, a, b) -> tuple[int, tuple[int, ...]] | None:
        """``x^(a) x^(b) = coef * x^(a+b)``; ``None`` when the product vanishes."""
        coef = 1
        out = []
        for ai, bi, bound in zip(a, b, self.bounds):
            s = ai + bi
            if s >= bound:
                return None
            coef = coef * binom_mod(s, ai, self.p) % self.p
            if coef == 0:
                return None
            out.append(s)
        return coef, tuple(out)

    def partial(self, a, i: int) -> tuple[int, ...] | None:
        """Special derivation: d_i x^(a) = x^(a - e_i)."""
        if a[i] == 0:
            return None
        b = list(a)
        b[i] -= 1
        return tuple(b)


@lru_cache(maxsize=1 << 16)
def binom_mod(n: int, k: int, p: int) -> int:
    return comb(n, k) % p
