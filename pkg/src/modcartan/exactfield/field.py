"""Prime fields F_p and their scalars."""
from __future__ import annotations

from functools import lru_cache

from ..errors import FieldMismatchError

# Products of two residues must fit in int64 for the elimination kernels.
MAX_PRIME = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p for a prime ``p > 3``.

    Fields are interned: ``PrimeField(5) is PrimeField(5)``.
    """

    __slots__ = ("p",)

    def __new__(cls, p: int):
        return _field(int(p))

    @classmethod
    def _make(cls, p: int) -> "PrimeField":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p <= 3:
            raise ValueError(f"characteristic {p} is excluded; need p > 3")
        if p > MAX_PRIME:
            raise ValueError(f"p = {p} exceeds the supported maximum {MAX_PRIME}")
        obj = object.__new__(cls)
        obj.p = p
        return obj

    def __call__(self, value: int) -> "FpScalar":
        return FpScalar(value, self)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __reduce__(self):
        return (PrimeField, (self.p,))

    def zero(self) -> "FpScalar":
        return FpScalar(0, self)

    def one(self) -> "FpScalar":
        return FpScalar(1, self)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def elements(self):
        return (FpScalar(a, self) for a in range(self.p))


@lru_cache(maxsize=None)
def _field(p: int) -> PrimeField:
    return PrimeField._make(p)


def as_field(p) -> PrimeField:
    return p if isinstance(p, PrimeField) else PrimeField(p)


def check_same_field(*ps: int) -> int:
    first = ps[0]
    for q in ps[1:]:
        if q != first:
            raise FieldMismatchError(f"objects over F_{first} and F_{q} cannot be combined")
    return first


class FpScalar:
    """An element of F_p; immutable."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.field = field
        self.value = int(value) % field.p

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            check_same_field(self.p, other.p)
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.value + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.value - o, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(o - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.value * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.field)

    def inverse(self) -> "FpScalar":
        return FpScalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.value * self.field.inv(o), self.field)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpScalar(pow(self.value, k, self.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"
