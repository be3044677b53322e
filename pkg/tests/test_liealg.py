import numpy as np
import pytest

from modcartan.comalg import truncated_poly, unit_plus_nil
from modcartan.errors import FieldMismatchError, PreconditionError, ValidationError
from modcartan.exactfield import FpMatrix
from modcartan.liealg import (
    LieAlgebra,
    abelian,
    check_witt_identity,
    contact,
    current,
    direct_sum,
    hamiltonian,
    heisenberg,
    is_perfect,
    semidirect,
    sl2,
    witt,
)


def constructor_outputs():
    yield abelian(3, 5)
    yield heisenberg(7)
    yield sl2(5)
    yield sl2(7)
    yield witt(1, (1,), 5).lie
    yield witt(1, (2,), 5).lie
    yield witt(2, (1, 1), 5).lie
    yield hamiltonian((1, 1), 5)
    yield contact(1, (1, 1, 1), 5)
    yield current(sl2(5), unit_plus_nil(2, 5))
    yield direct_sum(sl2(5), heisenberg(5))


@pytest.mark.parametrize("L", list(constructor_outputs()), ids=lambda L: L.name)
def test_identities(L):
    L.check_antisymmetry()
    L.check_jacobi()
    if L.grading is not None:
        L.check_grading()


@pytest.mark.parametrize(
    "n, m, p, dim",
    [(1, (1,), 5, 5), (1, (2,), 5, 25), (2, (1, 1), 5, 50), (1, (1,), 7, 7), (2, (1, 1), 7, 98)],
)
def test_witt_dimensions(n, m, p, dim):
    LA = witt(n, m, p)
    assert LA.lie.dim == dim
    assert LA.r == n
    assert check_witt_identity(LA)
    LA.check_compatibility()


def test_witt_rank_one_bracket():
    # [x^(a) D, x^(b) D] = (C(a+b-1, a) - C(a+b-1, b)) x^(a+b-1) D
    L = witt(1, (1,), 7).lie
    assert L.bracket_basis(0, 2) == {1: 1}
    assert L.bracket_basis(2, 3) == {4: 6 - 4}


def test_hamiltonian_and_contact():
    H = hamiltonian((1, 1), 5)
    assert H.dim == 23 and is_perfect(H)
    K = contact(1, (1, 1, 1), 5)
    assert K.dim == 125 and is_perfect(K)
    with pytest.raises(PreconditionError):
        hamiltonian((1, 1, 1), 5)


def test_current_perfect():
    assert is_perfect(current(sl2(7), truncated_poly(3, 7)))
    assert is_perfect(current(witt(1, (1,), 5).lie, unit_plus_nil(2, 5)))
    assert not is_perfect(heisenberg(5))
    with pytest.raises(FieldMismatchError):
        current(sl2(5), truncated_poly(2, 7))


def test_sl2_derived_and_diagonal():
    L = sl2(11)
    assert L.is_perfect() and not L.is_abelian()
    assert 1 in L.diagonal_elements()


class TestSemidirect:
    def test_standard_representation(self):
        e = [[0, 1], [0, 0]]
        h = [[1, 0], [0, -1]]
        f = [[0, 0], [1, 0]]
        L = semidirect(sl2(5), abelian(2, 5), [e, h, f])
        assert L.dim == 5
        L.validate()
        assert L.bracket_basis(3, 0) == {0: 1}
        assert L.bracket_basis(3, 1) == {1: 4}

    def test_rejects_non_derivation(self):
        with pytest.raises(ValidationError, match="derivation"):
            semidirect(abelian(1, 5), heisenberg(5), [np.eye(3, dtype=np.int64)])

    def test_rejects_non_representation(self):
        a = [[0, 1], [0, 0]]
        b = [[0, 0], [1, 0]]
        with pytest.raises(ValidationError, match="representation"):
            semidirect(abelian(2, 5), abelian(2, 5), [a, b])

    def test_rejects_wrong_count(self):
        with pytest.raises(ValidationError):
            semidirect(sl2(5), abelian(2, 5), [np.eye(2)])


class TestJSON:
    def test_round_trip(self):
        L = witt(1, (1,), 7).lie
        M = LieAlgebra.loads(L.dumps())
        assert M.same_structure(L) and M.grading == L.grading

    def test_rejects_jacobi_failure(self):
        doc = abelian(3, 5).to_json()
        doc["bracket"] = [[0, 1, 2, 1], [1, 2, 1, 1]]
        with pytest.raises(ValidationError):
            LieAlgebra.from_json(doc)

    def test_rejects_inconsistent_antisymmetry(self):
        with pytest.raises(ValidationError):
            LieAlgebra(5, ["a", "b"], {(0, 1): {0: 1}, (1, 0): {0: 1}})


def test_subalgebra_of_coordinate_span():
    L = sl2(7)
    S = L.subalgebra(FpMatrix.from_dense(7, [[1, 0, 0], [0, 1, 0]]))
    assert S.dim == 2 and list(S.labels) == ["e", "h"]


def _closure_dim(L, gens):
    """Dimension of the span of iterated brackets of ``gens``, by plain dense ranks."""
    p = L.p
    ads = [L.ad_matrix(g) for g in gens]
    V = np.eye(L.dim, dtype=np.int64)[gens]
    r = FpMatrix.from_dense(p, V).rank()
    while True:
        V = np.vstack([V] + [(A @ V.T).T % p for A in ads])
        V = FpMatrix.from_dense(p, V).row_space().vectors()
        if len(V) == r:
            return r
        r = len(V)


@pytest.mark.parametrize("L", [sl2(5), heisenberg(5), witt(1, (1,), 5).lie, witt(2, (1, 1), 5).lie, hamiltonian((1, 1), 5)], ids=lambda L: L.name)
def test_lie_generators_generate(L):
    gens = L.lie_generators()
    assert _closure_dim(L, gens) == L.dim
    assert len(gens) < L.dim or L.dim <= 3
