import numpy as np
import pytest

from modcartan.comalg import truncated_poly, unit_plus_nil
from modcartan.errors import PreconditionError
from modcartan.exactfield import FpMatrix
from modcartan.invariants import (
    InvariantFormSpace,
    boundary_maps,
    ce_homology,
    hom_condition,
    invariant_forms,
    sym_coinvariants_dim,
    verify_current_h2,
)
from modcartan.liealg import LieAlgebra, abelian, free_lie_module, hamiltonian, heisenberg, sl2, witt

SMALL = [
    (abelian(3, 5), 6),
    (heisenberg(5), 3),
    (sl2(7), 1),
    (witt(1, (1,), 5).lie, 0),
    (hamiltonian((1, 1), 5), 1),
]


@pytest.mark.parametrize("L, expected", SMALL, ids=lambda x: getattr(x, "name", str(x)))
def test_form_dimensions(L, expected):
    F = invariant_forms(L)
    assert F.dimension == expected
    assert all(F.is_invariant(W) for W in F.basis)


@pytest.mark.parametrize("L, expected", SMALL, ids=lambda x: getattr(x, "name", str(x)))
def test_coinvariant_duality(L, expected):
    assert sym_coinvariants_dim(L) == expected
    assert sym_coinvariants_dim(L, use_grading=True) == expected


@pytest.mark.parametrize("L", [L for L, _ in SMALL] + [witt(1, (2,), 5).lie], ids=lambda L: L.name)
def test_graded_reduction_is_sound(L):
    assert invariant_forms(L, use_grading=True).dimension == invariant_forms(L).dimension


def test_killing_form_is_a_multiple():
    # Killing form of sl2 in (e, h, f) is 4*[[0,0,1],[0,2,0],[1,0,0]]
    F = invariant_forms(sl2(7))
    W = F.basis[0].to_dense()
    kill = np.array([[0, 0, 4], [0, 8, 0], [4, 0, 0]]) % 7
    c = kill[0, 2] * pow(int(W[0, 2]), -1, 7) % 7
    assert np.array_equal(c * W % 7, kill)


def test_scaled_basis_keeps_dimension():
    # rescale e -> 2e in sl2: [h, 2e] = 2(2e), [2e, f] = 2h
    p = 7
    L = LieAlgebra(p, ["e'", "h", "f"], {(1, 0): {0: 2}, (1, 2): {2: p - 2}, (0, 2): {1: 2}})
    assert invariant_forms(L).dimension == 1


def test_non_invariant_rejected():
    F = invariant_forms(sl2(5))
    assert not F.is_invariant(np.eye(3, dtype=np.int64))
    assert not F.is_invariant(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


@pytest.mark.parametrize(
    "L, h1, h2",
    [(abelian(3, 5), 3, 3), (heisenberg(5), 2, 2), (sl2(7), 0, 0), (witt(1, (1,), 5).lie, 0, 1), (hamiltonian((1, 1), 5), 0, 3)],
    ids=lambda x: getattr(x, "name", str(x)),
)
def test_ce_homology(L, h1, h2):
    rep = ce_homology(L)
    assert rep.composite_zero
    assert (rep.dim_h1, rep.dim_h2) == (h1, h2)


def test_boundary_composite_zero_witt2():
    d2, d3 = boundary_maps(witt(2, (1, 1), 5).lie)
    assert (d2 @ d3).is_zero()


@pytest.mark.parametrize("B", [truncated_poly(2, 5), unit_plus_nil(2, 5)], ids=lambda B: B.name)
def test_current_h2(B):
    rep = verify_current_h2(sl2(5), B)
    assert rep.passed, rep.to_json()


def test_current_h2_needs_perfect():
    with pytest.raises(PreconditionError):
        verify_current_h2(heisenberg(5), truncated_poly(2, 5))


class TestHomCondition:
    @pytest.mark.parametrize("n, m", [(1, (1,)), (1, (2,)), (2, (1, 1))])
    def test_witt(self, n, m):
        assert hom_condition(witt(n, m, 5))

    def test_euler_counterexample(self):
        # A = K[x]/(x^5), L = A·E with E(x^k) = k x^k; dE lands in the maximal ideal
        A = truncated_poly(5, 5)
        LA = free_lie_module(A, [np.diag(np.arange(5))], ["E"])
        assert not hom_condition(LA)

    def test_empty(self):
        assert hom_condition(free_lie_module(truncated_poly(3, 5), [], []))


def test_evaluate():
    F = invariant_forms(sl2(5))
    W = F.basis[0].to_dense()
    assert F.evaluate(0, [1, 0, 0], [0, 0, 1]) == W[0, 2]
    assert isinstance(F, InvariantFormSpace)
