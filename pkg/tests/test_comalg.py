import json

import numpy as np
import pytest

from modcartan.comalg import (
    CommAlgebra,
    CyclicComplex,
    derivations,
    divided_powers,
    ground_field,
    hc1,
    kaehler_omega1,
    leibniz_defect,
    tensor,
    truncated_poly,
    unit_plus_nil,
)
from modcartan.errors import FieldMismatchError, ValidationError


def fleet():
    yield ground_field(5)
    yield truncated_poly(2, 5)
    yield truncated_poly(5, 5)
    yield truncated_poly(7, 7)
    for k in (1, 2, 3):
        yield unit_plus_nil(k, 5)
    yield divided_powers(1, (1,), 5)
    yield divided_powers(2, (1, 1), 5)
    yield tensor(divided_powers(1, (1,), 5), truncated_poly(2, 5))


def test_divided_power_products():
    A = divided_powers(1, (2,), 5)  # x^(0) .. x^(24)
    x1, x2, x3 = (A.unit_vector() * 0 for _ in range(3))
    x1[1] = x2[2] = x3[3] = 1
    # x^(1) x^(2) = C(3,1) x^(3)
    assert np.array_equal(A.multiply(x1, x2), 3 * x3 % 5)
    top = np.zeros(A.dim, dtype=np.int64)
    top[-1] = 1
    assert not A.multiply(x1, top).any()


@pytest.mark.parametrize("A", list(fleet()), ids=lambda A: A.name)
def test_structure_is_valid(A):
    A.validate(exhaustive=True)


def test_tensor_unit_and_dim():
    A, B = truncated_poly(3, 7), unit_plus_nil(2, 7)
    T = tensor(A, B)
    assert T.dim == 9
    T.validate(exhaustive=True)
    with pytest.raises(FieldMismatchError):
        tensor(truncated_poly(2, 5), truncated_poly(2, 7))


def test_derivations():
    assert derivations(ground_field(5)).dim == 0
    D = derivations(divided_powers(1, (1,), 5))
    assert D.dim == 5
    assert all(D.satisfies_leibniz(M) for M in D.matrices)
    assert D.closed_under_commutator()
    assert derivations(unit_plus_nil(2, 7)).dim == 4


def test_leibniz_defect_detects_non_derivation():
    A = truncated_poly(3, 5)
    ident = np.eye(3, dtype=np.int64)
    assert leibniz_defect(A, ident) > 0
    assert leibniz_defect(A, np.zeros((3, 3), dtype=np.int64)) == 0


def test_hc1_known_values():
    assert hc1(truncated_poly(5, 5)) == 1
    assert hc1(truncated_poly(7, 7)) == 1
    for k in (1, 2, 3):
        assert hc1(unit_plus_nil(k, 5)) == k * (k - 1) // 2


@pytest.mark.parametrize("A", list(fleet()), ids=lambda A: A.name)
def test_hc1_two_routes(A):
    C = CyclicComplex(A)
    assert C.composite_is_zero()
    assert C.hc1() == kaehler_omega1(A).dim_quotient


def test_hc1_ground_field_is_zero():
    assert hc1(ground_field(7)) == 0


class TestJSON:
    def test_round_trip(self):
        A = unit_plus_nil(3, 7)
        B = CommAlgebra.loads(A.dumps())
        assert B.same_structure(A)

    def test_rejects_dim_mismatch(self):
        doc = truncated_poly(3, 5).to_json()
        doc["dim"] = 4
        with pytest.raises(ValidationError):
            CommAlgebra.from_json(doc)

    def test_rejects_non_associative(self):
        # xx = x + y, xy = y, yy = x: (xy)y = x but x(yy) = x + y
        doc = {"prime": 5, "dim": 3, "labels": ["1", "x", "y"], "unit": [1, 0, 0], "mult": []}
        for i in range(3):
            doc["mult"] += [[0, i, i, 1], [i, 0, i, 1]] if i else [[0, 0, 0, 1]]
        doc["mult"] += [[1, 1, 1, 1], [1, 1, 2, 1], [1, 2, 2, 1], [2, 1, 2, 1], [2, 2, 1, 1]]
        with pytest.raises(ValidationError):
            CommAlgebra.loads(json.dumps(doc))

    def test_rejects_non_commutative(self):
        doc = {"prime": 5, "dim": 2, "labels": ["1", "x"], "unit": [1, 0], "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 2]]}
        with pytest.raises(ValidationError):
            CommAlgebra.loads(json.dumps(doc))
