import numpy as np
import pytest

from modcartan.comalg import truncated_poly, unit_plus_nil
from modcartan.derham import build_complex, cohomology_dims, lemma_check, skryabin_check, tensor_pair
from modcartan.errors import PreconditionError
from modcartan.liealg import AModuleLie, free_lie_module, witt


@pytest.mark.parametrize("n, m, p", [(1, (1,), 5), (1, (1,), 7), (1, (2,), 5), (2, (1, 1), 5)])
def test_complex_composite_zero(n, m, p):
    C = build_complex(witt(n, m, p))
    assert C.composite_is_zero()


@pytest.mark.parametrize("m, p", [((1,), 5), ((1,), 7), ((2,), 5)])
def test_skryabin_rank_one(m, p):
    rep = skryabin_check(witt(1, m, p))
    assert rep.lhs == rep.rhs == 1


def test_skryabin_rank_two():
    rep = skryabin_check(witt(2, (1, 1), 5))
    assert rep.lhs == 0 and rep.passed


def test_zero_lie_algebra():
    # nothing to differentiate along: H^0 is all of A
    C = build_complex(free_lie_module(truncated_poly(3, 5), [], []))
    assert cohomology_dims(C) == (3, 0)


@pytest.mark.parametrize("B", [truncated_poly(2, 5), unit_plus_nil(2, 5)], ids=lambda B: B.name)
def test_lemma(B):
    LA = witt(1, (1,), 5)
    rep = lemma_check(LA, B)
    small = cohomology_dims(build_complex(LA))
    assert rep.lhs == [h * B.dim for h in small]
    assert rep.passed


def test_tensor_pair_shape():
    T = tensor_pair(witt(1, (1,), 5), truncated_poly(2, 5))
    assert T.algebra.dim == 10 and T.r == 1 and T.lie.dim == 10


def test_rejects_incompatible_pair():
    LA = witt(1, (1,), 5)
    bad = AModuleLie(LA.lie, LA.algebra, (np.zeros((5, 5), dtype=np.int64),), LA.generator_labels)
    with pytest.raises(PreconditionError):
        build_complex(bad)
