"""One test per acceptance criterion; each prints a PASS/FAIL line (exact integer equality)."""
import os

import numpy as np
import pytest
import scipy.sparse as sp

from modcartan import comalg, derham, invariants, liealg
from modcartan.comalg import CyclicComplex, hc1, kaehler_omega1, truncated_poly, unit_plus_nil
from modcartan.deform import DeformationData, classify_prolongable
from modcartan.exactfield import FpMatrix
from modcartan.invariants import ce_homology, invariant_forms, sym_coinvariants_dim

STRETCH = os.environ.get("MODCARTAN_STRETCH") == "1"
WITT = [(1, (1,)), (1, (2,)), (2, (1, 1))]


def test_criterion_01_witt_forms_vanish(record_criterion):
    got = {(n, m, p): invariant_forms(liealg.witt(n, m, p).lie, use_grading=True).dimension for p in (5, 7) for n, m in WITT}
    ok = all(v == 0 for v in got.values())
    assert record_criterion(1, "Jacobson-Witt forms vanish", ok, f"dims={sorted(got.values())}")


def fleet():
    p = 5
    yield liealg.abelian(3, p)
    yield liealg.heisenberg(p)
    yield liealg.sl2(p)
    yield liealg.sl2(7)
    for q in (5, 7):
        for n, m in WITT:
            yield liealg.witt(n, m, q).lie
    yield liealg.hamiltonian((1, 1), p)
    yield liealg.contact(1, (1, 1, 1), p)


def test_criterion_02_coinvariant_duality(record_criterion):
    pairs = []
    for L in fleet():
        big = L.dim > 60
        pairs.append((L.name, invariant_forms(L, use_grading=big).dimension, sym_coinvariants_dim(L, use_grading=big)))
    ok = all(a == b for _, a, b in pairs)
    assert record_criterion(2, "forms dual to Sym^2 coinvariants", ok, f"{len(pairs)} algebras")


def test_criterion_03_hc1(record_criterion):
    claims = [hc1(truncated_poly(p, p)) == 1 for p in (5, 7)]
    claims += [hc1(unit_plus_nil(k, 5)) == k * (k - 1) // 2 for k in (1, 2, 3)]
    algebras = [comalg.ground_field(5), truncated_poly(2, 5), truncated_poly(5, 5), truncated_poly(7, 7)]
    algebras += [unit_plus_nil(k, 5) for k in (1, 2, 3)] + [comalg.divided_powers(2, (1, 1), 5)]
    routes = [CyclicComplex(A).hc1() == kaehler_omega1(A).dim_quotient for A in algebras]
    ok = all(claims) and all(routes)
    assert record_criterion(3, "HC1 values and Omega^1/dA agreement", ok, f"claims={sum(claims)}/5 routes={sum(routes)}/{len(routes)}")


def test_criterion_04_current_h2(record_criterion):
    lies = [liealg.sl2(5), liealg.sl2(7), liealg.witt(1, (1,), 5).lie]
    reps = []
    for L in lies:
        for B in (truncated_poly(2, L.p), unit_plus_nil(2, L.p)):
            reps.append(invariants.verify_current_h2(L, B))
    ok = all(r.lhs == r.rhs for r in reps)
    assert record_criterion(4, "current-algebra H2 formula", ok, " ".join(f"{r.lhs}={r.rhs}" for r in reps))


def test_criterion_05_skryabin(record_criterion):
    reps = [derham.skryabin_check(liealg.witt(1, (1,), p)) for p in (5, 7)]
    top = derham.skryabin_check(liealg.witt(2, (1, 1), 5))
    ok = all(r.lhs == r.rhs for r in reps) and top.lhs == 0
    assert record_criterion(5, "H2 = H^1(C_A) in rank 1, H2 = 0 in rank 2", ok, f"{[(r.lhs, r.rhs) for r in reps]} W2={top.lhs}")


def test_criterion_06_lemma(record_criterion):
    LA = liealg.witt(1, (1,), 5)
    small = derham.cohomology_dims(derham.build_complex(LA))
    rows = []
    for B in (truncated_poly(2, 5), unit_plus_nil(2, 5)):
        big = derham.cohomology_dims(derham.build_complex(derham.tensor_pair(LA, B)))
        rows.append(list(big) == [h * B.dim for h in small])
    assert record_criterion(6, "C_A cohomology tensors with B", all(rows), f"base={small}")


def test_criterion_07_hamiltonian(record_criterion):
    d = invariant_forms(liealg.hamiltonian((1, 1), 5)).dimension
    assert record_criterion(7, "Hamiltonian form unique up to scalar", d == 1, f"dim={d}")


def test_criterion_08_contact_negative(record_criterion):
    dims = {p: invariant_forms(liealg.contact(1, (1, 1, 1), p), use_grading=True).dimension for p in (5, 7)}
    assert record_criterion(8, "K3 forms vanish over F5 and F7", all(v == 0 for v in dims.values()), f"dims={dims}")


def test_criterion_09_contact_positive(record_criterion):
    if not STRETCH:
        record_criterion(9, "K5 over F5 carries a form (stretch)", None, "skipped; set MODCARTAN_STRETCH=1")
        pytest.skip("stretch instance disabled")
    F = invariant_forms(liealg.contact(2, (1, 1, 1, 1, 1), 5), use_grading=True)
    d = F.dimension
    # the system used generators only; re-check against every basis element
    checked = d == 1 and F.is_invariant(F.basis[0]) and F.basis[0].rank() == 3125
    assert record_criterion(9, "K5 over F5 carries a form (stretch)", d == 1 and checked, f"dim={d} full_check={checked}")


def test_criterion_10_hom_condition(record_criterion):
    witts = [invariants.hom_condition(liealg.witt(n, m, p)) for p in (5, 7) for n, m in WITT]
    A = truncated_poly(5, 5)
    euler = liealg.free_lie_module(A, [np.diag(np.arange(5))], ["E"])
    counter = invariants.hom_condition(euler)
    ok = all(witts) and counter is False
    assert record_criterion(10, "Hom-condition: W yes, A*x d/dx no", ok, f"witt={sum(witts)}/6 counterexample={counter}")


def test_criterion_11_deformation(record_criterion):
    D = DeformationData.from_entries(liealg.abelian(2, 5), [(1, 0, 1, 1, 1)])
    got, want = classify_prolongable(D, 1).dimension, invariant_forms(D.at(1)).dimension
    L = liealg.sl2(5)
    triv = DeformationData(L, [np.zeros((3, 3, 3), dtype=np.int64)])
    kept = classify_prolongable(triv, 1).dimension == invariant_forms(L).dimension
    ok = got == want == 1 and kept
    assert record_criterion(11, "deformation prolongation classifier", ok, f"axb={got}/{want} trivial_kept={kept}")


def test_criterion_12_properties(record_criterion):
    for L in list(fleet()) + [liealg.current(liealg.sl2(5), unit_plus_nil(2, 5))]:
        L.check_antisymmetry()
        L.check_jacobi()
    composites = [ce_homology(L).composite_zero for L in (liealg.sl2(5), liealg.heisenberg(5), liealg.witt(1, (2,), 5).lie)]
    composites += [derham.build_complex(liealg.witt(n, m, 5)).composite_is_zero() for n, m in WITT]
    composites += [CyclicComplex(A).composite_is_zero() for A in (truncated_poly(5, 5), unit_plus_nil(3, 5))]
    bad = 0
    for p in (5, 7, 101):
        rng = np.random.default_rng(1000 + p)
        for _ in range(1000):
            m, n = (int(x) for x in rng.integers(1, 30, 2))
            S = sp.random(m, n, density=0.2, format="csr", random_state=rng, data_rvs=lambda k: rng.integers(1, p, k))
            M = FpMatrix.from_scipy(p, S)
            bad += M.rank() + M.kernel_basis().dim != n
    ok = all(composites) and bad == 0
    assert record_criterion(12, "Jacobi, d^2 = 0, rank+nullity", ok, f"composites={sum(composites)}/{len(composites)} rank_nullity_failures={bad}")
