"""Named suites of verification checks.

Every check is a plain function returning ``(expected, computed)``; the
scheduler records timing and turns exceptions into failed results.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .. import comalg, config, derham, deform, invariants, liealg

DEFAULT_CONFIG: dict = {
    "primes": [5, 7],
    "size_cap": None,
    "stretch": False,
    "suites": {
        "forms-witt": {"instances": [[1, [1]], [1, [2]], [2, [1, 1]]]},
        "forms-hamiltonian": {"instances": [[1, 1]], "primes": [5]},
        "forms-contact": {"n": [1], "stretch_instance": {"n": 2, "m": [1, 1, 1, 1, 1], "p": 5}},
        "current-h2": {"lie": [["sl2", 5], ["sl2", 7], ["W", 5]], "algebras": [["truncated", 2], ["unit_plus_nil", 2]]},
        "hc1": {"truncated_primes": [5, 7], "nil_dims": [1, 2, 3]},
        "derham": {"skryabin": [[1, [1], 5], [1, [1], 7], [2, [1, 1], 5]], "lemma_p": 5, "lemma_algebras": [["truncated", 2], ["unit_plus_nil", 2]]},
        "deform": {"p": 5},
        "duality": {"p": 5},
    },
}

SUITES = ("forms-witt", "forms-hamiltonian", "forms-contact", "current-h2", "hc1", "derham", "deform", "duality")


@dataclass
class Check:
    check_id: str
    params: dict
    func: Callable[..., tuple[Any, Any]]
    kwargs: dict = field(default_factory=dict)
    skip_reason: str | None = None


def merge_config(user: dict | None) -> dict:
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    user = {} if user is None else user
    if not isinstance(user, dict):
        raise ValueError("config must be a JSON object")
    for key, val in user.items():
        if key == "suites":
            if not isinstance(val, dict):
                raise ValueError("'suites' must be an object")
            for s, sv in val.items():
                cfg["suites"].setdefault(s, {}).update(sv)
        elif key in ("primes", "size_cap", "stretch"):
            cfg[key] = val
        elif key == "p":
            cfg["primes"] = val
        else:
            raise ValueError(f"unknown config key {key!r}")
    if not isinstance(cfg["primes"], list) or not all(isinstance(q, int) for q in cfg["primes"]):
        raise ValueError("'primes' must be a list of integers")
    if cfg["size_cap"] is None:
        cfg["size_cap"] = config.limits().algebra_dim
    return cfg


# check bodies -------------------------------------------------------------------

def _algebra(kind: str, size: int, p: int):
    if kind == "truncated":
        return comalg.truncated_poly(size, p)
    if kind == "unit_plus_nil":
        return comalg.unit_plus_nil(size, p)
    if kind == "ground":
        return comalg.ground_field(p)
    raise ValueError(f"unknown algebra kind {kind!r}")


def _lie(kind: str, p: int):
    if kind == "sl2":
        return liealg.sl2(p)
    if kind == "W":
        return liealg.witt(1, (1,), p).lie
    if kind == "heisenberg":
        return liealg.heisenberg(p)
    if kind == "abelian3":
        return liealg.abelian(3, p)
    if kind == "H":
        return liealg.hamiltonian((1, 1), p)
    if kind == "K3":
        return liealg.contact(1, (1, 1, 1), p)
    raise ValueError(f"unknown Lie algebra kind {kind!r}")


def check_witt_forms(n, m, p):
    return 0, invariants.invariant_forms(liealg.witt(n, tuple(m), p).lie, use_grading=True).dimension


def check_hamiltonian_forms(m, p):
    return 1, invariants.invariant_forms(liealg.hamiltonian(tuple(m), p), use_grading=True).dimension


def contact_expected(n: int, p: int) -> int:
    return 1 if (2 * n + 1 + 5) % p == 0 else 0


def check_contact_forms(n, m, p):
    return contact_expected(n, p), invariants.invariant_forms(liealg.contact(n, tuple(m), p), use_grading=True).dimension


def check_duality(kind, p):
    L = _lie(kind, p)
    return invariants.invariant_forms(L, use_grading=True).dimension, invariants.sym_coinvariants_dim(L, use_grading=L.dim > 50)


def check_current_h2(lie, lie_p, alg, size):
    rep = invariants.verify_current_h2(_lie(lie, lie_p), _algebra(alg, size, lie_p))
    return rep.rhs, rep.lhs


def check_hc1_claim(alg, size, p, expected):
    return expected, comalg.hc1(_algebra(alg, size, p))


def check_hc1_routes(alg, size, p):
    A = _algebra(alg, size, p)
    return comalg.kaehler_omega1(A).dim_quotient, comalg.hc1(A)


def check_skryabin(n, m, p):
    rep = derham.skryabin_check(liealg.witt(n, tuple(m), p))
    return rep.rhs, rep.lhs


def check_lemma(alg, size, p):
    rep = derham.lemma_check(liealg.witt(1, (1,), p), _algebra(alg, size, p))
    return rep.rhs, rep.lhs


def check_hom_witt(n, m, p):
    return True, invariants.hom_condition(liealg.witt(n, tuple(m), p))


def euler_counterexample(p: int):
    """A = K[x]/(x^5), L = A·E with E = x d/dx."""
    A = comalg.truncated_poly(5, p)
    E = np.diag(np.arange(5)) % p
    return liealg.free_lie_module(A, [E], ["E"], descriptor={"family": "A*xd/dx", "p": p})


def check_hom_counterexample(p):
    return False, invariants.hom_condition(euler_counterexample(p))


def axb_deformation(p: int) -> deform.DeformationData:
    """abelian(2) deformed by φ_1(e1, e2) = e2; at t = 1 this is the ax+b algebra."""
    return deform.DeformationData.from_entries(liealg.abelian(2, p), [(1, 0, 1, 1, 1)])


def check_deform_axb(p):
    D = axb_deformation(p)
    return invariants.invariant_forms(D.at(1)).dimension, deform.classify_prolongable(D, 1).dimension


def check_deform_trivial(p):
    D = deform.DeformationData(liealg.sl2(p), [np.zeros((3, 3, 3), dtype=np.int64)])
    return invariants.invariant_forms(D.base).dimension, deform.classify_prolongable(D, 1).dimension


# suite assembly -----------------------------------------------------------------

def _t(m) -> str:
    return "(" + ",".join(map(str, m)) + ")"


def build_suite(name: str, cfg: dict) -> list[Check]:
    if name == "all":
        return [c for s in SUITES for c in build_suite(s, cfg)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    sc = cfg["suites"].get(name, {})
    primes = cfg["primes"]
    out: list[Check] = []
    if name == "forms-witt":
        for p in primes:
            for n, m in sc["instances"]:
                out.append(Check(f"forms-witt/W{n}{_t(m)}/p{p}", {"n": n, "m": m, "p": p, "expected_kind": "claim"}, check_witt_forms, {"n": n, "m": m, "p": p}))
    elif name == "forms-hamiltonian":
        for p in sc.get("primes", primes):
            insts = sc["instances"] if isinstance(sc["instances"][0], list) else [sc["instances"]]
            for m in insts:
                out.append(Check(f"forms-hamiltonian/H{_t(m)}/p{p}", {"m": m, "p": p, "expected_kind": "claim"}, check_hamiltonian_forms, {"m": m, "p": p}))
    elif name == "forms-contact":
        for p in primes:
            for n in sc["n"]:
                m = [1] * (2 * n + 1)
                out.append(Check(f"forms-contact/K{2 * n + 1}/p{p}", {"n": n, "m": m, "p": p, "expected_kind": "claim"}, check_contact_forms, {"n": n, "m": m, "p": p}))
        st = sc["stretch_instance"]
        out.append(
            Check(
                f"forms-contact/K{2 * st['n'] + 1}/p{st['p']}/stretch",
                {**st, "expected_kind": "claim"},
                check_contact_forms,
                dict(st),
                None if cfg.get("stretch") else "stretch disabled",
            )
        )
    elif name == "current-h2":
        for lie, p in sc["lie"]:
            for alg, size in sc["algebras"]:
                out.append(Check(f"current-h2/{lie}{p}/{alg}{size}", {"lie": lie, "p": p, "algebra": alg, "size": size, "expected_kind": "derived"}, check_current_h2, {"lie": lie, "lie_p": p, "alg": alg, "size": size}))
    elif name == "hc1":
        for p in sc["truncated_primes"]:
            out.append(Check(f"hc1/truncated{p}/p{p}", {"algebra": "truncated", "size": p, "p": p, "expected_kind": "claim"}, check_hc1_claim, {"alg": "truncated", "size": p, "p": p, "expected": 1}))
        for k in sc["nil_dims"]:
            out.append(Check(f"hc1/unit_plus_nil{k}/p5", {"algebra": "unit_plus_nil", "size": k, "p": 5, "expected_kind": "claim"}, check_hc1_claim, {"alg": "unit_plus_nil", "size": k, "p": 5, "expected": k * (k - 1) // 2}))
        for alg, size, p in [("ground", 1, 5), ("truncated", 2, 5), ("truncated", 5, 5), ("truncated", 7, 7), ("unit_plus_nil", 2, 5), ("unit_plus_nil", 3, 7)]:
            out.append(Check(f"hc1/routes/{alg}{size}/p{p}", {"algebra": alg, "size": size, "p": p, "expected_kind": "derived"}, check_hc1_routes, {"alg": alg, "size": size, "p": p}))
    elif name == "derham":
        for n, m, p in sc["skryabin"]:
            out.append(Check(f"derham/skryabin/W{n}{_t(m)}/p{p}", {"n": n, "m": m, "p": p, "expected_kind": "derived" if n == 1 else "claim"}, check_skryabin, {"n": n, "m": m, "p": p}))
        p = sc["lemma_p"]
        for alg, size in sc["lemma_algebras"]:
            out.append(Check(f"derham/lemma/W1(1,)/{alg}{size}/p{p}", {"algebra": alg, "size": size, "p": p, "expected_kind": "derived"}, check_lemma, {"alg": alg, "size": size, "p": p}))
        for q in primes:
            for n, m in cfg["suites"]["forms-witt"]["instances"]:
                out.append(Check(f"derham/hom/W{n}{_t(m)}/p{q}", {"n": n, "m": m, "p": q, "expected_kind": "claim"}, check_hom_witt, {"n": n, "m": m, "p": q}))
        out.append(Check("derham/hom/euler-counterexample/p5", {"p": 5, "expected_kind": "derived"}, check_hom_counterexample, {"p": 5}))
    elif name == "deform":
        p = sc["p"]
        out.append(Check(f"deform/axb/p{p}", {"p": p, "m": 1, "expected_kind": "derived"}, check_deform_axb, {"p": p}))
        out.append(Check(f"deform/trivial-sl2/p{p}", {"p": p, "m": 1, "expected_kind": "trivial"}, check_deform_trivial, {"p": p}))
    elif name == "duality":
        p = sc["p"]
        kinds = ["abelian3", "heisenberg", "sl2", "W", "H", "K3"]
        for kind in kinds:
            out.append(Check(f"duality/{kind}/p{p}", {"lie": kind, "p": p, "expected_kind": "derived"}, check_duality, {"kind": kind, "p": p}))
        for q in primes:
            for n, m in cfg["suites"]["forms-witt"]["instances"]:
                out.append(Check(f"duality/W{n}{_t(m)}/p{q}", {"n": n, "m": m, "p": q, "expected_kind": "derived"}, check_witt_duality, {"n": n, "m": m, "p": q}))
    return out


def check_witt_duality(n, m, p):
    L = liealg.witt(n, tuple(m), p).lie
    return invariants.invariant_forms(L, use_grading=True).dimension, invariants.sym_coinvariants_dim(L)


CLAIMS = [
    ("1", "Jacobson–Witt forms vanish", "forms-witt"),
    ("2", "forms dual to symmetric coinvariants", "duality"),
    ("3", "HC1 values and Ω¹/dA agreement", "hc1"),
    ("4", "current-algebra H2 formula", "current-h2"),
    ("5", "H2 ≅ H^1(C_A) for rank 1, H2 = 0 above", "derham"),
    ("6", "tensor isomorphism for C_A cohomology", "derham"),
    ("7", "Hamiltonian form unique up to scalar", "forms-hamiltonian"),
    ("8", "contact forms vanish off 2n+1 ≡ -5 (mod p)", "forms-contact"),
    ("9", "contact form exists for K5 over F5 (stretch)", "forms-contact"),
    ("10", "Hom-condition holds for W, fails for A·x d/dx", "derham"),
    ("11", "deformation prolongation classifier", "deform"),
    ("12", "identities and complex properties", "(pytest property suite)"),
]
