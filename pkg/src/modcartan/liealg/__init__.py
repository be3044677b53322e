"""Lie algebras by structure constants and their constructors."""
from .algebra import LieAlgebra
from .amodule import AModuleLie, free_lie_module
from .cartan import check_witt_identity, contact, hamiltonian, witt
from .constructions import abelian, current, direct_sum, heisenberg, semidirect, sl2


def is_perfect(L: LieAlgebra) -> bool:
    return L.is_perfect()


__all__ = [
    "AModuleLie",
    "LieAlgebra",
    "abelian",
    "check_witt_identity",
    "contact",
    "current",
    "direct_sum",
    "free_lie_module",
    "hamiltonian",
    "heisenberg",
    "is_perfect",
    "semidirect",
    "sl2",
    "witt",
]
