"""Commutative unital algebras and their low-degree homology."""
from .algebra import CommAlgebra, divided_powers, ground_field, tensor, truncated_poly, unit_plus_nil
from .homology import (
    CyclicComplex,
    DerivationBasis,
    Omega1Report,
    derivations,
    hc1,
    kaehler_omega1,
    leibniz_defect,
)

__all__ = [
    "CommAlgebra",
    "CyclicComplex",
    "DerivationBasis",
    "Omega1Report",
    "derivations",
    "divided_powers",
    "ground_field",
    "hc1",
    "kaehler_omega1",
    "leibniz_defect",
    "tensor",
    "truncated_poly",
    "unit_plus_nil",
]
