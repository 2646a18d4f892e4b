"""Knot Floer tau and epsilon, bordered pairing for (p, pn+1) cables, and closed-form cable formulas."""

from .cfk import CfkComplex, invariants, knot_library, mirror, connected_sum
from .formulas import CableSpec, KnotInvariantPair, cable_tau_formula, cable_epsilon_formula
from .pairing import cable_tau_tensor

__all__ = [
    "CfkComplex",
    "invariants",
    "knot_library",
    "mirror",
    "connected_sum",
    "CableSpec",
    "KnotInvariantPair",
    "cable_tau_formula",
    "cable_epsilon_formula",
    "cable_tau_tensor",
]
__version__ = "0.1.0"
