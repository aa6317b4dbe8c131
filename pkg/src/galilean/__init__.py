"""Exact computations with uniserial representations of sl(2) x| h_n and sl(2) x| a_m."""

from __future__ import annotations

from .exactnum import Scalar, parse_scalar, sqrt_rational
from .intertwine import HomReport, hom_space
from .liealg import ABELIAN, HEISENBERG, check_module_axioms, structure
from .tensorsocle import SocleReport, graded_invariants, socle, tensor
from .uniserial import ModuleSpec, Representation, build, dual, parse_spec, socle_series, verify_uniserial
from .weights import IrrepMultiset

__version__ = "0.1.0"

__all__ = [
    "ABELIAN",
    "HEISENBERG",
    "HomReport",
    "IrrepMultiset",
    "ModuleSpec",
    "Representation",
    "Scalar",
    "SocleReport",
    "build",
    "check_module_axioms",
    "dual",
    "graded_invariants",
    "hom_space",
    "parse_scalar",
    "parse_spec",
    "socle",
    "socle_series",
    "sqrt_rational",
    "structure",
    "tensor",
    "verify_uniserial",
]
