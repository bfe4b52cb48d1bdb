"""Exact computations with the principal realization of the Yangian Y(gl(n))."""
from .exact_arith import Cyc, cyc_inv, cyclotomic_poly, parse_rational, root_of_unity
from .principal_gl import CycMat, CycVec, principal_A, unit_E

__all__ = [
    "Cyc",
    "CycMat",
    "CycVec",
    "cyc_inv",
    "cyclotomic_poly",
    "parse_rational",
    "principal_A",
    "root_of_unity",
    "unit_E",
]
__version__ = "0.1.0"
