"""Exact determinant lines of finite-dimensional operators and their sign conventions."""

from .conventions import BASELINE, ConventionSystem
from .exactq import QuotientSpace, RationalMatrix, Subspace
from .fredholm import DetLineElement, FinOperator, det_line, dualize_det, generator
from .multilinear import LineElement, LineSpace, TensorElement, line_compare, swap_R
from .triples import ExactSquare, ExactTriple, ctilde, oplus, psi, snake, validate_triple

__all__ = [
    "BASELINE", "ConventionSystem", "DetLineElement", "ExactSquare", "ExactTriple",
    "FinOperator", "LineElement", "LineSpace", "QuotientSpace", "RationalMatrix", "Subspace",
    "TensorElement", "ctilde", "det_line", "dualize_det", "generator", "line_compare", "oplus",
    "psi", "snake", "swap_R", "validate_triple",
]
