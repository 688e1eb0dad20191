"""Tau-tilting finiteness of triangular matrix algebras.

Typical use::

    from taufin import linear_path_algebra, triangular_matrix, compute_algebra, explore
    report = explore(compute_algebra(triangular_matrix(linear_path_algebra(3), 2)))
    report.status, report.count   # ("Finite", 632)
"""

from .algebra import (
    BoundPresentation,
    FinDimAlgebra,
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    linear_path_algebra,
    path_algebra,
    radical_square_truncation,
    tensor_product,
    triangular_matrix,
)
from .algfile import load_algebra, parse_algebra, save_algebra, serialize_algebra
from .classify import classify_silting_discreteness, classify_tn_tau_finiteness, crosscheck, reduce_2rad2
from .field import Field
from .oracle import brute_force_stau_count
from .quiver import Arrow, Quiver, build_linear_quiver, component_types, separated_quiver
from .tautilt import ExplorationReport, TauTiltingPair, explore

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "BoundPresentation",
    "ExplorationReport",
    "Field",
    "FinDimAlgebra",
    "Quiver",
    "TauTiltingPair",
    "brute_force_stau_count",
    "build_linear_quiver",
    "build_nakayama",
    "build_truncated_polynomial",
    "classify_silting_discreteness",
    "classify_tn_tau_finiteness",
    "component_types",
    "compute_algebra",
    "crosscheck",
    "explore",
    "linear_path_algebra",
    "load_algebra",
    "parse_algebra",
    "path_algebra",
    "radical_square_truncation",
    "reduce_2rad2",
    "save_algebra",
    "separated_quiver",
    "serialize_algebra",
    "tensor_product",
    "triangular_matrix",
]
