"""Exact solver, verifier and classifier for closed chromatic numbers."""
from .closedforms import TheoremVerdict, binary_tree_coeffs, binary_tree_existence, classify
from .engine import (
    Labeling,
    Verdict,
    closed_chromatic_number,
    exact_chromatic_number,
    exists_closed_coloring,
    find_ieds,
    verify_labeling,
)
from .graphs import Family, Graph, build_family, build_torus_quotient, parse_family, read_edge_list

__all__ = [
    "Family", "Graph", "Labeling", "TheoremVerdict", "Verdict",
    "binary_tree_coeffs", "binary_tree_existence", "build_family", "build_torus_quotient",
    "classify", "closed_chromatic_number", "exact_chromatic_number", "exists_closed_coloring",
    "find_ieds", "parse_family", "read_edge_list", "verify_labeling",
]
