"""Substitutions for regular tilings {p,q}, their growth, and a geometric check of both."""
from .oracle import DualGraph, build_graph, generation_counts
from .params import (Curvature, Family, InvalidParams, Letter, TesselError, TilingParams,
                     UnsupportedFamily)
from .spectral import char_poly, closed_form_char_poly, perron_root, spectral_report, transition_matrix
from .substitution import SubstitutionSystem, build_system, u_sequence, utilde_sequence
from .verify import ClaimReport, run_suite

__all__ = [
    "ClaimReport", "Curvature", "DualGraph", "Family", "InvalidParams", "Letter", "SubstitutionSystem",
    "TesselError", "TilingParams", "UnsupportedFamily", "build_graph", "build_system", "char_poly",
    "closed_form_char_poly", "generation_counts", "perron_root", "run_suite", "spectral_report",
    "transition_matrix", "u_sequence", "utilde_sequence",
]
__version__ = "0.1.0"
