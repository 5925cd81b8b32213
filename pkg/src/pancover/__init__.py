"""Packing and covering of induced subdivisions: pans, diamonds, and the
counterexample families where no such duality holds."""
from __future__ import annotations

from .certificate import Certificate, parse_certificate, verify_certificate
from .detect import DIAMOND, PAN1, PAN2, Model, Pattern, detect_diamond, find_min_pan, find_model, load_pattern
from .diamond import solve_diamond
from .graph import Graph, parse_graph, serialize_graph
from .oracle import nu_exact, solve_star_forest, tau_exact
from .pans import solve_pan1, solve_pan2
from .policy import DEFAULT_POLICY, ThresholdPolicy

__version__ = "0.1.0"

__all__ = [
    "Certificate", "DEFAULT_POLICY", "DIAMOND", "Graph", "Model", "PAN1", "PAN2", "Pattern",
    "ThresholdPolicy", "detect_diamond", "find_min_pan", "find_model", "load_pattern", "nu_exact",
    "parse_certificate", "parse_graph", "serialize_graph", "solve_diamond", "solve_pan1", "solve_pan2",
    "solve_star_forest", "tau_exact", "verify_certificate",
]
