"""Exact word-trace combinatorics for the one-parameter matrix family (A_x, B_x)."""

from .asymptotics import (
    KappaResult,
    classify_order4,
    kappa_bridge,
    kappa_brute,
    kappa_walks,
    walk_expansion,
)
from .average import gap, gap_sign_scan, p_newton, p_word_sum, power_sum_newton, ratio_leading
from .exact import BiPoly, Poly, parse_rational
from .family import Mat3, build_family, build_projections, clustered_trace_closed
from .words import Word, cyclic_shifts, enumerate_words, parse_word, run_decomposition, word_trace

__version__ = "0.1.0"
