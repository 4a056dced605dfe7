"""Exact combinatorics of the Poisson degeneracy loci of flag varieties.

Root systems and Weyl groups over exact integers, Bruhat order, witnessed
pairs and their boolean intervals, orthogonal cascades, Deodhar subword
R-polynomials, parabolic quotients, a constructive pipeline for
top-dimensional pairs, and a symbolic type-A Poisson laboratory."""

from .rootsys import CartanType, RootSystem, build_root_system
from .weyl import WeylElement, enumerate_group, from_word, longest_element
from .bruhat import bruhat_leq, interval, subwords_with_value
from .gcr import GcrPair, enumerate_gcr, make_gcr_pair
from .cascade import Cascade, build_cascade, verify_kostant
from .deodhar import r_polynomial_deodhar, r_polynomial_recurrence
from .parabolic import gcr_p, min_coset_rep, p_bruhat_leq
from .construct import TopPair, build_top_pair
from .polyalg import Ideal, PolyRing, Polynomial, buchberger, membership
from .poissonlab import build_chart, degeneracy_ideal, poisson_matrix, scan_cells

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "RootSystem",
    "build_root_system",
    "WeylElement",
    "enumerate_group",
    "from_word",
    "longest_element",
    "bruhat_leq",
    "interval",
    "subwords_with_value",
    "GcrPair",
    "enumerate_gcr",
    "make_gcr_pair",
    "Cascade",
    "build_cascade",
    "verify_kostant",
    "r_polynomial_deodhar",
    "r_polynomial_recurrence",
    "gcr_p",
    "min_coset_rep",
    "p_bruhat_leq",
    "TopPair",
    "build_top_pair",
    "Ideal",
    "PolyRing",
    "Polynomial",
    "buchberger",
    "membership",
    "build_chart",
    "degeneracy_ideal",
    "poisson_matrix",
    "scan_cells",
    "__version__",
]
