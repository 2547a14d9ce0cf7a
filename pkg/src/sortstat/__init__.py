"""Sorting-index statistics on matchings, bicolored matchings and restricted
permutations of types A, B and D, with an exhaustive identity checker."""

from .bicolored import BicoloredMatching
from .checks import CATALOGUE, CheckSpec, Report, run_checks
from .dyck import DyckPath, dyck_from_restriction, enumerate_dyck, enumerate_restrictions
from .formulas import build_rhs
from .matchings import Matching
from .permutations import SignedPermutation, parse_perm
from .polynomials import Poly, distribution

__all__ = [
    "BicoloredMatching",
    "CATALOGUE",
    "CheckSpec",
    "DyckPath",
    "Matching",
    "Poly",
    "Report",
    "SignedPermutation",
    "build_rhs",
    "distribution",
    "dyck_from_restriction",
    "enumerate_dyck",
    "enumerate_restrictions",
    "parse_perm",
    "run_checks",
]

__version__ = "0.1.0"
