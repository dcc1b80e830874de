"""Exact arithmetic kernels used throughout lgorb."""

from .cyclotomic import Cyclo, cyclo_root, cyclotomic_polynomial
from .intmatrix import det, diagonal, identity, inverse, matmul, rank, smith_normal_form, transpose
from .puiseux import PuiseuxPoly, puiseux_exact_div
from .rational import Rat, frac_part, rat, rat_str

__all__ = [
    "Cyclo", "cyclo_root", "cyclotomic_polynomial",
    "PuiseuxPoly", "puiseux_exact_div",
    "Rat", "rat", "rat_str", "frac_part",
    "det", "diagonal", "identity", "inverse", "matmul", "rank", "smith_normal_form", "transpose",
]
