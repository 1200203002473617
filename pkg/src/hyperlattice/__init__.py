"""Lattice of flats of the arrangement spanned by n points in general position.

Type counts, Möbius values and characteristic polynomials of ``L(n, d)`` as
exact polynomials in ``n`` written in the basis ``C(n, k)``, together with a
brute-force lattice builder used to check them.
"""

from .binomial_poly import BinomialPolynomial, PolynomialParseError, parse, render
from .kappa import brute_force_kappa, check_identity, kappa_top, kappa_type
from .lattice import LatticeElement, Partition, partitions, partitions_up_to
from .mobius_chi import ChiPolynomial, TopMobiusTable, chi_arrangement, chi_lattice, mobius_of_type, top_mobius
from .oracle import InfeasibleError, enumerate_lattice
from .type_counts import TypeCountResult, lambda_closed_form, lambda_poly, stabilizer_order

__version__ = "0.1.0"

__all__ = [
    "BinomialPolynomial",
    "PolynomialParseError",
    "parse",
    "render",
    "brute_force_kappa",
    "check_identity",
    "kappa_top",
    "kappa_type",
    "LatticeElement",
    "Partition",
    "partitions",
    "partitions_up_to",
    "ChiPolynomial",
    "TopMobiusTable",
    "chi_arrangement",
    "chi_lattice",
    "mobius_of_type",
    "top_mobius",
    "InfeasibleError",
    "enumerate_lattice",
    "TypeCountResult",
    "lambda_closed_form",
    "lambda_poly",
    "stabilizer_order",
]
