"""Exact Kerov character polynomials, their genus expansion and Lassalle's symmetric functions."""

from .algebra import CumulantPoly, Family, homogeneous_part, substitute
from .cumulants import KerovPolynomial, boolean_to_free, free_to_boolean, genus_part, sigma
from .diagrams import YoungDiagram, free_cumulants_of, normalized_character
from .factorizations import brute_kerov
from .goulden_rattan import gr_genus_part
from .lassalle import divisibility_check, fit_symmetric, lassalle_report
from .partitions import Partition, SymmetricFn, partitions_of

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table, so the next computation starts cold."""
    from . import cumulants, goulden_rattan, lassalle, partitions

    cumulants.clear_caches()
    goulden_rattan.clear_caches()
    lassalle.q_poly.cache_clear()
    lassalle._script_Q.cache_clear()
    partitions._partitions.cache_clear()


__all__ = [
    "CumulantPoly",
    "Family",
    "KerovPolynomial",
    "Partition",
    "SymmetricFn",
    "YoungDiagram",
    "boolean_to_free",
    "brute_kerov",
    "clear_caches",
    "divisibility_check",
    "fit_symmetric",
    "free_cumulants_of",
    "free_to_boolean",
    "genus_part",
    "gr_genus_part",
    "homogeneous_part",
    "lassalle_report",
    "normalized_character",
    "partitions_of",
    "sigma",
    "substitute",
]
