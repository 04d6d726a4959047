"""Products in the universal Drinfeld–Yetter algebra via mosaics and looms."""

from .algebra import AlgebraElement, basis_product, multiply, r, r_id, star
from .perm import Permutation, compose, inverse, parse

__all__ = ["AlgebraElement", "Permutation", "basis_product", "compose", "inverse",
           "multiply", "parse", "r", "r_id", "star"]
__version__ = "0.1.0"
