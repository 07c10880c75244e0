"""Forcing numbers of perfect matchings in hypercubes.

Finite-field certificates for the 2^(n-2) lower bound plus exhaustive
matching, forcing and unique-perfect-matching searches for small cases.
"""

from .gf import GFMatrix
from .matching import BipartiteGraph, CapExceededError, hypercube_graph

__version__ = "0.1.0"

__all__ = ["GFMatrix", "BipartiteGraph", "CapExceededError", "hypercube_graph"]
