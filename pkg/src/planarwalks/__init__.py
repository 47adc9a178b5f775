"""Exact-arithmetic engine for the depth recursion of even-valence
planar-graph walks: sparse rational polynomials, walk and heap generating
functions, the series solver, conserved quantities, correlators, a tree
enumeration oracle, and face-adjacency statistics."""

__all__ = [
    "algebra", "walks", "heaps", "master", "conserved",
    "correlators", "blossom", "stats", "cli",
]

__version__ = "0.1.0"
