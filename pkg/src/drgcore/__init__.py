"""Exact analysis of distance-regular graphs: intersection-array parameter
derivation, feasibility screening, core classification via cosine conditions,
diameter-3 survey enumeration, and explicit-graph verification."""

__version__ = "0.1.0"
