"""Maximal 2-subgroups of symmetric and alternating groups, realized as
automorphism groups of binary rooted trees, with exact order engines and
verification drivers."""

__version__ = "0.1.0"
