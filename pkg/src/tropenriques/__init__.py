"""Exact Enriques-surface ideals and tropical homology of hypersurfaces in products of P^1."""

__version__ = "0.1.0"
