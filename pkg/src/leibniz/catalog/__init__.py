"""Bundled data for every algebra, inner product, cocycle list and basis
change in the reference classification, with loaders and a batch verifier."""

from .store import (
    CatalogEntry,
    NamedCocycle,
    UnknownEntry,
    all_entries,
    claims,
    edges,
    isomorphisms,
    list_ids,
    load,
)

__all__ = [
    "CatalogEntry",
    "NamedCocycle",
    "UnknownEntry",
    "all_entries",
    "claims",
    "edges",
    "isomorphisms",
    "list_ids",
    "load",
]
