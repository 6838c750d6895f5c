"""Horocyclic products: trees, Diestel-Leader graphs, lamplighters, treebolic space, Sol."""

__version__ = "0.1.0"
