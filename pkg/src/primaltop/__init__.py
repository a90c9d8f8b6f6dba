"""Finite-model workbench for primal topological spaces."""

__version__ = "0.1.0"
