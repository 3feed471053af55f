"""Exact lattices, Jacobi-form expansions and reflective-form bookkeeping."""

from .jacobi import HolomorphyClass, JacobiExpansion, classify, gritsenko_residual, heat_H, heat_Hk, theta_series
from .lattice import (
    CosetClass,
    DualVector,
    IntegerLattice,
    build_named,
    count_roots,
    direct_sum,
    enumerate_vectors,
)
from .qseries import QSeries, delta, eisenstein

__all__ = [
    "CosetClass", "DualVector", "HolomorphyClass", "IntegerLattice", "JacobiExpansion", "QSeries",
    "build_named", "classify", "count_roots", "delta", "direct_sum", "eisenstein", "enumerate_vectors",
    "gritsenko_residual", "heat_H", "heat_Hk", "theta_series",
]
