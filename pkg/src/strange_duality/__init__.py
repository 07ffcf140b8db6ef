"""Exact quantum Schubert calculus, twisted Gromov-Witten numbers and the
SU(r) Verlinde algebra, with two independent computations of the
conformal block dimension M(r, k, g)."""

__version__ = "0.1.0"
