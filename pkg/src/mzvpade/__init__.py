"""Exact and certified computations for Pade-type approximations to zeta(2k+1)
built from extended multiple polylogarithms."""

__version__ = "0.1.0"
