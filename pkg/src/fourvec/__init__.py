"""Exact classification machinery for the SL(8) action on wedge^4 of K^8."""

from .cyclo import Cyc, cyc, zeta, I, parse_scalar, format_scalar

__all__ = ["Cyc", "cyc", "zeta", "I", "parse_scalar", "format_scalar"]
