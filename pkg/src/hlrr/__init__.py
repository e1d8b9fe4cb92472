"""Exact q-series engine and verifier for Hall-Littlewood summation identities."""

from .exactnum import PowerSeries, rational

__all__ = ["PowerSeries", "rational"]
__version__ = "0.1.0"
