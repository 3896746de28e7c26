"""Exact q-series over Q(z3): theta functions, Appell functions, mock theta identities."""

from __future__ import annotations

from .cyclotomic import CycNum, Unit
from .qseries import Monomial, QSeries, mono, ps_eq

__all__ = ["CycNum", "Unit", "Monomial", "QSeries", "mono", "ps_eq"]
__version__ = "0.1.0"
