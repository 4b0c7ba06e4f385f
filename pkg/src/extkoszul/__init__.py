"""Exact computations in exterior algebras: Gröbner bases, Hilbert series,
bounded Betti tables, regular sequences, edge ideals and quadric ranks."""

from .algebra import ExtElement, LinearChange, LinearForm, UsageError
from .field import GF, QQ, Field
from .groebner import GroebnerBasis, Ideal, MonomialIdeal, buchberger, hilbert_series
from .orders import MonomialOrder
from .series import HilbertSeries

__version__ = "0.1.0"

__all__ = [
    "ExtElement",
    "Field",
    "GF",
    "GroebnerBasis",
    "HilbertSeries",
    "Ideal",
    "LinearChange",
    "LinearForm",
    "MonomialIdeal",
    "MonomialOrder",
    "QQ",
    "UsageError",
    "buchberger",
    "hilbert_series",
]
