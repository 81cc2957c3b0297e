"""Exact verification toolkit for the generic A4 quartic and its lift to SL2(F3)."""

from .arith import REAL, BrauerClass, Place, factorize, hilbert_symbol, symbol_class
from .galois import classify_quartic, real_root_count
from .generic import CALIBRATED_SIGN, SymbolParams, embeddable, prop1_quartic, uv_from_symbols
from .poly import MultiPoly, UniPoly, discriminant, resultant
from .traceform import CALIBRATED_CONVENTION, WittConvention, trace_form, witt_class

__version__ = "0.1.0"
