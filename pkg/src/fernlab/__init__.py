"""Exact linear algebra and combinatorics for parabolic envelopes and Hodge flags."""
from . import dimcalc, exactlinalg, hodgeflag, parabolic, steinberg, weyl

__all__ = ["dimcalc", "exactlinalg", "hodgeflag", "parabolic", "steinberg", "weyl"]
__version__ = "0.1.0"
