"""Symbols, integration and HPL reduction for multiple polylogarithms."""

from fractions import Fraction

from ._core import (
    MplsymError,
    Symbol,
    check_identity,
    cmzv_symbol,
    count_dissections,
    hpl_reduce,
    integrate,
    polylog,
    reconstruct,
    symbol,
    table2,
)
from ._core import evaluate as _evaluate


def evaluate(expression, point=None, digits=40):
    """Value of `expression` as a decimal string; point maps variables to rationals."""
    pt = {k: str(Fraction(v)) for k, v in (point or {}).items()}
    return _evaluate(expression, pt, digits)


def coefficients(sym):
    """Map from letter words to Fraction coefficients."""
    return {tuple(word): Fraction(c) for word, c in sym.terms}


__all__ = [
    "MplsymError",
    "Symbol",
    "check_identity",
    "cmzv_symbol",
    "coefficients",
    "count_dissections",
    "evaluate",
    "hpl_reduce",
    "integrate",
    "polylog",
    "reconstruct",
    "symbol",
    "table2",
]
