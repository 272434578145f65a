"""Exception hierarchy shared by all modules.

Each error carries an exit code used by the CLI: 2 for bad input, 3 for
computation failures.
"""
from __future__ import annotations


class FernlabError(Exception):
    exit_code = 3


class ValidationError(FernlabError):
    exit_code = 2


class ParseError(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class BadSubset(ValidationError):
    pass


class BadDegree(ValidationError):
    pass


class SizeGuard(FernlabError):
    pass


class Singular(FernlabError):
    pass


class NoWitness(FernlabError):
    pass


class CriticalPosition(FernlabError):
    pass


class CriticalInput(FernlabError):
    pass


class DegenerateDenominator(FernlabError):
    pass


class FlatteningCollapse(FernlabError):
    """Raised only on request; flatten reports collapse as a flag by default."""
