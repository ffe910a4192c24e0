"""Precision settings and the complex value type used for character sums."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = ["NumericConfig", "DEFAULT", "ComplexValue", "context", "to_mpf"]

# Complex numbers at a configurable binary precision.
ComplexValue = mpmath.mpc


@lru_cache(maxsize=None)
def context(prec: int) -> mpmath.ctx_mp.MPContext:
    """A private mpmath context at `prec` bits, shared per precision."""
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True)
class NumericConfig:
    """Working precision in bits plus the two tolerance thresholds.

    identity_tol bounds residues of identities between character values.
    rounding_tol bounds the distance of a dimension sum from an integer.
    """

    prec: int = 160
    identity_tol: float = 1e-9
    rounding_tol: float = 1e-6

    def __post_init__(self) -> None:
        if self.prec < 53:
            raise ValueError("precision below 53 bits is not supported")

    @property
    def ctx(self) -> mpmath.ctx_mp.MPContext:
        return context(self.prec)

    def doubled(self) -> "NumericConfig":
        return replace(self, prec=2 * self.prec)


DEFAULT = NumericConfig()


def to_mpf(ctx, x) -> mpmath.mpf:
    """Exact conversion of an int or Fraction into the context."""
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.mpf(x)
