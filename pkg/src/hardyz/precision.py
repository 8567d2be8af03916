"""Shared arbitrary-precision substrate.

All numeric routines in this package take an explicit ``prec`` argument in
bits (default 192) and evaluate under an mpmath working-precision context.
Guard bits are added internally; results are returned as mpf/mpc values
rounded at the working precision of the caller's context.
"""

from __future__ import annotations

from contextlib import contextmanager

from mpmath import mp, mpf

DEFAULT_PREC = 192
GUARD_BITS = 16

MIN_PREC = 64


@contextmanager
def working_precision(prec: int, guard: int = GUARD_BITS):
    """Context manager setting mp.prec to prec + guard bits."""
    if prec < MIN_PREC:
        raise ValueError(f"precision must be >= {MIN_PREC} bits, got {prec}")
    old = mp.prec
    mp.prec = prec + guard
    try:
        yield mp
    finally:
        mp.prec = old


def to_mpf(x, prec: int = DEFAULT_PREC) -> mpf:
    """Convert x (int, float, str, Fraction, mpf) to mpf at the given precision."""
    with working_precision(prec):
        if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, int):
            return mpf(x.numerator) / mpf(x.denominator)
        return mpf(x)


def digits_for(prec: int) -> int:
    """Decimal digits needed to round-trip a prec-bit float."""
    return int(prec * 0.302) + 1
