"""Exact integer/rational sequence machinery.

Covers the arcsin-power coefficient table b_{k,l}, its normalized limits
d_{k,l} (partial sums of the multiple zeta value zeta({2}_{k-1})), the
positivity chain f/g/e for the composed Bernoulli expansion, and the
binomial tail weights used by the kernel sup bound.

f_{m,l} and g_{m,l} are kept symbolic as polynomials in pi^2 with rational
coefficients (class PiSquarePoly); signs are decided by one high-precision
evaluation at comparison time, never by float pipelines.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Tuple

from mpmath import mp, mpf

from .polynomials import bernoulli_poly_exact
from .precision import DEFAULT_PREC, working_precision

TAIL_WEIGHT_MIN_N = 10
TAIL_WEIGHT_DEFAULT_LMAX = 10 ** 5


@dataclass
class SequenceTable:
    """Exact table indexed by (k, l) or (m, l)."""

    kind: str
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def export_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["i", "j", "numerator", "denominator"])
            for (i, j), v in sorted(self.entries.items()):
                f = Fraction(v) if not isinstance(v, Fraction) else v
                w.writerow([i, j, f.numerator, f.denominator])


def b_table(K: int, L: int) -> SequenceTable:
    """Integers b_{k,l} of the arcsin-power expansion.

    b_{0,0} = 1, b_{k,0} = b_{0,l} = 0 for k,l >= 1, and
    b_{k+1,l+1} = b_{k,l} + l^2 b_{k+1,l}.
    """
    if K < 0 or L < 0:
        raise ValueError("K and L must be >= 0")
    b: Dict[Tuple[int, int], int] = {}
    for k in range(K + 1):
        for l in range(L + 1):
            if k == 0 and l == 0:
                b[k, l] = 1
            elif k == 0 or l == 0:
                b[k, l] = 0
            else:
                b[k, l] = b[k - 1, l - 1] + (l - 1) ** 2 * b[k, l - 1]
    return SequenceTable(kind="b_arcsin", entries=b)


def arcsin_power_coefficients(k: int, L: int) -> List[Fraction]:
    """Coefficients of x^{2l}, l = 0..L, in the expansion of (Arcsin x)^{2k}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    b = b_table(k, L).entries
    out = []
    for l in range(L + 1):
        c = Fraction(factorial(2 * k), factorial(2 * l)) \
            * Fraction(2 ** (2 * l), 2 ** (2 * k)) * b[k, l]
        out.append(c)
    return out


def d_limit_check(k: int, L: int, prec: int = DEFAULT_PREC) -> Tuple[mpf, mpf, mpf]:
    """(d_{k,L}, limit, gap) with d_{k,l} = b_{k,l}/((l-1)!)^2.

    The limit as l -> infinity is pi^(2k-2)/(2k-1)!, the multiple zeta value
    zeta({2}_{k-1}).
    """
    if k < 1 or L < k:
        raise ValueError("need k >= 1 and L >= k")
    b = b_table(k, L).entries
    d_exact = Fraction(b[k, L], factorial(L - 1) ** 2)
    with working_precision(prec):
        d = mp.mpf(d_exact.numerator) / d_exact.denominator
        limit = mp.pi ** (2 * k - 2) / mp.factorial(2 * k - 1)
        return d, limit, abs(d - limit)


def d_value(k: int, l: int) -> Fraction:
    """Exact d_{k,l} = b_{k,l}/((l-1)!)^2 for l >= 1."""
    if k < 1 or l < 1:
        raise ValueError("need k, l >= 1")
    b = b_table(k, l).entries
    return Fraction(b[k, l], factorial(l - 1) ** 2)


class PiSquarePoly:
    """Exact Laurent polynomial in pi^2 with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, Fraction] | None = None):
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c != 0}

    def __add__(self, other: "PiSquarePoly") -> "PiSquarePoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PiSquarePoly(out)

    def __sub__(self, other: "PiSquarePoly") -> "PiSquarePoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) - c
        return PiSquarePoly(out)

    def scale(self, r: Fraction) -> "PiSquarePoly":
        return PiSquarePoly({e: c * r for e, c in self.coeffs.items()})

    def shift(self, de: int) -> "PiSquarePoly":
        """Multiply by (pi^2)^de."""
        return PiSquarePoly({e + de: c for e, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, PiSquarePoly) and self.coeffs == other.coeffs

    def evaluate(self, prec: int = DEFAULT_PREC) -> mpf:
        with working_precision(prec):
            pi2 = mp.pi ** 2
            total = mp.mpf(0)
            for e, c in self.coeffs.items():
                total += mp.mpf(c.numerator) / c.denominator * pi2 ** e
            return total

    def __repr__(self):
        return f"PiSquarePoly({self.coeffs!r})"


def f_poly(m: int, l: int, _b=None) -> PiSquarePoly:
    """f_{m,l} as an exact polynomial in pi^2.

    f_{m,l} = (-1)^(m+1) sum_{k=0}^m (2 pi)^(2m-2k)/(2m-2k)! B_{2m-2k}(1/2) b_{k,l}.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    b = _b if _b is not None else b_table(m, l).entries
    sign = Fraction((-1) ** (m + 1))
    coeffs: Dict[int, Fraction] = {}
    for k in range(m + 1):
        bv = b[k, l]
        if bv == 0:
            continue
        j = 2 * m - 2 * k
        r = sign * Fraction(2 ** j, factorial(j)) * bernoulli_poly_exact(j, Fraction(1, 2)) * bv
        if r != 0:
            coeffs[m - k] = coeffs.get(m - k, Fraction(0)) + r
    return PiSquarePoly(coeffs)


def g_poly(m: int, l: int, _b=None) -> PiSquarePoly:
    """g_{m,l} = f_{m,l}/((l-1)!)^2 for l >= 1, exact in pi^2."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return f_poly(m, l, _b=_b).scale(Fraction(1, factorial(l - 1) ** 2))


def e_coefficients(m: int, L: int) -> List[PiSquarePoly]:
    """Taylor coefficients e_{m,l}, l = 0..L, of the composed expansion
    (-1)^(m+1) B_2m(1/2 + Arcsin(x)/pi) = sum_l e_{m,l} x^(2l).

    Each e_{m,l} = (2m)! 2^(2l) / ((2l)! (2 pi)^(2m)) f_{m,l} is returned as
    an exact Laurent polynomial in pi^2.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    b = b_table(m, L).entries
    out = []
    for l in range(L + 1):
        fp = f_poly(m, l, _b=b)
        r = Fraction(factorial(2 * m) * 2 ** (2 * l), factorial(2 * l) * 2 ** (2 * m))
        out.append(fp.scale(r).shift(-m))
    return out


def g_closed_form_sum(m: int) -> Fraction:
    """Exact rational sum sum_{j=0}^{2m+1} 2^j/(j!(2m+1-j)!) B_j(1/2).

    Equals 2^(2m+1)/(2m+1)! B_{2m+1}(1) = 0; the limit of g_{m+1,l}.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    total = Fraction(0)
    for j in range(2 * m + 2):
        total += Fraction(2 ** j, factorial(j) * factorial(2 * m + 1 - j)) \
            * bernoulli_poly_exact(j, Fraction(1, 2))
    return total


def g_limit_check(m: int, L: int, prec: int = DEFAULT_PREC) -> mpf:
    """Numeric value of g_{m+1,L}; decreasing in L with limit 0."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return g_poly(m + 1, L).evaluate(prec)


def tail_weight(n: int, l: int, prec: int = DEFAULT_PREC) -> mpf:
    """Weight (2n/(2n+l))^(2n log n - 1) * binom(4n+l-1, l).

    The exponent uses the natural logarithm at full working precision; the
    n >= 10 regime is where the uniform summability argument applies.
    """
    if n < TAIL_WEIGHT_MIN_N:
        raise ValueError(f"tail_weight requires n >= {TAIL_WEIGHT_MIN_N}")
    if l < 0:
        raise ValueError("l must be >= 0")
    with working_precision(prec):
        expo = 2 * n * mp.log(n) - 1
        ratio = mp.mpf(2 * n) / (2 * n + l)
        return ratio ** expo * comb(4 * n + l - 1, l)


def tail_weight_sum(n: int, L: int, prec: int = DEFAULT_PREC) -> Tuple[mpf, mpf]:
    """(partial sum through l = L, crude geometric tail estimate).

    Binomials are updated incrementally; the tail estimate extends the last
    term by the final observed term ratio when it is below 1.
    """
    if n < TAIL_WEIGHT_MIN_N:
        raise ValueError(f"tail_weight_sum requires n >= {TAIL_WEIGHT_MIN_N}")
    with working_precision(prec):
        expo = 2 * n * mp.log(n) - 1
        total = mp.mpf(0)
        binom = 1  # binom(4n-1, 0)
        prev_term = None
        ratio = mp.mpf(0)
        for l in range(L + 1):
            if l > 0:
                binom = binom * (4 * n + l - 1) // l
            term = (mp.mpf(2 * n) / (2 * n + l)) ** expo * binom
            total += term
            if prev_term is not None and prev_term > 0:
                ratio = term / prev_term
            prev_term = term
        if 0 < ratio < 1:
            tail = prev_term * ratio / (1 - ratio)
        else:
            tail = mp.inf
        return total, tail


_tail_constant_cache: Dict[Tuple[int, int], mpf] = {}


def tail_weight_constant(L_max: int = TAIL_WEIGHT_DEFAULT_LMAX,
                         prec: int = DEFAULT_PREC) -> mpf:
    """Computed stand-in C* for the uniform tail-sum constant.

    C* = tail_weight_sum(10, L_max) partial sum plus its tail estimate; every
    kernel sup bound in this package uses this concrete number.
    """
    key = (L_max, prec)
    if key not in _tail_constant_cache:
        partial, tail = tail_weight_sum(TAIL_WEIGHT_MIN_N, L_max, prec=prec)
        _tail_constant_cache[key] = partial + tail
    return _tail_constant_cache[key]
