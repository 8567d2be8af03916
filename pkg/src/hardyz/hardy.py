"""Hardy Z function engine: evaluation, derivatives, zeros, counting.

Z(t) = e^{i theta(t)} zeta(1/2 + it) is real for real t.  The primary
evaluation path applies Euler-Maclaurin summation to zeta with an explicit
truncation bound; a Riemann-Siegel fast path backs interval scans.
Derivatives come from Cauchy circle integration of the analytic
continuation of Z, cross-checked by Richardson finite differences.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from .polynomials import bernoulli_numbers
from .precision import DEFAULT_PREC, digits_for, working_precision

MAX_DERIVATIVE_ORDER = 64
BISECTION_HALF_WIDTH_BITS = 48
THETA_ASYMPTOTIC_MIN_T = 10


class CapacityError(ValueError):
    """Requested derivative order exceeds the configured maximum."""


class PrecisionEscalationError(ArithmeticError):
    """Requested tolerance unreachable after precision escalation."""


class RejectedPointError(ValueError):
    """Z(T) indistinguishable from zero; the report would be meaningless."""


# ---------------------------------------------------------------------------
# theta


def theta(t, prec: int = DEFAULT_PREC) -> mpf:
    """Riemann-Siegel theta via the log-Gamma branch.

    theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi; exact for all real t.
    """
    with working_precision(prec):
        tm = mp.mpf(t)
        return mp.loggamma(mp.mpf(0.25) + 0.5j * tm).imag - tm / 2 * mp.log(mp.pi)


def theta_asymptotic(t, prec: int = DEFAULT_PREC, terms: int = 5) -> mpf:
    """Asymptotic branch t/2 log(t/2pi) - t/2 - pi/8 + sum a_j t^(1-2j).

    a_j = (1 - 2^(1-2j)) |B_2j| / (4j(2j-1)); valid for t >= 10 where the
    series terms fall well below the leading scale.
    """
    with working_precision(prec):
        tm = mp.mpf(t)
        if tm < THETA_ASYMPTOTIC_MIN_T:
            raise ValueError("asymptotic branch requires t >= 10")
        bern = bernoulli_numbers(2 * terms)
        val = tm / 2 * mp.log(tm / (2 * mp.pi)) - tm / 2 - mp.pi / 8
        for j in range(1, terms + 1):
            b = bern[2 * j]
            a_j = (1 - mp.mpf(2) ** (1 - 2 * j)) \
                * abs(mp.mpf(b.numerator)) / b.denominator / (4 * j * (2 * j - 1))
            val += a_j / tm ** (2 * j - 1)
        return val


def theta_prime(t, prec: int = DEFAULT_PREC) -> mpf:
    """theta'(t) = Re psi(1/4 + it/2)/2 - log(pi)/2."""
    with working_precision(prec):
        tm = mp.mpf(t)
        return mp.digamma(mp.mpf(0.25) + 0.5j * tm).real / 2 - mp.log(mp.pi) / 2


def _theta_complex(w, prec: int):
    """Analytic continuation of theta, real on the real axis."""
    with working_precision(prec):
        wm = mp.mpc(w)
        lg = (mp.loggamma(mp.mpf(0.25) + 0.5j * wm)
              - mp.loggamma(mp.mpf(0.25) - 0.5j * wm)) / 2j
        return lg - wm / 2 * mp.log(mp.pi)


# ---------------------------------------------------------------------------
# zeta via Euler-Maclaurin


def _zeta_em(s, prec: int, N: Optional[int] = None) -> Tuple[object, mpf]:
    """(zeta(s), truncation bound) by Euler-Maclaurin, s != 1, complex s.

    N defaults to max(|Im s|/2, prec/4, 10) so the correction terms decay by
    several bits each; the recorded bound is the standard
    |s+2K+1|/(sigma+2K+1) multiple of the first omitted term.
    """
    with working_precision(prec, guard=24):
        sm = mp.mpc(s)
        if sm == 1:
            raise ValueError("zeta pole at s = 1")
        t_abs = abs(sm.imag)
        if N is None:
            N = int(max(mp.ceil(t_abs / 2), prec // 4, 10))
        total = mp.mpc(0)
        for k in range(1, N):
            total += mp.power(k, -sm)
        Nm = mp.mpf(N)
        total += mp.power(Nm, -sm) / 2
        total += mp.power(Nm, 1 - sm) / (sm - 1)
        # correction terms B_2k/(2k)! * N^(1-s-2k) * prod_{j<2k-1}(s+j)
        K_cap = max(prec // 2, 20)
        bern = bernoulli_numbers(2 * K_cap + 2)
        rising = sm          # prod_{j=0}^{2k-2}(s+j), starts at k=1 with s
        npow = mp.power(Nm, 1 - sm) / Nm ** 2
        fact = mp.factorial(2)
        tol = mp.mpf(2) ** (-(prec + 10))
        prev_mag = mp.inf
        k = 1
        term_mag = mp.inf
        while k <= K_cap:
            b = bern[2 * k]
            term = mp.mpf(b.numerator) / b.denominator / fact * npow * rising
            term_mag = abs(term)
            if term_mag > prev_mag:
                break
            total += term
            if term_mag < tol:
                k += 1
                break
            prev_mag = term_mag
            rising *= (sm + 2 * k - 1) * (sm + 2 * k)
            npow /= Nm ** 2
            fact *= (2 * k + 1) * (2 * k + 2)
            k += 1
        sigma = sm.real
        bound = abs(sm + 2 * k + 1) / abs(sigma + 2 * k + 1) * term_mag
        if not mp.isfinite(bound):
            bound = term_mag
        return +total, +bound


# ---------------------------------------------------------------------------
# Z evaluation


@dataclass
class ZSample:
    t: mpf
    z: mpf
    method: str
    error_estimate: mpf


def z_eval(t, prec: int = DEFAULT_PREC, method: str = "euler_maclaurin") -> ZSample:
    """Z(t) = e^{i theta(t)} zeta(1/2 + it), guaranteed-real output.

    euler_maclaurin (default) carries an explicit truncation bound plus the
    imaginary residue of the complex product; riemann_siegel delegates to the
    library implementation and records a working-precision heuristic bound.
    """
    with working_precision(prec):
        tm = mp.mpf(t)
        if tm < 0:
            raise ValueError("t must be >= 0")
        if method == "euler_maclaurin":
            zeta_val, zeta_err = _zeta_em(mp.mpf(0.5) + 1j * tm, prec)
            phase = mp.e ** (1j * theta(tm, prec=prec + 16))
            zc = phase * zeta_val
            err = zeta_err + abs(zc.imag)
            return ZSample(t=tm, z=zc.real, method=method, error_estimate=+err)
        if method == "riemann_siegel":
            val = mp.siegelz(tm)
            err = abs(val) * mp.mpf(2) ** (-(prec - 8)) + mp.mpf(2) ** (-(prec - 8))
            return ZSample(t=tm, z=val, method=method, error_estimate=err)
        raise ValueError(f"unknown method {method!r}")


def _z_complex(w, prec: int, fast: bool = False):
    """Analytic continuation Z(w); pole of zeta sits at w = -i/2 only."""
    with working_precision(prec):
        wm = mp.mpc(w)
        s = mp.mpf(0.5) + 1j * wm
        if fast:
            zeta_val = mp.zeta(s)
        else:
            zeta_val, _ = _zeta_em(s, prec)
        return mp.e ** (1j * _theta_complex(wm, prec)) * zeta_val


# ---------------------------------------------------------------------------
# derivatives


def _circle_derivatives(f: Callable, t, orders: Sequence[int], radius,
                        prec: int) -> Dict[int, object]:
    """f^(k)(t) for every k in orders from one circle of samples.

    Trapezoid discretization of the Cauchy integral; the sample count grows
    with the working precision and the largest requested order.
    """
    kmax = max(orders)
    with working_precision(prec, guard=32):
        r = mp.mpf(radius)
        M = 2 ** max(6, int(mp.ceil(mp.log(prec // 2 + 8 * kmax + 16, 2))))
        samples = []
        for j in range(M):
            phi_j = 2 * mp.pi * j / M
            samples.append(f(mp.mpf(t) + r * mp.e ** (1j * phi_j)))
        out = {}
        for k in orders:
            acc = mp.mpc(0)
            for j, fv in enumerate(samples):
                phi_j = 2 * mp.pi * j / M
                acc += fv * mp.e ** (-1j * k * phi_j)
            out[k] = acc / M * mp.factorial(k) / r ** k
        return out


def z_derivative(t, k: int, prec: int = DEFAULT_PREC,
                 max_order: int = MAX_DERIVATIVE_ORDER,
                 fast: bool = False) -> mpf:
    """k-th derivative of Z at t by Cauchy circle integration.

    The integration precision is elevated with the order (the r^-k factor
    amplifies sample noise); fast=True swaps the library zeta in for the
    Euler-Maclaurin sum inside the contour samples.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > max_order:
        raise CapacityError(f"derivative order {k} exceeds maximum {max_order}")
    if k == 0:
        return z_eval(t, prec=prec).z
    with working_precision(prec):
        tm = mp.mpf(t)
        radius = min(mp.mpf(2), tm / 2 + mp.mpf(0.25))
        wp = prec + 8 * k + 32
        vals = _circle_derivatives(lambda w: _z_complex(w, wp, fast=fast),
                                   tm, [k], radius, wp)
        return +vals[k].real


def z_derivative_fd(t, k: int, prec: int = DEFAULT_PREC) -> mpf:
    """Cross-check path: Richardson-extrapolated finite differences of the
    Riemann-Siegel evaluation at elevated precision."""
    if k < 0:
        raise ValueError("k must be >= 0")
    wp = prec + 12 * k + 24
    with working_precision(wp):
        tm = mp.mpf(t)
        d = mp.diff(lambda u: mp.siegelz(u), tm, k)
    with working_precision(prec):
        return +d


def z_derivatives_batch(t, orders: Sequence[int], prec: int = DEFAULT_PREC,
                        fast: bool = False) -> Dict[int, mpf]:
    """All requested derivative orders from a single contour of samples."""
    orders = sorted(set(int(k) for k in orders))
    if not orders:
        return {}
    if orders[0] < 0:
        raise ValueError("orders must be >= 0")
    if orders[-1] > MAX_DERIVATIVE_ORDER:
        raise CapacityError(f"order {orders[-1]} exceeds {MAX_DERIVATIVE_ORDER}")
    with working_precision(prec):
        tm = mp.mpf(t)
        radius = min(mp.mpf(2), tm / 2 + mp.mpf(0.25))
        wp = prec + 8 * orders[-1] + 32
        vals = _circle_derivatives(lambda w: _z_complex(w, wp, fast=fast),
                                   tm, orders, radius, wp)
        return {k: +v.real for k, v in vals.items()}


# ---------------------------------------------------------------------------
# zeros


@dataclass
class Zero:
    gamma: mpf
    half_width: mpf


@dataclass
class ZeroList:
    t_lo: mpf
    t_hi: mpf
    zeros: List[Zero]
    rescans: int = 0
    suspected_missing: bool = False

    def __len__(self) -> int:
        return len(self.zeros)

    def gammas(self) -> List[mpf]:
        return [z.gamma for z in self.zeros]

    def indexed(self, reference) -> Dict[int, mpf]:
        """gamma_k relative to reference: ..., -2, -1, 1, 2, ... with
        gamma_-1 < reference < gamma_1."""
        ref = mp.mpf(reference)
        below = [z.gamma for z in self.zeros if z.gamma < ref]
        above = [z.gamma for z in self.zeros if z.gamma > ref]
        out: Dict[int, mpf] = {}
        for i, g in enumerate(reversed(below)):
            out[-(i + 1)] = g
        for i, g in enumerate(above):
            out[i + 1] = g
        return out

    def export_csv(self, path: str, prec: int = DEFAULT_PREC) -> None:
        d = digits_for(prec)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "t", "bracket_half_width"])
            for i, z in enumerate(self.zeros, start=1):
                w.writerow([i, mp.nstr(z.gamma, d), mp.nstr(z.half_width, 6)])

    def to_json(self, prec: int = DEFAULT_PREC) -> str:
        d = digits_for(prec)
        return json.dumps({
            "t_lo": mp.nstr(self.t_lo, d),
            "t_hi": mp.nstr(self.t_hi, d),
            "count": len(self.zeros),
            "rescans": self.rescans,
            "suspected_missing": self.suspected_missing,
            "zeros": [{"t": mp.nstr(z.gamma, d),
                       "half_width": mp.nstr(z.half_width, 6)}
                      for z in self.zeros],
        }, sort_keys=True, indent=2)


def _scan_step(t, prec: int) -> mpf:
    """pi/(4 theta'(t)) clamped: theta' is small or negative below ~18."""
    tp = theta_prime(max(mp.mpf(t), mp.mpf(20)), prec=prec)
    tp = max(tp, mp.mpf(0.5))
    return mp.pi / (4 * tp)


def _bisect_zero(f: Callable, lo, hi, prec: int) -> Tuple[mpf, mpf]:
    target = mp.mpf(2) ** (-BISECTION_HALF_WIDTH_BITS)
    flo = f(lo)
    with working_precision(prec):
        while (hi - lo) / 2 > target:
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                return mid, mp.mpf(0)
            if (flo > 0) != (fm > 0):
                hi = mid
            else:
                lo, flo = mid, fm
        return (lo + hi) / 2, (hi - lo) / 2


def expected_zero_count(t_lo, t_hi, prec: int = DEFAULT_PREC) -> mpf:
    """(theta(t_hi) - theta(t_lo))/pi, the smooth count of zeros in the
    interval (off by the bounded fluctuation term)."""
    with working_precision(prec):
        lo = max(mp.mpf(t_lo), mp.mpf(0))
        return (theta(t_hi, prec=prec) - theta(lo, prec=prec)) / mp.pi


def find_zeros(t_lo, t_hi, prec: int = DEFAULT_PREC,
               max_rescans: int = 4) -> ZeroList:
    """All sign-change zeros of Z in (t_lo, t_hi], bisected to 2^-48.

    Scans with the Riemann-Siegel fast path at step pi/(4 theta'); the count
    is cross-checked against the smooth theta-based estimate and the scan is
    repeated at half step (up to max_rescans times) when a missed close pair
    is suspected.  Each final bracket is certified by an Euler-Maclaurin
    sign check.
    """
    with working_precision(prec):
        lo = mp.mpf(t_lo)
        hi = mp.mpf(t_hi)
        if not hi > lo >= 0:
            raise ValueError("need t_hi > t_lo >= 0")
        f = lambda u: mp.siegelz(u)
        expected = expected_zero_count(lo, hi, prec=prec)
        rescans = 0
        step_scale = mp.mpf(1)
        while True:
            brackets = []
            u = lo
            fu = f(u) if u > 0 else None
            while u < hi:
                v = min(u + _scan_step(u, prec) * step_scale, hi)
                fv = f(v)
                if fu is not None and fu != 0 and (fu > 0) != (fv > 0):
                    brackets.append((u, v, fu))
                u, fu = v, fv
            # the smooth estimate can be off by the fluctuation term, so only
            # a deficit of 2 or more triggers a rescan
            if expected - len(brackets) < 2 or rescans >= max_rescans:
                break
            rescans += 1
            step_scale /= 2
        zeros = []
        for (a, b, fa) in brackets:
            g, hw = _bisect_zero(f, a, b, prec)
            zeros.append(Zero(gamma=g, half_width=hw))
        for z in zeros:
            w = max(z.half_width * 4, mp.mpf(2) ** (-BISECTION_HALF_WIDTH_BITS + 2))
            za = z_eval(z.gamma - w, prec=prec)
            zb = z_eval(z.gamma + w, prec=prec)
            if (za.z > 0) == (zb.z > 0):
                # widen once; a still-matching sign means the bracket failed
                w *= 256
                za = z_eval(z.gamma - w, prec=prec)
                zb = z_eval(z.gamma + w, prec=prec)
                if (za.z > 0) == (zb.z > 0):
                    raise PrecisionEscalationError(
                        f"could not certify sign change at t = {mp.nstr(z.gamma, 20)}")
        return ZeroList(t_lo=lo, t_hi=hi, zeros=zeros, rescans=rescans,
                        suspected_missing=bool(expected - len(zeros) >= 2))


# ---------------------------------------------------------------------------
# counting statistics


@dataclass
class CountStats:
    t: mpf
    n_counted: int
    n_main: mpf
    s_estimate: mpf

    def to_json(self, prec: int = DEFAULT_PREC) -> str:
        d = digits_for(prec)
        return json.dumps({
            "t": mp.nstr(self.t, d),
            "n_counted": self.n_counted,
            "n_main": mp.nstr(self.n_main, d),
            "s_estimate": mp.nstr(self.s_estimate, d),
        }, sort_keys=True, indent=2)


def n_main(t, prec: int = DEFAULT_PREC) -> mpf:
    """Smooth zero-count main term t/2pi log(t/2pi e), without the constant
    7/8 (which is folded into the fluctuation estimate)."""
    with working_precision(prec):
        tm = mp.mpf(t)
        return tm / (2 * mp.pi) * mp.log(tm / (2 * mp.pi * mp.e))


def count_stats(t, prec: int = DEFAULT_PREC,
                zero_list: Optional[ZeroList] = None) -> CountStats:
    """Counted-minus-main realization of the fluctuation term at height t.

    The fluctuation estimate is N_counted - N_main - 7/8; equal to S(t) up
    to the integer consistency the count check enforces.
    """
    with working_precision(prec):
        tm = mp.mpf(t)
        if tm < 10:
            raise ValueError("count_stats requires t >= 10")
        zl = zero_list if zero_list is not None else find_zeros(0, tm, prec=prec)
        main = n_main(tm, prec=prec)
        return CountStats(t=tm, n_counted=len(zl), n_main=main,
                          s_estimate=len(zl) - main - mp.mpf(7) / 8)


# ---------------------------------------------------------------------------
# spacing report


@dataclass
class SpacingRow:
    k: int
    gamma_plus: mpf
    gamma_minus: mpf
    main_term: mpf
    residual_plus: mpf
    residual_minus: mpf


@dataclass
class SpacingReport:
    T: mpf
    K: int
    log_scale: mpf
    rows: List[SpacingRow]

    def to_json(self, prec: int = DEFAULT_PREC) -> str:
        d = digits_for(prec)
        return json.dumps({
            "T": mp.nstr(self.T, d),
            "K": self.K,
            "log_scale": mp.nstr(self.log_scale, d),
            "rows": [{
                "k": r.k,
                "gamma_plus": mp.nstr(r.gamma_plus, d),
                "gamma_minus": mp.nstr(r.gamma_minus, d),
                "main_term": mp.nstr(r.main_term, d),
                "residual_plus": mp.nstr(r.residual_plus, d),
                "residual_minus": mp.nstr(r.residual_minus, d),
            } for r in self.rows],
        }, sort_keys=True, indent=2)


def spacing_check(T, K: int, prec: int = DEFAULT_PREC) -> SpacingReport:
    """Distances |gamma_{+-k} - T| minus the (k-1) pi/log sqrt(T/2pi) term.

    Pure report: the leftover is what the unknowable o(1)/loglog correction
    absorbs, so nothing here passes or fails.
    """
    with working_precision(prec):
        Tm = mp.mpf(T)
        if Tm < 20:
            raise ValueError("spacing_check requires T >= 20")
        if K < 1 or K * K > Tm:
            raise ValueError("need 1 <= K <= floor(sqrt(T))")
        zT = z_eval(Tm, prec=prec)
        if abs(zT.z) <= 4 * zT.error_estimate:
            raise RejectedPointError("Z(T) indistinguishable from zero")
        log_scale = mp.log(mp.sqrt(Tm / (2 * mp.pi)))
        mean_gap = mp.pi / log_scale
        window = (K + 2) * mean_gap * 3 + 2
        zl = find_zeros(max(Tm - window, mp.mpf(10)), Tm + window, prec=prec)
        idx = zl.indexed(Tm)
        if K not in idx or -K not in idx:
            raise ValueError("window did not capture K zeros on both sides; "
                             "increase K margin or lower K")
        rows = []
        for k in range(1, K + 1):
            main = (k - 1) * mean_gap
            rows.append(SpacingRow(
                k=k, gamma_plus=idx[k], gamma_minus=idx[-k], main_term=main,
                residual_plus=abs(idx[k] - Tm) - main,
                residual_minus=abs(idx[-k] - Tm) - main))
        return SpacingReport(T=Tm, K=K, log_scale=log_scale, rows=rows)


# ---------------------------------------------------------------------------
# derivative-maximum exploration


@dataclass
class ExploreRow:
    k: int
    max_abs_deriv: mpf
    t_at_max: mpf
    bound: mpf
    margin: mpf
    witness: bool


@dataclass
class ExploreReport:
    T: mpf
    C: mpf
    m_theorem: int
    m_used: int
    z_at_T: mpf
    grid_points: int
    witness_k: Optional[int]
    rows: List[ExploreRow]
    exploratory_note: str = ("desk-scale T cannot validate an asymptotic "
                             "statement; margins are raw data")

    def to_json(self, prec: int = DEFAULT_PREC) -> str:
        d = digits_for(prec)
        return json.dumps({
            "T": mp.nstr(self.T, d),
            "C": mp.nstr(self.C, d),
            "m_theorem": self.m_theorem,
            "m_used": self.m_used,
            "z_at_T": mp.nstr(self.z_at_T, d),
            "grid_points": self.grid_points,
            "witness_k": self.witness_k,
            "exploratory_note": self.exploratory_note,
            "rows": [{
                "k": r.k,
                "max_abs_deriv": mp.nstr(r.max_abs_deriv, d),
                "t_at_max": mp.nstr(r.t_at_max, d),
                "bound": mp.nstr(r.bound, d),
                "margin": mp.nstr(r.margin, d),
                "witness": r.witness,
            } for r in self.rows],
        }, sort_keys=True, indent=2)


def theorem1_explore(T, C, m_cap: int = 16, prec: int = DEFAULT_PREC,
                     fast: bool = True) -> ExploreReport:
    """Grid maxima of |Z^(k)| over [T-2pi, T+2pi] against the shrinking-factor
    bound, for k in {1, 3, ..., 2m-1, 2m}.

    m = min(floor(C log T loglog T), m_cap); the grid step is
    pi/(8 theta'(T)) with local refinement around each running maximum.  A
    witness is any k whose grid maximum meets its bound.  Explicitly
    exploratory output.
    """
    with working_precision(prec):
        Tm = mp.mpf(T)
        Cm = mp.mpf(C)
        if Tm < 30:
            raise ValueError("explore requires T >= 30 (loglog scale)")
        if m_cap < 1:
            raise ValueError("m_cap must be >= 1")
        zT = z_eval(Tm, prec=prec)
        if abs(zT.z) <= 4 * zT.error_estimate:
            raise RejectedPointError("Z(T) indistinguishable from zero")
        m_theorem = int(mp.floor(Cm * mp.log(Tm) * mp.log(mp.log(Tm))))
        m_used = max(1, min(m_theorem, m_cap))
        orders = list(range(1, 2 * m_used, 2)) + [2 * m_used]
        step = mp.pi / (8 * max(theta_prime(Tm, prec=prec), mp.mpf(0.25)))
        grid = []
        u = Tm - 2 * mp.pi
        while u <= Tm + 2 * mp.pi:
            grid.append(u)
            u += step
        maxima: Dict[int, Tuple[mpf, mpf]] = {k: (mp.mpf(-1), Tm) for k in orders}
        for u in grid:
            vals = z_derivatives_batch(u, orders, prec=prec, fast=fast)
            for k in orders:
                if abs(vals[k]) > maxima[k][0]:
                    maxima[k] = (abs(vals[k]), u)
        # one refinement pass: re-sample at half step around each maximum
        for k in orders:
            _, t0 = maxima[k]
            for du in (-step / 2, step / 2):
                u = t0 + du
                if Tm - 2 * mp.pi <= u <= Tm + 2 * mp.pi:
                    v = abs(z_derivatives_batch(u, [k], prec=prec, fast=fast)[k])
                    if v > maxima[k][0]:
                        maxima[k] = (v, u)
        shrink = 1 - mp.log(mp.log(mp.log(Tm))) / mp.log(mp.log(Tm)) \
            if mp.log(mp.log(Tm)) > 1 and mp.log(Tm) > mp.e else mp.mpf(1)
        log_scale = mp.log(mp.sqrt(Tm / (2 * mp.pi)))
        rows = []
        witness_k = None
        for k in orders:
            mx, t_at = maxima[k]
            bound = (shrink * log_scale) ** k * abs(zT.z)
            witness = bool(mx >= bound)
            if witness and witness_k is None:
                witness_k = k
            rows.append(ExploreRow(k=k, max_abs_deriv=mx, t_at_max=t_at,
                                   bound=bound, margin=mx - bound,
                                   witness=witness))
        return ExploreReport(T=Tm, C=Cm, m_theorem=m_theorem, m_used=m_used,
                             z_at_T=zT.z, grid_points=len(grid),
                             witness_k=witness_k, rows=rows)
