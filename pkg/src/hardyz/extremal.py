"""Extremal node configurations and the numeric certificate chain.

The extremal configuration places |x*_k| = (k-1) pi + s* inside the interval
of half-width a = (n - 1/2) pi / c.  Two bounds are checked on it: the sine
product lies in (0, 2^-2n) and the cosine divided difference lies in
(0, 2^(2n-1)).  Their product, together with the kernel sup bound scaled by
the computed tail constant, forms the certificate total that must stay
below 1.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from .divided_diff import FunctionProbe
from .kernel import NodeConfig, boundary_sum_bound, coefficients
from .precision import DEFAULT_PREC, digits_for, working_precision
from .sequences import tail_weight_constant

FIND_C_EPS_RESOLUTION_BITS = 12


@dataclass
class ExtremalParams:
    """(n, c, eps) with the derived delta, eta, a and s* quantities."""

    n: int
    c: object
    eps: object
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        with working_precision(self.prec):
            c = mp.mpf(self.c)
            eps = mp.mpf(self.eps)
            if not 0 < c < 1:
                raise ValueError("c must lie in (0, 1)")
            if not 0 < eps < mp.log(2):
                raise ValueError("eps must lie in (0, log 2)")
            if self.n < 1:
                raise ValueError("n must be >= 1")

    @property
    def delta(self) -> mpf:
        with working_precision(self.prec):
            return 1 - mp.mpf(self.c)

    @property
    def eta(self) -> mpf:
        with working_precision(self.prec):
            d = self.delta
            return (mp.log(2) - mp.mpf(self.eps)) * d / abs(mp.log(d))

    @property
    def a(self) -> mpf:
        with working_precision(self.prec):
            return (self.n - mp.mpf(0.5)) * mp.pi / mp.mpf(self.c)

    @property
    def s_star(self) -> mpf:
        with working_precision(self.prec):
            return self.eta * self.a

    def admissible(self, c_eps) -> bool:
        with working_precision(self.prec):
            return bool(mp.mpf(c_eps) < mp.mpf(self.c) < 1 - mp.mpf(1) / (2 * self.n))


def log_sine_integral(t, prec: int = DEFAULT_PREC) -> mpf:
    """G(t) = integral_0^t log sin(pi tau/2) d tau by quadrature.

    The log singularity at 0 is handled by the substitution tau = exp(-u) on
    an initial segment; the remainder uses Gauss-Legendre.
    """
    with working_precision(prec):
        tm = mp.mpf(t)
        if tm == 0:
            return mp.mpf(0)
        if tm < 0 or tm > 1:
            raise ValueError("t must lie in [0, 1]")
        cut = min(tm, mp.mpf(1) / 8)

        def g_exp(u):
            tau = mp.e ** (-u)
            return mp.log(mp.sin(mp.pi * tau / 2)) * tau

        head = mp.quad(g_exp, [-mp.log(cut), mp.inf])
        if tm > cut:
            body = mp.quad(lambda tau: mp.log(mp.sin(mp.pi * tau / 2)),
                           [cut, tm], method="gauss-legendre")
        else:
            body = mp.mpf(0)
        return head + body


def log_sine_integral_closed(t, prec: int = DEFAULT_PREC) -> mpf:
    """Closed form G(t) = -t log 2 - Cl_2(pi t)/pi via the Clausen function.

    Fast path used for admissibility grid scans; cross-checked against the
    quadrature route in the test suite.
    """
    with working_precision(prec):
        tm = mp.mpf(t)
        return -tm * mp.log(2) - mp.clsin(2, mp.pi * tm) / mp.pi


def g_and_h(delta, eps, prec: int = DEFAULT_PREC,
            g_func: Optional[Callable] = None) -> Tuple[Tuple[mpf, mpf], mpf]:
    """((G(1-delta+eta), G(eta)), h(delta)) for the sine-product bound.

    h(delta) = (1-delta) log 2 + G(1-delta+eta) - G(eta) with
    eta = (log 2 - eps) delta/|log delta|; h -> 0 with slope -eps as
    delta -> 0+, and the admissible c-range is where h < 0.
    """
    G = g_func or (lambda t: log_sine_integral(t, prec=prec))
    with working_precision(prec):
        d = mp.mpf(delta)
        if not 0 < d < mp.mpf(1) / 4:
            raise ValueError("delta must lie in (0, 1/4)")
        eta = (mp.log(2) - mp.mpf(eps)) * d / abs(mp.log(d))
        g_upper = G(1 - d + eta)
        g_lower = G(eta)
        h = (1 - d) * mp.log(2) + g_upper - g_lower
        return (g_upper, g_lower), h


_c_eps_cache = {}


def find_c_eps(eps, n: int = 0, prec: int = DEFAULT_PREC,
               resolution_bits: int = FIND_C_EPS_RESOLUTION_BITS) -> mpf:
    """Numerically locate c_eps = 1 - delta_eps with h < 0 on (0, delta_eps).

    Scans a delta-grid of step 2^-resolution_bits up to 1/4, bisects the
    first sign change of h.  If h >= 0 on the whole grid (which would
    contradict the sine-product argument) a warning is issued and c_eps = 1
    is returned, making the admissible range empty.
    """
    key = (str(eps), prec, resolution_bits)
    if key in _c_eps_cache:
        return _c_eps_cache[key]
    with working_precision(prec):
        G = lambda t: log_sine_integral_closed(t, prec=prec)
        step = mp.mpf(2) ** (-resolution_bits)
        h_at = lambda d: g_and_h(d, eps, prec=prec, g_func=G)[1]
        prev = None
        first_bad = None
        d = step
        while d < mp.mpf(1) / 4:
            if h_at(d) >= 0:
                first_bad = d
                break
            prev = d
            d += step
        if first_bad is None:
            delta_eps = mp.mpf(1) / 4
        elif prev is None:
            warnings.warn("h(delta) >= 0 at the smallest grid point; "
                          "no admissible range located")
            result = mp.mpf(1)
            _c_eps_cache[key] = result
            return result
        else:
            lo, hi = prev, first_bad
            for _ in range(prec // 2):
                mid = (lo + hi) / 2
                if h_at(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            delta_eps = lo
        result = 1 - delta_eps
        _c_eps_cache[key] = result
        return result


def extremal_config(params: ExtremalParams, prec: Optional[int] = None) -> NodeConfig:
    """NodeConfig with x*_{+-k} = +-((k-1) pi + s*), x_0 = 0."""
    prec = prec or params.prec
    with working_precision(prec):
        s = params.s_star
        if not 0 < s < mp.pi:
            raise ValueError("s* must lie in (0, pi) for strict ordering")
        a = params.a
        pos = [(k - 1) * mp.pi + s for k in range(1, params.n + 1)]
        if not pos[-1] < a:
            raise ValueError("outermost node escapes (-a, a)")
        nodes = [-v for v in reversed(pos)] + [mp.mpf(0)] + pos
        return NodeConfig(n=params.n, a=a, nodes=nodes, strict=True)


def sine_product(config: NodeConfig, prec: int = DEFAULT_PREC,
                 log_domain: bool = False) -> mpf:
    """(-1)^n prod_{j!=0} sin(pi x_j/2a); contract (0, 2^-2n) on extremal
    configurations in the admissible range."""
    with working_precision(prec):
        a = mp.mpf(config.a)
        n = config.n
        if log_domain:
            log_abs = mp.mpf(0)
            sign = 1
            for i, xj in enumerate(config.nodes):
                if i == n:
                    continue
                s = mp.sin(mp.pi * mp.mpf(xj) / (2 * a))
                sign *= 1 if s > 0 else -1
                log_abs += mp.log(abs(s))
            return (-1) ** n * sign * mp.e ** log_abs
        prod = mp.mpf(1)
        for i, xj in enumerate(config.nodes):
            if i != n:
                prod *= mp.sin(mp.pi * mp.mpf(xj) / (2 * a))
        return (-1) ** n * prod


def phi(y: Sequence, n: int, prec: int = DEFAULT_PREC) -> mpf:
    """(-1)^n sum_k cos((2n-1) Arcsin sqrt(y_k)) / prod_{j!=k}(y_k - y_j)
    over strictly increasing y_0 < ... < y_n in [0, 1]."""
    if len(y) != n + 1:
        raise ValueError("phi expects n+1 arguments")
    with working_precision(prec):
        ym = [mp.mpf(v) for v in y]
        for u, v in zip(ym, ym[1:]):
            if not u < v:
                raise ValueError("phi requires strictly increasing arguments")
        if ym[0] < 0 or ym[-1] > 1:
            raise ValueError("phi arguments must lie in [0, 1]")
        total = mp.mpf(0)
        for k, yk in enumerate(ym):
            prod = mp.mpf(1)
            for j, yj in enumerate(ym):
                if j != k:
                    prod *= yk - yj
            total += mp.cos((2 * n - 1) * mp.asin(mp.sqrt(yk))) / prod
        return (-1) ** n * total


def equal_angle_nodes(n: int, prec: int = DEFAULT_PREC) -> List[mpf]:
    """t*_k = sin^2(k pi/(2n)) for k = 0..n."""
    with working_precision(prec):
        return [mp.sin(k * mp.pi / (2 * n)) ** 2 for k in range(n + 1)]


def equal_angle_weights(n: int, prec: int = DEFAULT_PREC) -> List[mpf]:
    """gamma_k = 1/prod_{j!=k}(t*_k - t*_j) at the equal-angle nodes."""
    t = equal_angle_nodes(n, prec=prec)
    with working_precision(prec):
        out = []
        for k, tk in enumerate(t):
            prod = mp.mpf(1)
            for j, tj in enumerate(t):
                if j != k:
                    prod *= tk - tj
            out.append(1 / prod)
        return out


def divided_bound(config: NodeConfig, params: ExtremalParams,
                  prec: int = DEFAULT_PREC) -> mpf:
    """The cosine divided-difference bound via the monotone functional route.

    Equals phi(0, t_1(s*), ..., t_n(s*)) with t_k = sin^2(pi x*_k/(2a));
    the reduction uses sin(c a) = (-1)^(n+1), which is checked numerically.
    """
    n = config.n
    with working_precision(prec):
        a = mp.mpf(config.a)
        c = mp.mpf(params.c)
        sca = mp.sin(c * a)
        if abs(sca - (-1) ** (n + 1)) > mp.mpf(2) ** (-(prec - 8)):
            raise ValueError("sin(c a) != (-1)^(n+1): params and config disagree")
        y = [mp.mpf(0)] + [mp.sin(mp.pi * mp.mpf(config.node(k)) / (2 * a)) ** 2
                           for k in range(1, n + 1)]
        return phi(y, n, prec=prec)


def divided_bound_direct(config: NodeConfig, c, prec: int = DEFAULT_PREC) -> mpf:
    """Independent route: (-1/sin(ca)) sum_k alpha_k cos(c x_k) over all
    2n+1 nodes, with alpha from the kernel coefficient products."""
    with working_precision(prec):
        a = mp.mpf(config.a)
        cm = mp.mpf(c)
        coeffs = coefficients(config, prec=prec)
        total = mp.mpf(0)
        for i, al in enumerate(coeffs.alpha):
            total += mp.mpf(al) * mp.cos(cm * mp.mpf(config.nodes[i]))
        return -total / mp.sin(cm * a)


def hyp_coefficients(n: int, K: int) -> List[int]:
    """Exact integers prod_{j=0}^{k-1}(4 j^2 - (2n-1)^2) for k = 0..K.

    Taylor numerators of cos((2n-1) Arcsin sqrt(t)); sign (-1)^n for k >= n.
    """
    if n < 1 or K < 0:
        raise ValueError("need n >= 1 and K >= 0")
    out = [1]
    acc = 1
    for k in range(K):
        acc *= 4 * k * k - (2 * n - 1) ** 2
        out.append(acc)
    return out


def node_spread_monotonicity(t: Sequence, t_star: Sequence, probe: FunctionProbe,
                             prec: int = DEFAULT_PREC) -> Tuple[mpf, mpf]:
    """Divided differences over two symmetric node sets, spread-dominated.

    Both sets must be symmetric about 1/2 (t_k + t_{n-k} = 1) and t_star must
    dominate t on the upper half; under a nonnegative top derivative the
    first divided difference is <= the second.
    """
    with working_precision(prec):
        tm = [mp.mpf(v) for v in t]
        sm = [mp.mpf(v) for v in t_star]
        if len(tm) != len(sm):
            raise ValueError("node sets must have equal size")
        tol = mp.mpf(2) ** (-(prec // 2))
        for seq in (tm, sm):
            for k in range(len(seq)):
                if abs(seq[k] + seq[len(seq) - 1 - k] - 1) > tol:
                    raise ValueError("node set not symmetric about 1/2")
        half = len(tm) // 2
        for k in range(half, len(tm)):
            if sm[k] < tm[k] - tol:
                raise ValueError("t_star must dominate t on the upper half")

        def dd(nodes):
            total = mp.mpf(0)
            for k, yk in enumerate(nodes):
                prod = mp.mpf(1)
                for j, yj in enumerate(nodes):
                    if j != k:
                        prod *= yk - yj
                total += mp.mpf(probe.value(yk)) / prod
            return total

        return dd(tm), dd(sm)


def theorem2_bound(n: int, c, eps, prec: int = DEFAULT_PREC) -> mpf:
    """Lower bound (log 2 - eps) (1-c)/|log(1-c)| n pi on the zero spread s."""
    with working_precision(prec):
        cm = mp.mpf(c)
        return (mp.log(2) - mp.mpf(eps)) * (1 - cm) / abs(mp.log(1 - cm)) * n * mp.pi


@dataclass
class CertificateReport:
    n: int
    c: str
    eps: str
    m: int
    c_eps: str
    admissible: bool
    s_star: str
    sine_product: str
    sine_product_in_range: bool
    divided_bound: str
    divided_bound_in_range: bool
    product: str
    product_below_half: bool
    integral_bound: str
    total: str
    total_below_one: bool
    margin: str
    boundary_lhs: str
    boundary_rhs: str
    boundary_ok: bool
    s_lower_bound: str
    precision_bits: int = DEFAULT_PREC

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True, indent=2)


def theorem2_certificate(n: int, c, eps, m: int,
                         prec: int = DEFAULT_PREC,
                         boundary_m: Optional[int] = None,
                         require_admissible: bool = True) -> CertificateReport:
    """Evaluate the full numeric chain on the extremal configuration.

    Sub-bounds: sine product in (0, 2^-2n); cosine divided difference in
    (0, 2^(2n-1)); their product below 1/2; plus the integral bound
    2^(2n) * |sine product| * (1 - 1/2n)^(2m) * C*; the total must be < 1.
    Margins are reported rather than asserted; failures at small n are data.
    With require_admissible=False the chain is evaluated anyway and the
    report carries admissible=False (the bounds are well defined pointwise,
    only the supporting argument needs the admissible range).
    """
    params = ExtremalParams(n=n, c=c, eps=eps, prec=prec)
    c_eps = find_c_eps(eps, n, prec=prec)
    admissible = params.admissible(c_eps)
    if not admissible and require_admissible:
        raise ValueError(
            f"(n={n}, c={c}, eps={eps}) outside the admissible range "
            f"(c_eps={mp.nstr(c_eps, 8)}, 1 - 1/2n = {1 - 1 / (2 * n)})")
    with working_precision(prec):
        if m < n * mp.log(n):
            raise ValueError("certificate regime requires m >= n log n")
        config = extremal_config(params, prec=prec)
        P = sine_product(config, prec=prec)
        D = divided_bound(config, params, prec=prec)
        product = P * D
        integral_bound = mp.mpf(2) ** (2 * n) * abs(P) \
            * (1 - mp.mpf(1) / (2 * n)) ** (2 * m) * tail_weight_constant(prec=prec)
        total = product + integral_bound
        bm = boundary_m if boundary_m is not None else min(m, 12)
        lhs, rhs = boundary_sum_bound(config, params.c, bm, prec=prec)
        d = digits_for(prec)
        return CertificateReport(
            n=n, c=mp.nstr(mp.mpf(c), d), eps=mp.nstr(mp.mpf(eps), d), m=m,
            c_eps=mp.nstr(c_eps, d), admissible=admissible,
            s_star=mp.nstr(params.s_star, d),
            sine_product=mp.nstr(P, d),
            sine_product_in_range=bool(0 < P < mp.mpf(2) ** (-2 * n)),
            divided_bound=mp.nstr(D, d),
            divided_bound_in_range=bool(0 < D < mp.mpf(2) ** (2 * n - 1)),
            product=mp.nstr(product, d),
            product_below_half=bool(product < mp.mpf(0.5)),
            integral_bound=mp.nstr(integral_bound, d),
            total=mp.nstr(total, d),
            total_below_one=bool(total < 1),
            margin=mp.nstr(1 - total, d),
            boundary_lhs=mp.nstr(lhs, d),
            boundary_rhs=mp.nstr(rhs, d),
            boundary_ok=bool(lhs <= rhs),
            s_lower_bound=mp.nstr(theorem2_bound(n, c, eps, prec=prec), d),
            precision_bits=prec,
        )
