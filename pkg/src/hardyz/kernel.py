"""Bernoulli-combination kernels over symmetric node configurations.

A NodeConfig holds 2n+1 nodes x_{-n} <= ... <= x_n in (-a, a) with x_0 = 0;
strict ordering is the open set of admissible configurations, weak ordering
its closure-like superset where nodes of the same sign may coincide.  The
kernel weights are reciprocal sine-difference products; boundary values of
the kernels extend continuously to coincident nodes through confluent
divided differences of a smooth transfer function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from .divided_diff import NodeMultiset, divided_difference_data
from .polynomials import bernoulli_poly, chebyshev, chebyshev_derivatives
from .precision import DEFAULT_PREC, working_precision
from .sequences import TAIL_WEIGHT_MIN_N, tail_weight_constant


class DuplicateNodeError(ValueError):
    """Operation requires pairwise distinct nodes (use the extension path)."""


class SingularParameterError(ValueError):
    """Parameter hits a removable singularity; we refuse rather than regularize."""


@dataclass
class NodeConfig:
    """Symmetric-interval node system x_{-n..n} with x_0 = 0 inside (-a, a)."""

    n: int
    a: object
    nodes: List[object]  # length 2n+1, index i <-> k = i - n
    strict: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.nodes) != 2 * self.n + 1:
            raise ValueError("need 2n+1 nodes")
        if self.nodes[self.n] != 0:
            raise ValueError("x_0 must be exactly 0")
        a = mp.mpf(self.a)
        if not a > 0:
            raise ValueError("a must be positive")
        xs = [mp.mpf(v) for v in self.nodes]
        if not (-a < xs[0] and xs[-1] < a):
            raise ValueError("nodes must lie in (-a, a)")
        if not (xs[self.n - 1] < 0 < xs[self.n + 1]):
            raise ValueError("x_{-1} < 0 < x_1 required")
        for i in range(2 * self.n):
            if i == self.n - 1 or i == self.n:
                continue  # already checked strictly around 0
            if self.strict:
                if not xs[i] < xs[i + 1]:
                    raise ValueError("strict configuration requires increasing nodes")
            else:
                if not xs[i] <= xs[i + 1]:
                    raise ValueError("nodes must be non-decreasing")
        if self.strict:
            for i in range(2 * self.n):
                if not xs[i] < xs[i + 1]:
                    raise ValueError("strict configuration requires increasing nodes")

    def node(self, k: int):
        """x_k for k in -n..n."""
        return self.nodes[k + self.n]

    def is_strict(self) -> bool:
        xs = self.nodes
        return all(mp.mpf(xs[i]) < mp.mpf(xs[i + 1]) for i in range(len(xs) - 1))

    def sine_nodes(self, prec: int = DEFAULT_PREC) -> List[mpf]:
        """t_k = sin(pi x_k / 2a), the transformed nodes, k = -n..n."""
        with working_precision(prec):
            a = mp.mpf(self.a)
            return [mp.sin(mp.pi * mp.mpf(x) / (2 * a)) for x in self.nodes]


@dataclass
class KernelCoefficients:
    alpha: List[mpf]
    mu: List[mpf]
    condition_estimate: mpf

    def alpha_k(self, k: int):
        return self.alpha[k + (len(self.alpha) - 1) // 2]

    def mu_k(self, k: int):
        return self.mu[k + (len(self.mu) - 1) // 2]


def coefficients(config: NodeConfig, prec: int = DEFAULT_PREC) -> KernelCoefficients:
    """Weights alpha_k = 1/prod_{j!=k}(t_k - t_j) over the sine-transformed
    nodes, and mu_k = alpha_k/alpha_0.

    Computed at twice the caller precision (the products cancel badly for
    clustered nodes); condition_estimate = max|alpha_k| * min node spacing,
    a heuristic, reported so callers can escalate.
    """
    if not config.is_strict():
        raise DuplicateNodeError("coefficients requires pairwise distinct nodes")
    with working_precision(2 * prec):
        t = config.sine_nodes(prec=mp.prec)
        N = len(t)
        alpha = []
        for k in range(N):
            prod = mp.mpf(1)
            for j in range(N):
                if j != k:
                    prod *= t[k] - t[j]
            alpha.append(1 / prod)
        a0 = alpha[config.n]
        mu = [v / a0 for v in alpha]
        spacing = min(t[i + 1] - t[i] for i in range(N - 1))
        cond = max(abs(v) for v in alpha) * spacing
    with working_precision(prec):
        return KernelCoefficients(alpha=[+v for v in alpha], mu=[+v for v in mu],
                                  condition_estimate=+cond)


def psi(config: NodeConfig, l: int, x, prec: int = DEFAULT_PREC,
        weights: Optional[Sequence] = None) -> mpf:
    """Direct Bernoulli-sum evaluation of the order-(2l-1) kernel at x.

    weights overrides the mu_k (used with arbitrary zero-sum weight vectors);
    by default the Lemma-style mu from coefficients() are used.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    mu = list(weights) if weights is not None else coefficients(config, prec=prec).mu
    with working_precision(prec):
        a = mp.mpf(config.a)
        xm = mp.mpf(x)
        two_l = 2 * l
        pref = (4 * a) ** (two_l - 1) / mp.factorial(two_l)
        total = mp.mpf(0)
        for i, m_k in enumerate(mu):
            m_k = mp.mpf(m_k)
            if m_k == 0:
                continue
            xk = mp.mpf(config.nodes[i])
            u = mp.mpf(0.5) + (xm + xk) / (4 * a)
            v = (xm - xk) / (4 * a)
            v = v - mp.floor(v)
            total += m_k * (bernoulli_poly(two_l, u, prec=mp.prec)
                            + bernoulli_poly(two_l, v, prec=mp.prec))
        return pref * total


def _boundary_transfer(l: int, a, sign: int, prec: int) -> Callable:
    """h(t) = 2 (4a)^(2l-1)/(2l)! B_2l(1/2 +- 1/4 + Arcsin(t)/(2 pi)).

    Smooth on (-1, 1); the kernel boundary value is the divided difference of
    h over the sine-transformed nodes divided by alpha_0.
    """
    from .polynomials import bernoulli_poly_coeffs
    base = mp.mpf(0.5) + sign * mp.mpf(0.25)
    coeffs = bernoulli_poly_coeffs(2 * l)

    def h(t):
        # accepts complex t (needed by the Cauchy-integral differentiation)
        with working_precision(prec):
            u = base + mp.asin(t) / (2 * mp.pi)
            am = mp.mpf(a)
            acc = mp.mpf(0)
            for cf in reversed(coeffs):
                acc = acc * u + mp.mpf(cf.numerator) / cf.denominator
            return 2 * (4 * am) ** (2 * l - 1) / mp.factorial(2 * l) * acc

    return h


def _smooth_derivative(f: Callable, t, order: int, prec: int) -> mpf:
    """order-th derivative of an analytic f at t in (-1,1), Cauchy-integral path."""
    with working_precision(2 * prec):
        tm = mp.mpf(t)
        if order == 0:
            return f(tm)
        radius = (1 - abs(tm)) / 2
        d = mp.diff(f, tm, order, method="quad", radius=radius)
        return d.real if hasattr(d, "real") and not isinstance(d, mp.mpf) else d


def psi_star_boundary(config: NodeConfig, l: int, sign: int,
                      prec: int = DEFAULT_PREC) -> mpf:
    """Continuous extension of the kernel boundary value at x = sign*a.

    For strict configurations this equals psi(config, l, sign*a); coincident
    nodes go through the confluent divided difference of the transfer
    function, with derivatives from the Cauchy integral formula.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    if l < 1:
        raise ValueError("l must be >= 1")
    if config.is_strict():
        return psi(config, l, mp.mpf(config.a) * sign, prec=prec)
    with working_precision(2 * prec):
        t = config.sine_nodes(prec=mp.prec)
        h = _boundary_transfer(l, config.a, sign, mp.prec)
        cache = {}

        def data(y, i):
            key = (y, i)
            if key not in cache:
                cache[key] = _smooth_derivative(h, y, i, prec)
            return cache[key]

        nm = NodeMultiset(list(t))
        dd = divided_difference_data(nm, _LazyData(data), prec=mp.prec)
        # alpha_0 = 1/prod_{j != 0}(t_0 - t_j) with t_0 = 0
        prod = mp.mpf(1)
        for j, tj in enumerate(t):
            if j != config.n:
                prod *= -tj
        value = dd * prod
    with working_precision(prec):
        return +value


class _LazyData(dict):
    """dict facade over a (node, order) -> value function."""

    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def __missing__(self, key):
        v = self._fn(*key)
        self[key] = v
        return v


def chebyshev_moment(config: NodeConfig, j: int, prec: int = DEFAULT_PREC,
                     coeffs: Optional[KernelCoefficients] = None) -> mpf:
    """S_j = sum_k alpha_k (-1)^j T_j(t_k), confluent-safe.

    For weakly ordered configurations this is the confluent divided
    difference of (-1)^j T_j over the sine-transformed nodes.  Vanishes for
    j = 1..2n-1.
    """
    with working_precision(prec):
        t = config.sine_nodes(prec=mp.prec)
        if config.is_strict():
            if coeffs is None:
                coeffs = coefficients(config, prec=prec)
            total = mp.mpf(0)
            for al, tk in zip(coeffs.alpha, t):
                total += mp.mpf(al) * chebyshev(j, tk, prec=mp.prec)
            return (-1) ** j * total
        nm = NodeMultiset(list(t))
        need = nm.max_multiplicity() - 1
        cache = {}

        def data(y, i):
            key = (y, i)
            if key not in cache:
                cache[key] = chebyshev_derivatives(j, y, need, prec=mp.prec)[i] \
                    if i > 0 else chebyshev(j, y, prec=mp.prec)
            return cache[key]

        dd = divided_difference_data(nm, _LazyData(data), prec=mp.prec)
        return (-1) ** j * dd


def psi_chebyshev_series(config: NodeConfig, l: int, x, J: int,
                         prec: int = DEFAULT_PREC) -> Tuple[mpf, mpf]:
    """Chebyshev-series evaluation of the kernel with analytic tail bound.

    Valid in the convergence regime l >= n+1; this is also the continuous
    extension of the kernel to weakly ordered configurations for interior x.
    Returns (partial sum through j = 2n+J, tail bound).
    """
    n = config.n
    if l < n + 1:
        raise ValueError("series representation requires l >= n+1")
    if J < 0:
        raise ValueError("J must be >= 0")
    strict = config.is_strict()
    coeffs = coefficients(config, prec=prec) if strict else None
    with working_precision(prec):
        a = mp.mpf(config.a)
        xm = mp.mpf(x)
        if strict:
            alpha0 = coeffs.alpha[n]
        else:
            t = config.sine_nodes(prec=mp.prec)
            prod = mp.mpf(1)
            for j, tj in enumerate(t):
                if j != n:
                    prod *= -tj
            alpha0 = 1 / prod
        pref = (-1) ** (l + 1) * 2 * (2 * a) ** (2 * l - 1) / (alpha0 * mp.pi ** (2 * l))
        total = mp.mpf(0)
        last_moment_bound = mp.mpf(0)
        for j in range(2 * n, 2 * n + J + 1):
            s_j = chebyshev_moment(config, j, prec=mp.prec, coeffs=coeffs)
            total += s_j * mp.cos(j * mp.pi * (mp.mpf(0.5) + xm / (2 * a))) \
                / mp.mpf(j) ** (2 * l)
        value = pref * total
        M = 2 * n + J
        if strict:
            # |S_j| <= max|alpha_k| (2n+1); sum_{j>M} j^(-2l) <= M^(1-2l)/(2l-1)
            s_bound = max(abs(mp.mpf(v)) for v in coeffs.alpha) * (2 * n + 1)
            tail = abs(pref) * s_bound * mp.mpf(M) ** (1 - 2 * l) / (2 * l - 1)
        else:
            # |S_j| <= T_j^(2n)(1)/(2n)! = O(j^(4n)); bound the tail term by
            # term over a window then extend geometrically by the last ratio.
            from .polynomials import chebyshev_deriv_at_one
            tail = mp.mpf(0)
            prev = None
            ratio = mp.mpf(1)
            for j in range(M + 1, M + 202):
                term = mp.mpf(chebyshev_deriv_at_one(j, n)) / mp.factorial(2 * n) \
                    / mp.mpf(j) ** (2 * l)
                tail += term
                if prev is not None and prev > 0:
                    ratio = term / prev
                prev = term
            if 0 < ratio < 1:
                tail += prev * ratio / (1 - ratio)
            tail *= abs(pref)
        return value, tail


def boundary_sum_bound(config: NodeConfig, c, m: int,
                       prec: int = DEFAULT_PREC) -> Tuple[mpf, mpf]:
    """Both sides of the boundary-sum inequality.

    lhs = sum_{k=1..m} (-1)^(n+k+1) [Psi*_{2k-1}(a) + Psi*_{2k-1}(-a)] c^(2k-1);
    rhs = ((-1)^n prod_{j!=0} sin(pi x_j/2a)) * (-1/sin(ca)) sum_k alpha_k cos(c x_k).
    Contract: lhs <= rhs for 0 < c a < n pi with c a off the multiples of pi.
    """
    if not config.is_strict():
        raise DuplicateNodeError("boundary_sum_bound requires a strict configuration")
    n = config.n
    with working_precision(prec):
        a = mp.mpf(config.a)
        cm = mp.mpf(c)
        ca = cm * a
        if not 0 < ca < n * mp.pi:
            raise ValueError("need 0 < c*a < n*pi")
        tol = mp.mpf(2) ** (-(prec // 4))
        for j in range(1, n):
            if abs(ca - j * mp.pi) < tol:
                raise SingularParameterError(
                    f"c*a within tolerance of {j}*pi (removable singularity; refused)")
        lhs = mp.mpf(0)
        for k in range(1, m + 1):
            s = psi_star_boundary(config, k, 1, prec=prec) \
                + psi_star_boundary(config, k, -1, prec=prec)
            lhs += (-1) ** (n + k + 1) * s * cm ** (2 * k - 1)
        coeffs = coefficients(config, prec=prec)
        prod = mp.mpf(1)
        for i, xj in enumerate(config.nodes):
            if i != n:
                prod *= mp.sin(mp.pi * mp.mpf(xj) / (2 * a))
        dd_cos = mp.mpf(0)
        for i, al in enumerate(coeffs.alpha):
            xk = mp.mpf(config.nodes[i])
            dd_cos += mp.mpf(al) * mp.cos(cm * xk)
        rhs = ((-1) ** n * prod) * (-dd_cos / mp.sin(ca))
        return lhs, rhs


def psi_sup_bound(n: int, m: int, a, alpha0, prec: int = DEFAULT_PREC) -> mpf:
    """Uniform sup bound 2^(2n-1)/(|alpha_0| a) (a/(n pi))^(2m) C* on the
    order-(2m-1) kernel, in the regime n >= 10, m >= n log n."""
    with working_precision(prec):
        if n < TAIL_WEIGHT_MIN_N:
            raise ValueError(f"bound regime requires n >= {TAIL_WEIGHT_MIN_N}")
        if m < n * mp.log(n):
            raise ValueError("bound regime requires m >= n log n")
        am = mp.mpf(a)
        cstar = tail_weight_constant(prec=prec)
        return mp.mpf(2) ** (2 * n - 1) / (abs(mp.mpf(alpha0)) * am) \
            * (am / (n * mp.pi)) ** (2 * m) * cstar


def random_config(rng, n: int, a=None, min_gap: float = 0.05,
                  prec: int = DEFAULT_PREC) -> NodeConfig:
    """Seeded random strict configuration with 2n+1 nodes in (-a, a).

    rng is a random.Random; node fractions keep a relative gap of min_gap so
    the weight products stay well conditioned.
    """
    with working_precision(prec):
        am = mp.mpf(a) if a is not None else mp.mpf(2 + 4 * rng.random())
        pos = sorted(rng.uniform(min_gap, 0.95) for _ in range(n))
        neg = sorted(rng.uniform(min_gap, 0.95) for _ in range(n))
        for side in (pos, neg):
            for i in range(1, n):
                if side[i] - side[i - 1] < min_gap:
                    side[i] = side[i - 1] + min_gap
            if side[-1] > 0.97:
                scale = 0.97 / side[-1]
                side[:] = [v * scale for v in side]
        nodes = [-am * mp.mpf(v) for v in reversed(neg)] + [mp.mpf(0)] \
            + [am * mp.mpf(v) for v in pos]
        return NodeConfig(n=n, a=am, nodes=nodes, strict=True)


def stable_value(fn: Callable[[int], mpf], prec: int = DEFAULT_PREC,
                 agree_bits: int = 32, max_doublings: int = 3) -> mpf:
    """Evaluate fn(prec) escalating precision until two successive precisions
    agree to agree_bits significant bits."""
    cur = fn(prec)
    p = prec
    for _ in range(max_doublings):
        p *= 2
        nxt = fn(p)
        if nxt == cur:
            return nxt
        if abs(nxt) > 0 and abs(nxt - cur) / abs(nxt) < mp.mpf(2) ** (-agree_bits):
            return nxt
        cur = nxt
    return cur
