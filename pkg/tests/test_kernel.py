"""Unit tests for the node-configuration kernels."""

import random

import pytest
from mpmath import mp

from hardyz.kernel import (DuplicateNodeError, NodeConfig, SingularParameterError,
                           boundary_sum_bound, chebyshev_moment, coefficients,
                           psi, psi_chebyshev_series, psi_star_boundary,
                           psi_sup_bound, random_config)
from hardyz.precision import working_precision

PREC = 192
TOL = mp.mpf(2) ** (-(PREC - 60))


def _simple_config(n=2, a=3):
    pos = [a * (k + 0.7) / (n + 1) for k in range(n)]
    nodes = [-v for v in reversed(pos)] + [0] + pos
    return NodeConfig(n=n, a=a, nodes=nodes, strict=True)


def test_config_validation():
    with pytest.raises(ValueError):
        NodeConfig(n=1, a=1, nodes=[-0.5, 0.1, 0.5])  # x_0 != 0
    with pytest.raises(ValueError):
        NodeConfig(n=1, a=1, nodes=[-1.5, 0, 0.5])  # node outside (-a, a)
    with pytest.raises(ValueError):
        NodeConfig(n=2, a=1, nodes=[-0.6, -0.3, 0, 0.4, 0.4], strict=True)
    # same pair is fine weakly ordered
    NodeConfig(n=2, a=1, nodes=[-0.6, -0.3, 0, 0.4, 0.4], strict=False)


def test_alpha_zero_sum_and_symmetric_mu():
    cfg = _simple_config()
    co = coefficients(cfg, prec=PREC)
    with working_precision(PREC):
        assert abs(mp.fsum(co.alpha)) < TOL * max(abs(v) for v in co.alpha)
        assert co.mu_k(0) == 1
        # symmetric configuration: mu_{-k} = mu_k
        for k in range(1, cfg.n + 1):
            assert abs(co.mu_k(k) - co.mu_k(-k)) < TOL


def test_symmetric_coefficients_n1():
    cfg = NodeConfig(n=1, a=2, nodes=[-1, 0, 1], strict=True)
    co = coefficients(cfg, prec=PREC)
    with working_precision(PREC):
        assert abs(co.mu_k(1) + mp.mpf(0.5)) < TOL
        assert abs(co.mu_k(-1) + mp.mpf(0.5)) < TOL


def test_vanishing_chebyshev_moments():
    rng = random.Random(11)
    cfg = random_config(rng, 3, prec=PREC)
    for j in range(1, 2 * cfg.n):
        s = chebyshev_moment(cfg, j, prec=PREC)
        assert abs(s) < mp.mpf(2) ** (-(PREC - 80))
    s0 = chebyshev_moment(cfg, 0, prec=PREC)
    assert abs(s0) < mp.mpf(2) ** (-(PREC - 80))
    assert abs(chebyshev_moment(cfg, 2 * cfg.n, prec=PREC)) > 0


def test_series_matches_direct_evaluation():
    rng = random.Random(5)
    cfg = random_config(rng, 2, prec=PREC)
    l = cfg.n + 2
    with working_precision(PREC):
        for frac in ("-0.4", "0.1", "0.8"):
            x = mp.mpf(cfg.a) * mp.mpf(frac)
            direct = psi(cfg, l, x, prec=PREC)
            series, tail = psi_chebyshev_series(cfg, l, x, 400, prec=PREC)
            assert abs(direct - series) <= tail + mp.mpf(2) ** (-(PREC - 60))


def test_boundary_matches_direct_for_strict():
    rng = random.Random(17)
    cfg = random_config(rng, 2, prec=PREC)
    for sign in (1, -1):
        direct = psi(cfg, 3, sign * mp.mpf(cfg.a), prec=PREC)
        ext = psi_star_boundary(cfg, 3, sign, prec=PREC)
        assert abs(direct - ext) < mp.mpf(2) ** (-(PREC - 60))


def test_confluent_boundary_extension_is_continuous():
    # double node: the extension must be the limit of strict perturbations
    a = 4
    base = [-2.5, -1.0, 0, 1.5, 1.5]
    cfg = NodeConfig(n=2, a=a, nodes=base, strict=False)
    ext = psi_star_boundary(cfg, 4, 1, prec=PREC)
    with working_precision(PREC):
        eps = mp.mpf(2) ** -50
        near = NodeConfig(n=2, a=a,
                          nodes=[-2.5, -1.0, 0, mp.mpf(1.5) - eps, mp.mpf(1.5) + eps],
                          strict=True)
        val = psi_star_boundary(near, 4, 1, prec=PREC)
        assert abs(ext - val) < mp.mpf(2) ** -40


def test_boundary_sign_property_sample():
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randint(1, 4)
        cfg = random_config(rng, n, prec=PREC)
        l = rng.randint(1, 6)
        for sign in (1, -1):
            v = psi_star_boundary(cfg, l, sign, prec=PREC)
            assert (-1) ** (n + l + 1) * v > 0


def test_boundary_sum_inequality_and_convergence():
    rng = random.Random(31)
    cfg = random_config(rng, 2, prec=PREC)
    with working_precision(PREC):
        c = mp.mpf("0.6") * cfg.n * mp.pi / mp.mpf(cfg.a)
        prev_gap = None
        for m in (4, 8, 16):
            lhs, rhs = boundary_sum_bound(cfg, c, m, prec=PREC)
            assert lhs <= rhs
            gap = rhs - lhs
            if prev_gap is not None:
                assert gap < prev_gap
            prev_gap = gap


def test_boundary_sum_guards():
    cfg = _simple_config(n=2, a=3)
    with working_precision(PREC):
        with pytest.raises(SingularParameterError):
            boundary_sum_bound(cfg, mp.pi / mp.mpf(cfg.a), 3, prec=PREC)
        with pytest.raises(ValueError):
            boundary_sum_bound(cfg, 5 * mp.pi / mp.mpf(cfg.a), 3, prec=PREC)
    weak = NodeConfig(n=2, a=3, nodes=[-2, -1, 0, 1.2, 1.2], strict=False)
    with pytest.raises(DuplicateNodeError):
        boundary_sum_bound(weak, 0.5, 3, prec=PREC)


def test_sup_bound_regime_guards():
    with pytest.raises(ValueError):
        psi_sup_bound(5, 100, 10, 1, prec=PREC)
    with pytest.raises(ValueError):
        psi_sup_bound(12, 5, 10, 1, prec=PREC)
    v = psi_sup_bound(12, 30, 10, 1, prec=PREC)
    assert v > 0
