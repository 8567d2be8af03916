"""Unit tests for the extremal configuration and certificate chain."""

import pytest
from mpmath import mp

from hardyz.extremal import (ExtremalParams, divided_bound, divided_bound_direct,
                             equal_angle_nodes, equal_angle_weights, extremal_config,
                             find_c_eps, g_and_h, hyp_coefficients,
                             log_sine_integral, log_sine_integral_closed,
                             node_spread_monotonicity, phi, sine_product,
                             theorem2_bound, theorem2_certificate)
from hardyz.precision import working_precision
from hardyz.probes import polynomial_probe

PREC = 192


def test_log_sine_integral_value_at_one():
    with working_precision(PREC):
        v = log_sine_integral(1, prec=PREC)
        assert abs(v + mp.log(2)) < mp.mpf(2) ** -120


def test_log_sine_dual_route():
    with working_precision(PREC):
        for t in ("0.1", "0.37", "0.8", "1"):
            quad = log_sine_integral(mp.mpf(t), prec=PREC)
            closed = log_sine_integral_closed(mp.mpf(t), prec=PREC)
            assert abs(quad - closed) < mp.mpf(2) ** -120


def test_h_negative_in_admissible_regime():
    with working_precision(PREC):
        _, h = g_and_h(mp.mpf("0.05"), mp.mpf("0.65"), prec=PREC)
        assert h < 0
        _, h2 = g_and_h(mp.mpf("0.2"), mp.mpf("0.5"), prec=PREC)
        assert h2 < 0


def test_find_c_eps_monotone_regime():
    c65 = find_c_eps(0.65, prec=PREC)
    c50 = find_c_eps(0.5, prec=PREC)
    assert 0 < c65 < 1
    assert 0 < c50 < 1
    with working_precision(PREC):
        # at eps = 0.5 and 0.65 the whole scan grid has h < 0
        assert abs(c65 - mp.mpf(0.75)) < mp.mpf(2) ** -10
        assert abs(c50 - mp.mpf(0.75)) < mp.mpf(2) ** -10


def test_extremal_invariant():
    params = ExtremalParams(n=12, c=0.95, eps=0.65, prec=PREC)
    cfg = extremal_config(params, prec=PREC)
    with working_precision(PREC):
        # outermost node (n/2 - 1) pi + s* stays inside half the interval
        outer = mp.mpf(cfg.node(params.n // 2))
        assert outer < mp.mpf(cfg.a) / 2
        assert 0 < params.s_star < mp.pi


def test_sine_product_log_domain_agrees():
    params = ExtremalParams(n=8, c=0.9, eps=0.5, prec=PREC)
    cfg = extremal_config(params, prec=PREC)
    p1 = sine_product(cfg, prec=PREC)
    p2 = sine_product(cfg, prec=PREC, log_domain=True)
    assert abs(p1 - p2) < mp.mpf(2) ** (-(PREC - 60)) * abs(p1)
    assert 0 < p1 < mp.mpf(2) ** (-2 * cfg.n)


def test_divided_bound_dual_route():
    params = ExtremalParams(n=10, c=0.92, eps=0.6, prec=PREC)
    cfg = extremal_config(params, prec=PREC)
    d1 = divided_bound(cfg, params, prec=PREC)
    d2 = divided_bound_direct(cfg, params.c, prec=PREC)
    assert abs(d1 - d2) < mp.mpf(2) ** (-(PREC // 2)) * abs(d1)
    assert 0 < d1 < mp.mpf(2) ** (2 * cfg.n - 1)


def test_equal_angle_weights_three_case_formula():
    for n in range(2, 9):
        gam = equal_angle_weights(n, prec=PREC)
        with working_precision(PREC):
            g0 = mp.mpf(-1) ** n * mp.mpf(2) ** (2 * n - 2) / n
            for k, g in enumerate(gam):
                if k == 0:
                    target = g0
                elif k == n:
                    target = mp.mpf(-1) ** n * g0
                else:
                    target = mp.mpf(-1) ** k * 2 * g0
                assert abs(g - target) < mp.mpf(2) ** (-(PREC - 60)) * abs(target)


def test_equal_angle_nodes_symmetric():
    t = equal_angle_nodes(6, prec=PREC)
    with working_precision(PREC):
        for k in range(7):
            assert abs(t[k] + t[6 - k] - 1) < mp.mpf(2) ** (-(PREC - 40))


def test_phi_guards():
    with pytest.raises(ValueError):
        phi([0, 0.5], 2, prec=PREC)
    with pytest.raises(ValueError):
        phi([0.5, 0.2, 0.9], 2, prec=PREC)


def test_hyp_coefficients_signs():
    for n in (1, 3, 7):
        cs = hyp_coefficients(n, n + 20)
        for k, c in enumerate(cs):
            if k < n:
                assert c * (-1) ** k > 0
            else:
                assert c == 0 or c * (-1) ** n > 0
        assert all(c != 0 for c in cs[: n + 20])


def test_node_spread_monotonicity():
    probe = polynomial_probe([0, 0, 0, 0, 1], prec=PREC)  # x^4, f'''' >= 0
    t = [0.125, 0.375, 0.625, 0.875]
    t_star = [0.0625, 0.3125, 0.6875, 0.9375]
    d1, d2 = node_spread_monotonicity(t, t_star, probe, prec=PREC)
    assert d1 <= d2


def test_theorem2_bound_positive():
    assert theorem2_bound(12, 0.95, 0.65, prec=PREC) > 0


def test_certificate_rejects_inadmissible_by_default():
    with pytest.raises(ValueError):
        theorem2_certificate(12, 0.5, 0.65, 30, prec=PREC)


def test_certificate_report_fields():
    rep = theorem2_certificate(12, 0.95, 0.65, 30, prec=PREC)
    assert rep.admissible
    assert rep.sine_product_in_range
    assert rep.divided_bound_in_range
    assert rep.total_below_one
    assert rep.boundary_ok
    data = rep.to_json()
    assert '"total_below_one": true' in data
