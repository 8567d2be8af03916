"""Unit tests for confluent divided differences."""

import pytest
from mpmath import mp

from hardyz.divided_diff import (FunctionProbe, NodeMultiset, ProbeOrderError,
                                 divided_difference, divided_difference_mc,
                                 hermite_weights, mean_value_witness)
from hardyz.precision import working_precision
from hardyz.probes import exp_probe, monomial_probe, polynomial_probe

PREC = 192
TOL = mp.mpf(2) ** (-(PREC - 40))


def test_square_over_three_distinct_nodes():
    probe = monomial_probe(2, prec=PREC)
    dd = divided_difference(probe, NodeMultiset([0, 1, 2]), prec=PREC)
    assert abs(dd - 1) < TOL


def test_exp_triple_node_at_zero():
    dd = divided_difference(exp_probe(prec=PREC), NodeMultiset([0, 0, 0]), prec=PREC)
    with working_precision(PREC):
        assert abs(dd - mp.mpf(0.5)) < TOL


def test_cubic_top_coefficient():
    probe = monomial_probe(3, prec=PREC)
    dd = divided_difference(probe, NodeMultiset([-1, 0, 0.5, 2]), prec=PREC)
    assert abs(dd - 1) < TOL


def test_low_degree_annihilation():
    probe = polynomial_probe([3, -2, 5], prec=PREC)
    dd = divided_difference(probe, NodeMultiset([0, 0, 1, 1, 2]), prec=PREC)
    assert abs(dd) < TOL


def test_confluent_is_limit_of_clusters():
    probe = exp_probe(prec=PREC)
    exact = divided_difference(probe, NodeMultiset([0, 0, 1]), prec=PREC)
    with working_precision(PREC):
        eps = mp.mpf(2) ** -60
        near = divided_difference(probe, NodeMultiset([0, eps, 1]), prec=PREC)
        assert abs(exact - near) < mp.mpf(2) ** -55


def test_hermite_weights_pinned_cases():
    w = {(mp.mpf(z), i): wt for z, i, wt in
         hermite_weights(NodeMultiset([0, 1]), prec=PREC)}
    assert abs(w[(mp.mpf(0), 0)] + 1) < TOL
    assert abs(w[(mp.mpf(1), 0)] - 1) < TOL

    w = {(mp.mpf(z), i): wt for z, i, wt in
         hermite_weights(NodeMultiset([0, 0]), prec=PREC)}
    assert abs(w[(mp.mpf(0), 0)]) < TOL
    assert abs(w[(mp.mpf(0), 1)] - 1) < TOL

    w = {(mp.mpf(z), i): wt for z, i, wt in
         hermite_weights(NodeMultiset([0, 0, 1]), prec=PREC)}
    assert abs(w[(mp.mpf(1), 0)] - 1) < TOL
    assert abs(w[(mp.mpf(0), 0)] + 1) < TOL
    assert abs(w[(mp.mpf(0), 1)] + 1) < TOL


def test_hermite_weights_reproduce_divided_difference():
    probe = exp_probe(prec=PREC)
    nodes = NodeMultiset([-0.5, 0, 0, 0.75, 0.75, 0.75])
    dd = divided_difference(probe, nodes, prec=PREC)
    with working_precision(PREC):
        acc = mp.mpf(0)
        for z, i, wt in hermite_weights(nodes, prec=PREC):
            acc += wt * mp.mpf(probe.deriv(z, i))
        assert abs(acc - dd) < TOL


def test_mean_value_bracket():
    probe = exp_probe(prec=PREC)
    nodes = NodeMultiset([0, 0.3, 0.3, 1])
    w = mean_value_witness(probe, nodes, prec=PREC)
    with working_precision(PREC):
        assert mp.exp(0) <= w <= mp.exp(1)


def test_monte_carlo_oracle_agrees():
    probe = exp_probe(prec=64)
    nodes = NodeMultiset([0, 0.5, 1])
    exact = divided_difference(probe, nodes, prec=64)
    approx = divided_difference_mc(probe, nodes, samples=20000, seed=3, prec=64)
    assert abs(exact - approx) < 0.01 * abs(exact)


def test_order_contract_enforced():
    limited = FunctionProbe(deriv=lambda x, k: mp.exp(x), max_order=1)
    with pytest.raises(ProbeOrderError):
        divided_difference(limited, NodeMultiset([0, 0, 0]), prec=PREC)
