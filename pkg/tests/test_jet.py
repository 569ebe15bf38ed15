import numpy as np
import pytest

from conftest import random_expr
from models.errors import OrderExhausted, PoleAtPoint
from models.jet import HJet, WJet, check_order, jet_herm, jet_sympl, seed_jets
from models.quaternion import herm, sympl
from ratfun.crosscheck import fd_crosscheck
from ratfun.expr import eval_expr, evaluate
from ratfun.parser import parse_expr


def test_seed_jets_slots():
    jz, jzb = seed_jets(0.5 + 1j, 2)
    assert jz.value == 0.5 + 1j
    assert jz.d(1, 0) == 1 and jz.d(0, 1) == 0
    assert jzb.value == 0.5 - 1j
    assert jzb.d(0, 1) == 1 and jzb.d(1, 0) == 0


def test_product_of_z_and_zbar():
    z0 = 0.3 - 0.7j
    jz, jzb = seed_jets(z0, 2)
    prod = jz * jzb
    assert prod.value == pytest.approx(abs(z0) ** 2)
    assert prod.d(1, 0) == pytest.approx(z0.conjugate())
    assert prod.d(0, 1) == pytest.approx(z0)
    assert prod.d(1, 1) == pytest.approx(1)
    assert prod.d(2, 0) == pytest.approx(0)


def test_reciprocal_derivatives():
    z0 = 0.8 + 0.2j
    jz, _ = seed_jets(z0, 3)
    inv = 1 / jz
    assert inv.d(1, 0) == pytest.approx(-1 / z0 ** 2)
    assert inv.d(2, 0) == pytest.approx(2 / z0 ** 3)
    assert inv.d(3, 0) == pytest.approx(-6 / z0 ** 4)
    assert inv.d(1, 1) == pytest.approx(0)


def test_negative_power_matches_division():
    jz, _ = seed_jets(1.1 - 0.4j, 3)
    np.testing.assert_allclose(jz.powi(-2).t, (1 / (jz * jz)).t, atol=1e-12)


def test_division_by_vanishing_jet():
    jz, _ = seed_jets(0, 1)
    with pytest.raises(PoleAtPoint):
        WJet.const(1, 1) / jz


def test_conjugate_swaps_z_and_zbar():
    jz, jzb = seed_jets(0.2 + 0.9j, 2)
    np.testing.assert_allclose(jz.conj().t, jzb.t)


def test_order_limits():
    check_order(3)
    with pytest.raises(OrderExhausted):
        check_order(4)
    jz, _ = seed_jets(0, 0)
    with pytest.raises(OrderExhausted):
        jz.dz()
    with pytest.raises(OrderExhausted):
        jz.d(1, 0)


def test_mixed_orders_truncate_to_lower():
    a, _ = seed_jets(1j, 3)
    b, _ = seed_jets(1j, 1)
    assert (a + b).order == 1


def test_dz_shifts_slots():
    jz, jzb = seed_jets(0.5, 3)
    f = jz ** 3 * jzb
    df = f.dz()
    assert df.order == 2
    assert df.value == pytest.approx(f.d(1, 0))
    assert df.d(1, 1) == pytest.approx(f.d(2, 1))


@pytest.mark.parametrize("text", [
    "z^2*zb/(1+z*zb)",
    "(z-0.3i)^3 + conj(z)^2*(2-1i)",
    "1/(2+z^2) - zb*z^-1",
])
def test_jet_values_match_direct_evaluation(text):
    expr = parse_expr(text)
    for z0 in (0.4 + 0.3j, -0.7 + 0.1j, 1.2 - 0.5j):
        jet = eval_expr(expr, seed_jets(z0, 2))
        assert jet.value == pytest.approx(evaluate(expr, z0), rel=1e-12)


@pytest.mark.parametrize("text", [
    "z^2*zb/(1+z*zb)",
    "(z-0.3i)^3 + conj(z)^2*(2-1i)",
    "1/(2+z^2) - zb*z^-1",
])
def test_jets_agree_with_finite_differences(text):
    expr = parse_expr(text)
    for z0 in (0.4 + 0.3j, -0.7 + 0.1j):
        assert fd_crosscheck(expr, z0, 1e-5) < 1e-8


def test_hjet_pairings_match_vector_pairings(rng):
    z0 = 0.3 + 0.2j
    jz, jzb = seed_jets(z0, 2)
    u = HJet.from_components([jz, jzb * jz, WJet.const(1, 2), jz ** 2])
    v = HJet.from_components([jzb, WJet.const(2j, 2), jz * 3, jzb ** 2])
    assert jet_herm(u, v).value == pytest.approx(herm(u.value, v.value))
    assert jet_sympl(u, v).value == pytest.approx(sympl(u.value, v.value))
    # d/dz of herm(u, v) by the product rule, conj(u) contributes through d/dzbar of u
    expected = np.vdot(u.d(0, 1), v.value) + np.vdot(u.value, v.d(1, 0))
    assert jet_herm(u, v).d(1, 0) == pytest.approx(expected)


@pytest.mark.parametrize("text, z0", [("z^3", 1), ("conj(z)*z", 1 + 1j)])
def test_crosscheck_examples(text, z0):
    assert fd_crosscheck(parse_expr(text), z0, 1e-5) < 1e-8


def test_crosscheck_at_a_pole():
    with pytest.raises(PoleAtPoint):
        fd_crosscheck(parse_expr("1/(z-1)"), 1, 1e-5)


def test_random_trees_agree_with_finite_differences(rng):
    for _ in range(200):
        expr = random_expr(rng, depth=5)
        z0 = 0.5 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        assert fd_crosscheck(expr, z0, 1e-5) < 1e-6, expr
