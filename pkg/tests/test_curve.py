import json
import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_weierstrass
from curve.invariants import (
    invariant_function, invariants, partner_point, ph_residual, roundtrip_distance, sample_point,
    torsion_residual,
)
from curve.lift import eval_jet
from models.curve_expr import (
    Explicit, Fiber, Partner, Weierstrass, curve_from_dict, curve_to_dict, load_curve, save_curve,
)
from models.errors import (
    CurveFileError, DegenerateWeierstrass, InvalidConfig, NoHorizontalTangent, OrderExhausted,
    ParseError, PoleAtPoint,
)
from models.quaternion import quat
from sampling.grid import Chart, GridSpec
from twistor.projective import ProjPoint, contact_pair


def random_points(rng, count, radius=1.2):
    r = radius * np.sqrt(rng.uniform(size=count))
    return r * np.exp(2j * np.pi * rng.uniform(size=count))


def grid_max(fn, grid):
    """Largest value of fn over the grid, skipping points where it is undefined."""
    values = []
    for chart, z in grid.points():
        try:
            values.append(fn(z, chart))
        except (NoHorizontalTangent, PoleAtPoint):
            continue
    assert len(values) > len(grid.points()) // 2
    return max(values)


def test_weierstrass_jet_at_origin(cubic):
    u = eval_jet(cubic, 0, 1)
    assert_allclose(u.value, [1, 0, 0, 0], atol=1e-15)
    assert_allclose(u.d(1, 0), [0, 0, 1, 0], atol=1e-15)
    assert_allclose(u.d(0, 1), [0, 0, 0, 0], atol=1e-15)


def test_fiber_jet(fiber):
    z0 = 0.4 - 0.7j
    u = eval_jet(fiber, z0, 1)
    assert_allclose(u.value, [1, z0.conjugate(), 0, 0], atol=1e-15)
    assert_allclose(u.d(1, 0), [0, 0, 0, 0], atol=1e-15)
    assert_allclose(u.d(0, 1), [0, 1, 0, 0], atol=1e-15)


def test_partner_at_origin(cubic):
    assert partner_point(cubic, 0).distance(ProjPoint([0, 0, 0, 1])) < 1e-12


def test_partner_nesting_uses_up_jet_orders(cubic):
    eval_jet(Partner(Partner(cubic)), 0.2, 1)
    with pytest.raises(OrderExhausted):
        eval_jet(Partner(Partner(cubic)), 0.2, 2)


def test_fiber_is_pseudoholomorphic(rng, fiber):
    for z in random_points(rng, 10):
        residual = ph_residual(fiber, z)
        assert residual.r_horizontal < 1e-12
        assert residual.r_vertical < 1e-12


@pytest.mark.parametrize("chart", [Chart.ZERO, Chart.INFINITY])
def test_weierstrass_and_partner_are_pseudoholomorphic(rng, cubic, cubic_partner, chart):
    for z in random_points(rng, 10, radius=1.0):
        assert ph_residual(cubic, z, chart).combined < 1e-10
        assert ph_residual(cubic_partner, z, chart).combined < 1e-8


def test_non_pseudoholomorphic_curve(not_pseudoholomorphic):
    residual = ph_residual(not_pseudoholomorphic, 1)
    assert residual.r_horizontal < 1e-12
    assert residual.r_vertical > 0.1


def test_invariants_warn_off_the_pseudoholomorphic_locus(not_pseudoholomorphic, caplog):
    with caplog.at_level(logging.WARNING):
        invariants(not_pseudoholomorphic, 0.5)
    assert "not pseudoholomorphic" in caplog.text


def test_fiber_invariants(rng, fiber):
    for z in random_points(rng, 10):
        sample = invariants(fiber, z)
        assert sample.i1_density < 1e-12
        assert sample.i2_density == pytest.approx(1 / (1 + abs(z) ** 2), rel=1e-12)


def test_weierstrass_is_horizontal(rng, cubic):
    for z in random_points(rng, 10):
        sample = invariants(cubic, z)
        assert sample.i2_density < 1e-12
        assert sample.i1_density > 0


def test_vertical_quadratic_i2(rng, vertical_quadratic):
    for z in random_points(rng, 10):
        sample = invariants(vertical_quadratic, z)
        assert sample.i1_density < 1e-12
        assert sample.i2_scalar == pytest.approx(2 * z / (1 + abs(z) ** 4), abs=1e-12)
    assert invariants(vertical_quadratic, 0).i2_density == 0


def test_fiber_has_no_partner(fiber):
    with pytest.raises(NoHorizontalTangent):
        partner_point(fiber, 0.3)


def test_partner_forms_a_flag(rng):
    for c in random_weierstrass(rng, 5):
        for z in random_points(rng, 5, radius=0.8):
            try:
                w = partner_point(c, z)
            except NoHorizontalTangent:
                continue
            u = eval_jet(c, z, 0).value
            assert quat(u / np.linalg.norm(u), w.rep).norm() < 1e-10


def test_partner_of_partner_is_the_original(cubic):
    assert roundtrip_distance(cubic, 0.3 + 0.1j) < 1e-8


def test_partner_roundtrip_on_random_data(rng):
    checked = 0
    for c in random_weierstrass(rng, 20):
        for z in random_points(rng, 5, radius=0.8):
            try:
                assert roundtrip_distance(c, z) < 1e-8
            except NoHorizontalTangent:
                continue
            checked += 1
    assert checked >= 80


@pytest.mark.parametrize("f, g", [("z^3", "z"), ("z^2", "z"), ("z^5", "z^2")])
def test_partners_of_weierstrass_curves_have_null_torsion(f, g):
    partner = Partner(Weierstrass.from_texts(f, g))
    grid = GridSpec(half_width=1.5, samples=21, charts=(Chart.ZERO,))
    assert grid_max(lambda z, chart: torsion_residual(partner, z, chart), grid) < 1e-8


def test_weierstrass_curves_are_contact_integrals(rng):
    for c in random_weierstrass(rng, 10):
        for z in random_points(rng, 10):
            u = eval_jet(c, z, 1)
            sigma = contact_pair(u.value, u.d(1, 0))
            assert abs(sigma) / np.vdot(u.value, u.value).real < 1e-10


def test_sample_point_leaves_torsion_out_where_partner_is_undefined(fiber, cubic_partner):
    assert sample_point(fiber, 0.2).torsion is None
    sample = sample_point(cubic_partner, 0.3 + 0.2j)
    assert sample.torsion is not None and sample.torsion < 1e-8
    assert sample.ph < 1e-8


def test_invariant_function_names(vertical_quadratic):
    fn = invariant_function(vertical_quadratic, "i2")
    assert fn(Chart.ZERO, 0.5) == pytest.approx(1 / (1 + 0.0625))
    with pytest.raises(InvalidConfig):
        invariant_function(vertical_quadratic, "I3")


def test_weierstrass_rejects_constant_g():
    with pytest.raises(DegenerateWeierstrass):
        Weierstrass.from_texts("1", "2")


def test_weierstrass_rejects_zbar():
    with pytest.raises(CurveFileError):
        Weierstrass.from_texts("zb", "z")


def test_curve_codec(tmp_path, cubic):
    assert curve_to_dict(cubic) == {"kind": "weierstrass", "f": "z^3", "g": "z"}
    for c in (cubic, Partner(cubic), Fiber((1, 0.5j, 0, 0)), Explicit.from_texts(["1", "zb^2", "0", "0"])):
        path = save_curve(c, tmp_path / "curve.json")
        assert load_curve(path) == c


@pytest.mark.parametrize("data", [
    {"kind": "helix"},
    {"f": "z"},
    {"kind": "weierstrass", "f": "z^3"},
    {"kind": "explicit", "components": ["1", "z"]},
    {"kind": "fiber", "base": [[0, 0], [0, 0], [0, 0], [0, 0]]},
    {"kind": "fiber", "base": "nope"},
])
def test_malformed_curves(data):
    with pytest.raises(CurveFileError):
        curve_from_dict(data)


def test_partner_nesting_limit(cubic):
    data = curve_to_dict(Partner(Partner(cubic)))
    assert curve_from_dict(data) == Partner(Partner(cubic))
    with pytest.raises(CurveFileError):
        curve_from_dict({"kind": "partner", "inner": data})


def test_load_curve_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(CurveFileError):
        load_curve(bad)
    with pytest.raises(CurveFileError):
        load_curve(tmp_path / "missing.json")
    bad.write_text(json.dumps({"kind": "weierstrass", "f": "z +", "g": "z"}), encoding="utf-8")
    with pytest.raises(ParseError):
        load_curve(bad)
