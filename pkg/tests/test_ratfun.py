import numpy as np
import pytest

from conftest import random_expr
from models.errors import ParseError, PoleAtPoint, ZeroPolynomial
from ratfun.expr import (
    BinOp, Const, Pow, Var, derivative_z, evaluate, is_constant, print_expr, uses_zbar,
)
from ratfun.parser import parse_expr
from ratfun.poly import CPoly, poly_roots
from ratfun.rational import BiPoly, RationalFunction, at_infinity, to_rational


def test_parse_precedence():
    assert parse_expr("1+z*2") == BinOp("add", Const(1), BinOp("mul", Var("z"), Const(2)))
    assert parse_expr("z^2*zb") == BinOp("mul", Pow(Var("z"), 2), Var("zb"))


def test_unary_minus_and_constant_folding():
    assert parse_expr("-2") == Const(-2)
    assert parse_expr("1+2i") == Const(1 + 2j)
    assert parse_expr("-z") == BinOp("sub", Const(0), Var("z"))


def test_conj_is_rewritten_structurally():
    assert parse_expr("conj(z)") == Var("zb")
    assert parse_expr("conj(2i*z)") == BinOp("mul", Const(-2j), Var("zb"))


@pytest.mark.parametrize("text, offset", [
    ("z +", 3),
    ("z + * 2", 4),
    ("z^1.5", 2),
    ("w", 0),
    ("(z", 2),
    ("z ) ", 2),
])
def test_parse_errors_report_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.offset == offset
    assert info.value.exit_code == 2


def test_exponent_bounds():
    parse_expr("z^64")
    with pytest.raises(ParseError):
        parse_expr("z^65")


def test_nesting_limit():
    parse_expr("(" * 100 + "z" + ")" * 100)
    with pytest.raises(ParseError):
        parse_expr("(" * 200 + "z" + ")" * 200)


@pytest.mark.parametrize("op", ["+", "*", "-", "/"])
def test_long_operator_chains_hit_the_depth_limit(op):
    parse_expr(op.join(["z"] * 100))
    with pytest.raises(ParseError) as info:
        parse_expr(op.join(["z"] * 200))
    assert "deep" in info.value.expected


def test_repeated_unary_minus_hits_the_depth_limit():
    with pytest.raises(ParseError):
        parse_expr("-" * 300 + "z")


@pytest.mark.parametrize("text", [
    "z^3",
    "(1.5-2.5i)*zb^2 + 1/(z-0.25)",
    "-(z*zb)^-2 + conj(z + 3i)",
    "2.5i*z - (-1.5)",
])
def test_printed_form_parses_back(text):
    expr = parse_expr(text)
    assert parse_expr(print_expr(expr)) == expr


def test_random_trees_print_and_parse_back(rng):
    for _ in range(200):
        tree = random_expr(rng, depth=5)
        parsed = parse_expr(print_expr(tree))
        # constant subtrees fold on the first pass, so the second is exact
        assert parse_expr(print_expr(parsed)) == parsed
        z = complex(rng.normal(), rng.normal()) / 2
        assert evaluate(parsed, z) == pytest.approx(evaluate(tree, z), rel=1e-12, abs=1e-12)


def test_expression_predicates():
    assert uses_zbar(parse_expr("z + conj(z)"))
    assert not uses_zbar(parse_expr("z^2 + 1"))
    assert is_constant(parse_expr("(1+2i)*3"))
    assert not is_constant(parse_expr("z - z"))


def test_derivative_z():
    deriv = derivative_z(parse_expr("z^3 + 2*z"))
    assert evaluate(deriv, 0.5 + 0.5j) == pytest.approx(3 * (0.5 + 0.5j) ** 2 + 2)


def test_evaluate_pole():
    with pytest.raises(PoleAtPoint):
        evaluate(parse_expr("1/z"), 0)


def test_rational_normal_form_cancels_monomials():
    rf = to_rational(parse_expr("z^3*zb/(z*zb)"))
    assert rf.den.degrees == (0, 0)
    assert rf.num.degrees == (2, 0)


def test_rational_matches_expression(rng):
    expr = parse_expr("(z^2 - zb)/(2 + z*zb) + 3i*zb^2")
    rf = to_rational(expr)
    for z in rng.normal(size=10) + 1j * rng.normal(size=10):
        assert rf(z) == pytest.approx(evaluate(expr, z), rel=1e-12)


def test_rational_jet_is_exact():
    rf = to_rational(parse_expr("z^3"))
    jet = rf.jet(0.5, 3)
    assert jet.d(1, 0) == pytest.approx(0.75)
    assert jet.d(2, 0) == pytest.approx(3.0)
    assert jet.d(3, 0) == pytest.approx(6.0)
    assert jet.d(0, 1) == 0


def test_rational_zero_denominator():
    with pytest.raises(ZeroPolynomial):
        RationalFunction(BiPoly.const(1), BiPoly.const(0))


def test_at_infinity_is_projectively_the_same_point(rng):
    components = [to_rational(parse_expr(t)) for t in ("1", "-z^3/2", "z", "3*z^2/2")]
    moved = at_infinity(components)
    for w in rng.normal(size=5) + 1j * rng.normal(size=5):
        original = np.array([rf(1 / w) for rf in components])
        flipped = np.array([rf(w) for rf in moved])
        # parallel vectors: the 2x2 minors vanish
        k = int(np.argmax(np.abs(original)))
        ratio = flipped[k] / original[k]
        np.testing.assert_allclose(flipped, ratio * original, atol=1e-10 * np.abs(flipped).max())
    at_zero = np.array([rf(0) for rf in moved])
    assert np.linalg.norm(at_zero) > 0.1


def test_poly_roots_with_multiplicity():
    p = CPoly.from_roots([0.5, -0.5, 1j, 1j])
    roots = sorted(poly_roots(p), key=lambda r: (r[0].real, r[0].imag))
    assert len(roots) == 3
    assert roots[0][0] == pytest.approx(-0.5)
    assert roots[1] == (pytest.approx(1j, abs=1e-6), 2)
    assert roots[2][0] == pytest.approx(0.5)


def test_poly_roots_random(rng):
    for degree in range(1, 9):
        roots = rng.normal(size=degree) + 1j * rng.normal(size=degree)
        found = poly_roots(CPoly.from_roots(roots))
        assert sum(m for _, m in found) == degree
        for r in roots:
            assert min(abs(r - f) for f, _ in found) < 1e-8


def test_poly_edge_cases():
    with pytest.raises(ZeroPolynomial):
        poly_roots(CPoly(()))
    assert poly_roots(CPoly((3,))) == []
    assert CPoly((1, 2, 3)).derivative() == CPoly((2, 6))


@pytest.mark.parametrize("coeffs, expected", [
    ((1, 0, 1), [(-1j, 1), (1j, 1)]),
    ((0, -1, 0, 1), [(-1, 1), (0, 1), (1, 1)]),
    ((4, -4, 1), [(2, 2)]),
])
def test_poly_roots_examples(coeffs, expected):
    found = sorted(poly_roots(CPoly(coeffs)), key=lambda r: (r[0].real, r[0].imag))
    assert [m for _, m in found] == [m for _, m in expected]
    for (root, _), (want, _) in zip(found, expected):
        assert root == pytest.approx(want, abs=1e-6)


def test_poly_roots_of_random_coefficients(rng):
    for _ in range(100):
        degree = int(rng.integers(1, 13))
        coeffs = np.sqrt(rng.uniform(size=degree + 1)) * np.exp(2j * np.pi * rng.uniform(size=degree + 1))
        coeffs[-1] = rng.uniform(0.5, 1) * np.exp(2j * np.pi * rng.uniform())
        p = CPoly(tuple(coeffs))
        found = poly_roots(p)
        assert sum(m for _, m in found) == degree
        for root, _ in found:
            assert abs(p(root)) <= 1e-7
