import numpy as np
import pytest

from models.curve_expr import Explicit, Fiber, Partner, Weierstrass
from ratfun.expr import BinOp, Const, Pow, RatExpr, Var
from sampling.grid import BOTH_CHARTS, GridSpec


def poly_text(coeffs) -> str:
    """Expression text for sum(coeffs[k] z^k)."""
    terms = [f"{complex_text(c)}*z^{k}" for k, c in enumerate(coeffs)]
    return " + ".join(terms)


def complex_text(c: complex) -> str:
    return f"({c.real:.6f}{c.imag:+.6f}i)"


def random_weierstrass(rng, count: int) -> list[Weierstrass]:
    """f a random polynomial of degree 3 or 4, g = z + c + e/(z - p).

    The pole p of g lies at 2 <= |p| <= 3 and |e| <= 0.05, so the poles of
    h = f'/g' stay more than 1.7 away from the origin.
    """
    curves = []
    for _ in range(count):
        degree = int(rng.integers(3, 5))
        coeffs = (rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)) / 2
        shift = complex(rng.normal(), rng.normal()) / 4
        pole = rng.uniform(2, 3) * np.exp(2j * np.pi * rng.uniform())
        residue = rng.uniform(0.01, 0.05) * np.exp(2j * np.pi * rng.uniform())
        g = f"z + {complex_text(shift)} + {complex_text(residue)}/(z - {complex_text(pole)})"
        curves.append(Weierstrass.from_texts(poly_text(coeffs), g))
    return curves


def _random_leaf(rng) -> RatExpr:
    kind = int(rng.integers(3))
    if kind == 0:
        return Var("z")
    if kind == 1:
        return Var("zb")
    return Const(np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def random_expr(rng, depth: int = 5) -> RatExpr:
    """Random tree at most ``depth`` high; leaves are z, zb or constants in the unit disc.

    Denominators are 3 + leaf^2, so the tree has no pole in the unit disc.
    """
    if depth == 1 or rng.uniform() < 0.25:
        return _random_leaf(rng)
    op = str(rng.choice(["add", "sub", "mul", "div", "pow"]))
    if op == "pow":
        return Pow(_random_leaf(rng), int(rng.integers(2, 4)))
    if op == "div" and depth >= 4:
        denominator = BinOp("add", Const(3), Pow(_random_leaf(rng), 2))
        return BinOp("div", random_expr(rng, depth - 1), denominator)
    if op == "div":
        op = "mul"
    return BinOp(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1))


def random_hvecs(rng, count: int) -> np.ndarray:
    return rng.normal(size=(count, 4)) + 1j * rng.normal(size=(count, 4))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_grid():
    return GridSpec(half_width=1.5, samples=11, charts=BOTH_CHARTS)


@pytest.fixture
def cubic():
    return Weierstrass.from_texts("z^3", "z")


@pytest.fixture
def cubic_partner(cubic):
    return Partner(cubic)


@pytest.fixture
def fiber():
    return Fiber((1, 0, 0, 0))


@pytest.fixture
def vertical_quadratic():
    return Explicit.from_texts(["1", "zb^2", "0", "0"])


@pytest.fixture
def not_pseudoholomorphic():
    return Explicit.from_texts(["1", "z^2", "0", "0"])
