"""Expression trees over z and conj(z).

Nodes are frozen dataclasses so trees compare structurally and can key
caches. ``conj(...)`` never survives parsing: it is rewritten by
``conjugate`` into a tree over ``z``/``zb``.
"""

from dataclasses import dataclass, field
from typing import Union

from config.settings import POLE_EPSILON
from models.errors import PoleAtPoint
from models.jet import WJet

MAX_EXPONENT = 64
MAX_DEPTH = 128

BINARY_OPS = {"add": "+", "sub": "-", "mul": "*", "div": "/"}


@dataclass(frozen=True)
class Const:
    value: complex
    height: int = field(default=1, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var:
    name: str  # "z" or "zb"
    height: int = field(default=1, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.name not in ("z", "zb"):
            raise ValueError(f"unknown variable {self.name!r}")


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "RatExpr"
    right: "RatExpr"
    height: int = field(default=1, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown operator {self.op!r}")
        object.__setattr__(self, "height", 1 + max(self.left.height, self.right.height))


@dataclass(frozen=True)
class Pow:
    base: "RatExpr"
    exp: int
    height: int = field(default=1, init=False, repr=False, compare=False)

    def __post_init__(self):
        if abs(self.exp) > MAX_EXPONENT:
            raise ValueError(f"exponent {self.exp} exceeds {MAX_EXPONENT}")
        object.__setattr__(self, "height", 1 + self.base.height)


RatExpr = Union[Const, Var, BinOp, Pow]

Z = Var("z")
ZB = Var("zb")


def depth(e: RatExpr) -> int:
    return e.height


def uses_zbar(e: RatExpr) -> bool:
    if isinstance(e, Var):
        return e.name == "zb"
    if isinstance(e, BinOp):
        return uses_zbar(e.left) or uses_zbar(e.right)
    if isinstance(e, Pow):
        return uses_zbar(e.base)
    return False


def is_constant(e: RatExpr) -> bool:
    if isinstance(e, Var):
        return False
    if isinstance(e, BinOp):
        return is_constant(e.left) and is_constant(e.right)
    if isinstance(e, Pow):
        return is_constant(e.base)
    return True


def conjugate(e: RatExpr) -> RatExpr:
    """Structural conjugation: z <-> zb, constants conjugated."""
    if isinstance(e, Const):
        return Const(e.value.conjugate())
    if isinstance(e, Var):
        return ZB if e.name == "z" else Z
    if isinstance(e, BinOp):
        return BinOp(e.op, conjugate(e.left), conjugate(e.right))
    return Pow(conjugate(e.base), e.exp)


def derivative_z(e: RatExpr) -> RatExpr:
    """Symbolic d/dz, treating zb as independent."""
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Var):
        return Const(1 if e.name == "z" else 0)
    if isinstance(e, BinOp):
        dl, dr = derivative_z(e.left), derivative_z(e.right)
        if e.op in ("add", "sub"):
            return BinOp(e.op, dl, dr)
        if e.op == "mul":
            return BinOp("add", BinOp("mul", dl, e.right), BinOp("mul", e.left, dr))
        numerator = BinOp("sub", BinOp("mul", dl, e.right), BinOp("mul", e.left, dr))
        return BinOp("div", numerator, Pow(e.right, 2))
    if e.exp == 0:
        return Const(0)
    return BinOp("mul", BinOp("mul", Const(e.exp), Pow(e.base, e.exp - 1)), derivative_z(e.base))


def evaluate(e: RatExpr, z: complex) -> complex:
    """Direct complex evaluation."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return complex(z) if e.name == "z" else complex(z).conjugate()
    if isinstance(e, BinOp):
        left, right = evaluate(e.left, z), evaluate(e.right, z)
        if e.op == "add":
            return left + right
        if e.op == "sub":
            return left - right
        if e.op == "mul":
            return left * right
        if abs(right) <= POLE_EPSILON:
            raise PoleAtPoint(f"division by {abs(right):.3g} at z={z}")
        return left / right
    base = evaluate(e.base, z)
    if e.exp < 0 and abs(base) <= POLE_EPSILON:
        raise PoleAtPoint(f"negative power of {abs(base):.3g} at z={z}")
    return base ** e.exp


def eval_expr(e: RatExpr, jets: tuple[WJet, WJet]) -> WJet:
    """Jet of ``e`` from the seed jets of z and conj(z)."""
    jz, jzb = jets
    if isinstance(e, Const):
        return WJet.const(e.value, jz.order)
    if isinstance(e, Var):
        return jz if e.name == "z" else jzb
    if isinstance(e, BinOp):
        left, right = eval_expr(e.left, jets), eval_expr(e.right, jets)
        if e.op == "add":
            return left + right
        if e.op == "sub":
            return left - right
        if e.op == "mul":
            return left * right
        return left / right
    return eval_expr(e.base, jets).powi(e.exp)


def _format_real(x: float) -> str:
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def _format_const(value: complex) -> str:
    re, im = value.real, value.imag
    if im == 0:
        text = _format_real(re)
        return f"({text})" if text.startswith("-") else text
    if re == 0:
        text = _format_real(im) + "i"
        return f"({text})" if text.startswith("-") else text
    sign = "-" if im < 0 else "+"
    return f"({_format_real(re)}{sign}{_format_real(abs(im))}i)"


def print_expr(e: RatExpr) -> str:
    """Canonical, fully parenthesised text that parses back to the same tree."""
    if isinstance(e, Const):
        return _format_const(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, BinOp):
        return f"({print_expr(e.left)}{BINARY_OPS[e.op]}{print_expr(e.right)})"
    base = print_expr(e.base)
    if isinstance(e.base, Pow):
        base = f"({base})"
    return f"{base}^{e.exp}"
