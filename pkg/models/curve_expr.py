"""Curve descriptions and their JSON codec.

    {"kind": "weierstrass", "f": "<expr>", "g": "<expr>"}
    {"kind": "explicit", "components": ["<expr>", x4]}
    {"kind": "fiber", "base": [[re, im], x4]}
    {"kind": "partner", "inner": <curve object>}
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from models.errors import CurveFileError, DegenerateWeierstrass, TwistorError
from ratfun.expr import RatExpr, derivative_z, print_expr, uses_zbar
from ratfun.parser import parse_expr
from ratfun.rational import to_rational

MAX_PARTNER_NESTING = 2


@dataclass(frozen=True)
class Explicit:
    components: tuple
    sources: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.components) != 4:
            raise CurveFileError(f"explicit curves need 4 components, got {len(self.components)}")
        if not self.sources:
            object.__setattr__(self, "sources", tuple(print_expr(e) for e in self.components))

    @classmethod
    def from_texts(cls, texts) -> "Explicit":
        texts = tuple(texts)
        return cls(tuple(parse_expr(t) for t in texts), texts)


@dataclass(frozen=True)
class Weierstrass:
    f: RatExpr
    g: RatExpr
    f_text: str = field(default="", compare=False)
    g_text: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.f_text:
            object.__setattr__(self, "f_text", print_expr(self.f))
        if not self.g_text:
            object.__setattr__(self, "g_text", print_expr(self.g))
        if uses_zbar(self.f) or uses_zbar(self.g):
            raise CurveFileError("Weierstrass data must be holomorphic (no zb or conj)")
        if to_rational(derivative_z(self.g)).is_zero():
            raise DegenerateWeierstrass(f"g = {self.g_text} is constant")

    @classmethod
    def from_texts(cls, f: str, g: str) -> "Weierstrass":
        return cls(parse_expr(f), parse_expr(g), f, g)


@dataclass(frozen=True)
class Fiber:
    base: tuple

    def __post_init__(self):
        base = tuple(complex(c) for c in self.base)
        if len(base) != 4:
            raise CurveFileError(f"fiber base needs 4 components, got {len(base)}")
        if not any(base):
            raise CurveFileError("fiber base must be nonzero")
        object.__setattr__(self, "base", base)


@dataclass(frozen=True)
class Partner:
    inner: "CurveExpr"


CurveExpr = Union[Explicit, Weierstrass, Fiber, Partner]


def partner_depth(c: CurveExpr) -> int:
    depth = 0
    while isinstance(c, Partner):
        depth += 1
        c = c.inner
    return depth


def curve_to_dict(c: CurveExpr) -> dict:
    if isinstance(c, Weierstrass):
        return {"kind": "weierstrass", "f": c.f_text, "g": c.g_text}
    if isinstance(c, Explicit):
        return {"kind": "explicit", "components": list(c.sources)}
    if isinstance(c, Fiber):
        return {"kind": "fiber", "base": [[v.real, v.imag] for v in c.base]}
    return {"kind": "partner", "inner": curve_to_dict(c.inner)}


def curve_from_dict(data: dict) -> CurveExpr:
    if not isinstance(data, dict) or "kind" not in data:
        raise CurveFileError("curve object needs a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "weierstrass":
            return Weierstrass.from_texts(str(data["f"]), str(data["g"]))
        if kind == "explicit":
            return Explicit.from_texts(str(t) for t in data["components"])
        if kind == "fiber":
            return Fiber(tuple(complex(re, im) for re, im in data["base"]))
        if kind == "partner":
            curve = Partner(curve_from_dict(data["inner"]))
            if partner_depth(curve) > MAX_PARTNER_NESTING:
                raise CurveFileError(f"partner nesting deeper than {MAX_PARTNER_NESTING}")
            return curve
    except KeyError as e:
        raise CurveFileError(f"{kind} curve is missing field {e}")
    except (TypeError, ValueError) as e:
        if isinstance(e, TwistorError):
            raise
        raise CurveFileError(f"malformed {kind} curve: {e}")
    raise CurveFileError(f"unknown curve kind {kind!r}")


def load_curve(path) -> CurveExpr:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise CurveFileError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
    except OSError as e:
        raise CurveFileError(f"{path}: {e.strerror or e}")
    return curve_from_dict(data)


def save_curve(c: CurveExpr, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(curve_to_dict(c), f, indent=2)
        f.write("\n")
    return path
