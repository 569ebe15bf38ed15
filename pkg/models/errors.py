"""Error types raised across the library.

Every error carries a snake_case ``kind`` and the CLI exit code it maps to:
2 for usage, parse and IO problems, 3 for numeric failures.
"""


class TwistorError(ValueError):
    kind = "twistor_error"
    exit_code = 3

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.kind)
        self.detail = detail or self.kind

    def to_dict(self) -> dict:
        return {"error": {"kind": self.kind, "detail": self.detail}}


class ParseError(TwistorError):
    kind = "parse_error"
    exit_code = 2

    def __init__(self, offset: int, expected: str, text: str = ""):
        self.offset = offset
        self.expected = expected
        where = f" in {text!r}" if text else ""
        super().__init__(f"at byte {offset}{where}: expected {expected}")


class CurveFileError(TwistorError):
    kind = "curve_file_error"
    exit_code = 2


class InvalidConfig(TwistorError):
    kind = "invalid_config"
    exit_code = 2


class DegenerateWeierstrass(TwistorError):
    kind = "degenerate_weierstrass"
    exit_code = 2


class PoleAtPoint(TwistorError):
    kind = "pole_at_point"


class ZeroPolynomial(TwistorError):
    kind = "zero_polynomial"


class OrderExhausted(TwistorError):
    kind = "order_exhausted"


class NoHorizontalTangent(TwistorError):
    kind = "no_horizontal_tangent"


class NotAFlag(TwistorError):
    kind = "not_a_flag"


class FrameNotOrthonormal(TwistorError):
    kind = "frame_not_orthonormal"


class StepTooSmall(TwistorError):
    kind = "step_too_small"


class StepTooLarge(TwistorError):
    kind = "step_too_large"


class ZeroOnContour(TwistorError):
    kind = "zero_on_contour"


class InsufficientSamples(TwistorError):
    kind = "insufficient_samples"


class QuadratureDrift(TwistorError):
    kind = "quadrature_drift"


class DegeneratePoint(TwistorError):
    kind = "degenerate_point"


class NotConformal(TwistorError):
    kind = "not_conformal"


class EmptyGrid(TwistorError):
    kind = "empty_grid"
