"""Error hierarchy for series evaluation.

``InvalidInput`` covers malformed requests (the CLI exits with 2),
``NumericDomainError`` covers requests outside the supported numeric domain
(the CLI exits with 3).
"""


class SeriesError(Exception):
    """Base class for every error raised by the series app."""


class InvalidInput(SeriesError, ValueError):
    """The request itself is malformed."""


class InvalidSeriesSpec(InvalidInput):
    """A SeriesSpec violates N >= 1 or uses the wrong family for an operation."""


class InvalidParameter(InvalidInput):
    """A numeric parameter (policy, partial-sum order, sample count) is out of range."""


class InvalidGrid(InvalidInput):
    """A verification grid is empty or has points outside the kernel domain."""


class NumericDomainError(SeriesError):
    """The request is well formed but cannot be evaluated to the promised accuracy."""


class ArgumentTooLarge(NumericDomainError):
    def __init__(self, x, limit):
        self.x = x
        self.limit = limit
        super().__init__(f"|x| = {abs(x):.6g} exceeds the supported limit {limit:.6g}")


class OrderOverflow(NumericDomainError):
    def __init__(self, order):
        self.order = order
        super().__init__(f"Bessel order {order} does not fit a 64-bit recurrence start order")


class NonConvergence(NumericDomainError):
    """The ascending series did not settle within its term budget."""


class NonFiniteValue(NumericDomainError):
    def __init__(self, what, value):
        self.value = value
        super().__init__(f"{what} must be finite, got {value!r}")


class UnsupportedModulus(NumericDomainError):
    def __init__(self, modulus, limit=6, what="catalog"):
        self.modulus = modulus
        self.limit = limit
        super().__init__(f"{what} only holds N <= {limit}, got N = {modulus}")


class ResultOverflow(NumericDomainError):
    """An intermediate or final value left the double-precision range."""

    def __init__(self, what, x):
        self.x = x
        super().__init__(f"{what} overflows double precision at x = {x}")


class TruncationCapExceeded(NumericDomainError):
    def __init__(self, spec, x, max_half_width):
        self.spec = spec
        self.x = x
        self.max_half_width = max_half_width
        super().__init__(
            f"{spec} at x = {x} did not converge within |nu| <= {max_half_width}"
        )
