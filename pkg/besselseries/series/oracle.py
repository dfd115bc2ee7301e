"""Brute-force evaluation of the series by truncated summation over v.

This is the independent ground truth the closed forms are checked against.
Summation walks outward from v = 0 until both tails are past the turning
point |order| ~ |x| and have gone quiet, then adds the terms back from the
outside in so the small ones are accumulated first.
"""

import cmath
import logging
import math
from dataclasses import dataclass

from django.conf import settings
from django.db.models import TextChoices

from .closed_form import SeriesSpec
from .exceptions import InvalidParameter, TruncationCapExceeded
from .kernel import ComplexValue, as_complex, bessel_j

logger = logging.getLogger(__name__)

TURNING_POINT_MARGIN = 10
PARTIAL_SUM_MARGIN = 20


class Method(TextChoices):
    ORACLE = "oracle", "Truncated summation"
    THEOREM1 = "theorem1", "General closed form"
    THEOREM2 = "theorem2", "General closed form (alternating)"
    CATALOG = "catalog", "Simplified table row"


@dataclass(frozen=True)
class TruncationPolicy:
    tail_tol: float = 1e-13
    max_half_width: int = 4000

    def __post_init__(self):
        if not (self.tail_tol > 0 and math.isfinite(self.tail_tol)):
            raise InvalidParameter(f"tail_tol must be a positive finite number, got {self.tail_tol}")
        if self.max_half_width < 1:
            raise InvalidParameter(f"max_half_width must be >= 1, got {self.max_half_width}")

    @classmethod
    def from_settings(cls, **overrides) -> "TruncationPolicy":
        conf = settings.BESSEL_SERIES
        values = {"tail_tol": conf["TAIL_TOL"], "max_half_width": conf["MAX_HALF_WIDTH"]}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class EvalOutcome:
    value: ComplexValue
    est_tail: float
    terms_used: int
    method: Method

    def __post_init__(self):
        if self.est_tail < 0:
            raise ValueError("est_tail must be >= 0")
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")


def _term(spec: SeriesSpec, x: complex, nu: int) -> complex:
    value = bessel_j(spec.N * nu + spec.p, x)
    if spec.alternating and nu % 2:
        return -value
    return value


def oracle_sum(spec: SeriesSpec, x, policy: TruncationPolicy | None = None) -> EvalOutcome:
    """Sum (+-1)^v J_{Nv+p}(x) over v in [-M, M] with M chosen adaptively."""
    policy = policy or TruncationPolicy()
    x = as_complex(x)
    floor = math.ceil(abs(x)) + TURNING_POINT_MARGIN
    tol = policy.tail_tol
    if (floor + abs(spec.p)) // spec.N + 1 > policy.max_half_width:
        # The turning point alone lies beyond the cap; no need to sum toward it.
        raise TruncationCapExceeded(spec, x, policy.max_half_width)

    terms = {0: _term(spec, x, 0)}
    for half in range(1, policy.max_half_width + 1):
        terms[half] = _term(spec, x, half)
        terms[-half] = _term(spec, x, -half)
        past_turning_point = (
            abs(spec.N * half + spec.p) > floor and abs(spec.N * half - spec.p) > floor
        )
        quiet = all(
            abs(terms[nu]) < tol for nu in (half, half - 1, -half, -(half - 1))
        )
        if past_turning_point and quiet:
            break
    else:
        raise TruncationCapExceeded(spec, x, policy.max_half_width)

    est_tail = abs(_term(spec, x, half + 1)) + abs(_term(spec, x, -(half + 1)))
    total = 0j
    for nu in sorted(terms, key=abs, reverse=True):
        total += terms[nu]
    logger.debug("[ORACLE] %s at x=%s: M=%d est_tail=%.3g", spec, x, half, est_tail)
    return EvalOutcome(total, est_tail, len(terms), Method.ORACLE)


def _check_partial_sum_order(x: complex, M: int, scale: float = 1.0) -> None:
    needed = math.ceil(abs(x) * scale) + PARTIAL_SUM_MARGIN
    if M < needed:
        raise InvalidParameter(f"partial-sum order M={M} must be >= {needed} for |x|={abs(x):.6g}")


def jacobi_anger_partial_sum(x, theta: float, M: int) -> ComplexValue:
    """sum_{a=-M}^{M} J_a(x) exp(i a theta), outermost terms first."""
    x = as_complex(x)
    _check_partial_sum_order(x, M)
    total = 0j
    for alpha in sorted(range(-M, M + 1), key=abs, reverse=True):
        total += bessel_j(alpha, x) * cmath.exp(1j * alpha * theta)
    return total


def jacobi_anger_residual(x, theta: float, M: int) -> float:
    """|exp(i x sin theta) - partial Jacobi-Anger sum of order M|."""
    x = as_complex(x)
    exact = cmath.exp(1j * x * math.sin(theta))
    return abs(exact - jacobi_anger_partial_sum(x, theta, M))


def generating_function_partial_sum(x, t: float, M: int) -> ComplexValue:
    """sum_{v=-M}^{M} J_v(x) t^v for real t != 0."""
    if t == 0:
        raise InvalidParameter("t must be nonzero")
    x = as_complex(x)
    _check_partial_sum_order(x, M, scale=max(abs(t), 1.0 / abs(t)))
    total = 0j
    for nu in sorted(range(-M, M + 1), key=abs, reverse=True):
        total += bessel_j(nu, x) * t**nu
    return total


def generating_function_residual(x, t: float, M: int) -> float:
    """|exp((t - 1/t) x / 2) - partial generating-function sum|, relative above magnitude 1."""
    x = as_complex(x)
    exact = cmath.exp((t - 1.0 / t) * x / 2)
    return abs(exact - generating_function_partial_sum(x, t, M)) / max(1.0, abs(exact))
