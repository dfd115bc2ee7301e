"""Closed-form right-hand sides for sums of Bessel functions over an arithmetic progression.

    sum_v J_{Nv+p}(x)        = (1/N) sum_q exp(i x sin(2 pi q/N))      exp(-i 2 pi p q/N)
    sum_v (-1)^v J_{Nv+p}(x) = (1/N) sum_q exp(i x sin((2q+1) pi/N))   exp(-i (2q+1) pi p/N)

with q = 0 .. N-1. Phase angles are built from exact integer residues, never
accumulated, so results are bit-reproducible and periodic in p.
"""

import cmath
import math
from dataclasses import dataclass

from .exceptions import InvalidSeriesSpec, UnsupportedModulus
from .kernel import ComplexValue, as_complex, finite_result, overflow_guard

# The N-term sums are evaluated term by term.
MAX_CLOSED_FORM_MODULUS = 10**6


@dataclass(frozen=True)
class SeriesSpec:
    """One series: sum over v of (+1 or -1)^v J_{Nv+p}(x)."""

    N: int
    p: int
    alternating: bool = False

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int):
            raise InvalidSeriesSpec(f"N must be an integer, got {self.N!r}")
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InvalidSeriesSpec(f"p must be an integer, got {self.p!r}")
        if self.N < 1:
            raise InvalidSeriesSpec(f"N must be >= 1, got {self.N}")

    def canonical(self) -> tuple["SeriesSpec", int]:
        """Return (spec with p in [0, N), sign) such that self == sign * spec.

        Non-alternating series are periodic in p with period N. Alternating
        series are periodic with period 2N and flip sign under p -> p + N.
        """
        if not self.alternating:
            return SeriesSpec(self.N, self.p % self.N, False), 1
        p = self.p % (2 * self.N)
        if p >= self.N:
            return SeriesSpec(self.N, p - self.N, True), -1
        return SeriesSpec(self.N, p, True), 1

    @property
    def is_canonical(self) -> bool:
        return 0 <= self.p < self.N

    @property
    def order_label(self) -> str:
        if self.p == 0:
            return f"{self.N}v" if self.N != 1 else "v"
        sign = "+" if self.p > 0 else "-"
        head = f"{self.N}v" if self.N != 1 else "v"
        return f"{head}{sign}{abs(self.p)}"

    def __str__(self):
        prefix = "(-1)^v " if self.alternating else ""
        return f"sum_v {prefix}J_{{{self.order_label}}}(x)"


def _unit_phase(numerator: int, denominator: int) -> complex:
    """exp(-i pi numerator / denominator) with the residue reduced exactly first."""
    residue = numerator % (2 * denominator)
    return cmath.exp(-1j * math.pi * residue / denominator)


def _oscillation(x: ComplexValue, angle: float) -> complex:
    return cmath.exp(1j * x * math.sin(angle))


def _check_modulus(spec: SeriesSpec) -> None:
    if spec.N > MAX_CLOSED_FORM_MODULUS:
        raise UnsupportedModulus(spec.N, MAX_CLOSED_FORM_MODULUS, what="closed form")


def theorem1_sum(spec: SeriesSpec, x) -> ComplexValue:
    """Closed form of sum_v J_{Nv+p}(x)."""
    if spec.alternating:
        raise InvalidSeriesSpec(f"theorem1_sum takes a non-alternating series, got {spec}")
    x = as_complex(x)
    _check_modulus(spec)
    N, p = spec.N, spec.p
    total = 0j
    with overflow_guard(spec, x):
        for q in range(N):
            # exp(-i 2 pi p q / N) == exp(-i pi (2 p q) / N)
            total += _oscillation(x, 2.0 * math.pi * q / N) * _unit_phase(2 * p * q, N)
    return finite_result(total / N, spec, x)


def theorem2_sum(spec: SeriesSpec, x) -> ComplexValue:
    """Closed form of sum_v (-1)^v J_{Nv+p}(x)."""
    if not spec.alternating:
        raise InvalidSeriesSpec(f"theorem2_sum takes an alternating series, got {spec}")
    x = as_complex(x)
    _check_modulus(spec)
    canonical, sign = spec.canonical()
    N, p = canonical.N, canonical.p
    total = 0j
    with overflow_guard(spec, x):
        for q in range(N):
            odd = 2 * q + 1
            total += _oscillation(x, odd * math.pi / N) * _unit_phase(odd * p, N)
    return finite_result(sign * total / N, spec, x)


def closed_form_sum(spec: SeriesSpec, x) -> ComplexValue:
    """Dispatch to whichever theorem covers the spec's family."""
    if spec.alternating:
        return theorem2_sum(spec, x)
    return theorem1_sum(spec, x)
