"""Bessel functions of the first kind for integer order.

Real arguments use Miller's backward recurrence normalised with
J_0 + 2*sum(J_2k) = 1; complex arguments use the ascending power series.
Negative orders and negative real arguments are resolved by reflection.
One backward sweep yields every order below its start, so low orders are
read from a memoised column per argument. Orders so far past the argument
that J_n underflows are answered from the bound |J_n(x)| <= (|x|/2)^n / n!
without recurring. Every function here is pure and safe to share between
threads.
"""

import cmath
import math
from contextlib import contextmanager
from functools import lru_cache
from typing import TypeAlias

from .exceptions import (
    ArgumentTooLarge,
    NonConvergence,
    NonFiniteValue,
    OrderOverflow,
    ResultOverflow,
)

ComplexValue: TypeAlias = complex
BesselOrder: TypeAlias = int

REAL_ARGUMENT_LIMIT = 1e8
COMPLEX_ARGUMENT_LIMIT = 30.0

INT64_MAX = 2**63 - 1

# Miller start order: max(|n|, ceil|x|) + START_MARGIN + ceil(10 ln(2 + |x|))
START_MARGIN = 15
RESCALE_LIMIT = 1e200
RESCALE_FACTOR = 1e-200
# Below this the recurrence ratio 2k/x overflows; two series terms suffice instead.
TINY_ARGUMENT = 1e-8

# Columns start on a multiple of this, so neighbouring orders share one sweep.
COLUMN_BLOCK = 32
# Orders kept from each sweep; higher orders get a sweep of their own.
COLUMN_ORDERS = 4096
# ln of half the smallest subnormal double: a bound below this rounds to 0.
UNDERFLOW_LOG = math.log(5e-324) - math.log(2)

SERIES_MAX_TERMS = 500
SERIES_REL_EPS = 1e-18


def as_complex(x) -> ComplexValue:
    """Coerce a real or complex scalar to ``complex``, rejecting NaN, Inf and unrepresentable |x|."""
    z = complex(x)
    if not cmath.isfinite(z):
        raise NonFiniteValue("x", x)
    try:
        abs(z)
    except OverflowError:
        raise NonFiniteValue("|x|", x) from None
    return z


@contextmanager
def overflow_guard(what, x):
    """Re-raise a floating-point OverflowError inside the block as ResultOverflow."""
    try:
        yield
    except OverflowError:
        raise ResultOverflow(what, x) from None


def finite_result(value, what, x) -> ComplexValue:
    value = complex(value)
    if not cmath.isfinite(value):
        raise ResultOverflow(what, x)
    return value


def reflection_sign(n: int) -> int:
    """(-1)^n for any integer n."""
    return -1 if n % 2 else 1


def start_order(n: BesselOrder, x: float) -> int:
    """Order the backward recurrence starts from; always even."""
    ax = abs(x)
    order = max(abs(n), math.ceil(ax)) + START_MARGIN + math.ceil(10.0 * math.log(2.0 + ax))
    if order % 2:
        order += 1
    if order > INT64_MAX:
        raise OrderOverflow(n)
    return order


def underflows(n: int, x: float) -> bool:
    """True when n >= 0 is far enough past |x| that J_n(x) rounds to zero."""
    ax = abs(x)
    if n <= ax:
        return False
    return n * math.log(ax / 2) - math.lgamma(n + 1) < UNDERFLOW_LOG


def _check_order(n: BesselOrder) -> None:
    if abs(n) > INT64_MAX:
        raise OrderOverflow(n)


def bessel_j_real(n: BesselOrder, x: float) -> float:
    """J_n(x) for integer n and real x with |x| < 1e8."""
    n = int(n)
    x = float(x)
    _check_order(n)
    if not math.isfinite(x):
        raise NonFiniteValue("x", x)
    if abs(x) >= REAL_ARGUMENT_LIMIT:
        raise ArgumentTooLarge(x, REAL_ARGUMENT_LIMIT)

    if x == 0.0:
        return 1.0 if n == 0 else 0.0

    sign = 1
    if n < 0:
        sign *= reflection_sign(n)
        n = -n
    if x < 0.0:
        sign *= reflection_sign(n)
        x = -x
    if underflows(n, x):
        return 0.0
    if x < TINY_ARGUMENT:
        return sign * _ascending_series(n, complex(x)).real
    return sign * _miller(n, x)


def _miller(n: int, x: float) -> float:
    # n >= 0, x > 0
    top = start_order(n, x)
    if n <= COLUMN_ORDERS:
        top = -(-top // COLUMN_BLOCK) * COLUMN_BLOCK
        return _miller_column(x, top)[n]
    return _miller_single(n, x, top)


@lru_cache(maxsize=256)
def _miller_column(x: float, top: int) -> tuple[float, ...]:
    """Normalised J_0(x) .. J_k(x), k = min(top, COLUMN_ORDERS), from one sweep down from top."""
    kept = min(top, COLUMN_ORDERS)
    column = [0.0] * (kept + 1)
    j_above = 0.0
    j_here = 1.0
    norm = 0.0
    for k in range(top, 0, -1):
        # j_here holds the unnormalised J_k
        if k <= kept:
            column[k] = j_here
        if k % 2 == 0:
            norm += 2.0 * j_here
        j_below = (2.0 * k / x) * j_here - j_above
        j_above, j_here = j_here, j_below
        if abs(j_here) > RESCALE_LIMIT:
            j_here *= RESCALE_FACTOR
            j_above *= RESCALE_FACTOR
            norm *= RESCALE_FACTOR
            for i in range(k, kept + 1):
                column[i] *= RESCALE_FACTOR
    norm += j_here
    column[0] = j_here
    return tuple(value / norm for value in column)


@lru_cache(maxsize=4096)
def _miller_single(n: int, x: float, top: int) -> float:
    j_above = 0.0
    j_here = 1.0
    norm = 0.0
    wanted = 0.0
    for k in range(top, 0, -1):
        if k == n:
            wanted = j_here
        if k % 2 == 0:
            norm += 2.0 * j_here
        j_below = (2.0 * k / x) * j_here - j_above
        j_above, j_here = j_here, j_below
        if abs(j_here) > RESCALE_LIMIT:
            j_here *= RESCALE_FACTOR
            j_above *= RESCALE_FACTOR
            norm *= RESCALE_FACTOR
            wanted *= RESCALE_FACTOR
    norm += j_here
    return wanted / norm


def bessel_j_complex(n: BesselOrder, z: ComplexValue) -> ComplexValue:
    """J_n(z) from the ascending series, valid for |z| <= 30."""
    n = int(n)
    _check_order(n)
    z = as_complex(z)
    if abs(z) > COMPLEX_ARGUMENT_LIMIT:
        raise ArgumentTooLarge(z, COMPLEX_ARGUMENT_LIMIT)

    if z == 0:
        return complex(1.0) if n == 0 else complex(0.0)
    if n < 0:
        return reflection_sign(n) * _ascending_series(-n, z)
    return _ascending_series(n, z)


@lru_cache(maxsize=16384)
def _ascending_series(n: int, z: complex) -> complex:
    half = z / 2
    term = complex(1.0)
    for k in range(1, n + 1):
        term *= half / k
        if term == 0:
            return complex(0.0)
    total = term
    peak = abs(total)
    step = -(half * half)
    for k in range(1, SERIES_MAX_TERMS + 1):
        term *= step / (k * (n + k))
        if abs(term) <= SERIES_REL_EPS * peak:
            return total
        total += term
        peak = max(peak, abs(total))
    raise NonConvergence(
        f"ascending series for J_{n}({z}) did not converge in {SERIES_MAX_TERMS} terms"
    )


def bessel_j(n: BesselOrder, x) -> ComplexValue:
    """Route to the real kernel when Im(x) is exactly zero, else the complex one."""
    z = as_complex(x)
    if z.imag == 0.0:
        return complex(bessel_j_real(n, z.real))
    return bessel_j_complex(n, z)
