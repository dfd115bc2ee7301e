"""Simplified closed forms for N <= 6, one entry per (N, p, family).

Each entry evaluates the simplified expression directly with ``cmath`` so it
works for real and complex x alike. Two non-alternating rows (N=6, p=1 and
p=5) are printed without x inside the sine; those entries evaluate the
x-dependent reading and keep the printed form alongside for comparison.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Optional

from .closed_form import SeriesSpec
from .exceptions import UnsupportedModulus
from .kernel import ComplexValue, as_complex, finite_result, overflow_guard

logger = logging.getLogger(__name__)

MAX_CATALOG_MODULUS = 6

SQRT3 = math.sqrt(3.0)
SQRT2 = math.sqrt(2.0)
PI = math.pi
SIN_PI_5 = math.sin(PI / 5)
SIN_2PI_5 = math.sin(2 * PI / 5)
SIN_3PI_5 = math.sin(3 * PI / 5)
SIN_4PI_5 = math.sin(4 * PI / 5)

cos = cmath.cos
sin = cmath.sin

Evaluator = Callable[[complex], complex]


@dataclass(frozen=True)
class CatalogEntry:
    spec: SeriesSpec
    evaluate: Evaluator
    display: str
    # Only set on rows whose printed form is suspected to be a misprint.
    printed: Optional[Evaluator] = None
    reading: str = ""
    note: str = ""

    @property
    def suspect(self) -> bool:
        return self.printed is not None


def _row(N, p, alternating, display, evaluate, **extra):
    return CatalogEntry(SeriesSpec(N, p, alternating), evaluate, display, **extra)


def _five(alternating, p):
    """Rows N=5; the phase offsets follow the printed table verbatim."""
    if not alternating:
        a, b = 2 * p, 4 * p
        display = (
            "(1/5)[1 + 2cos(x*sin(2pi/5)) + 2cos(x*sin(4pi/5))]" if p == 0 else
            f"(1/5)[1 + 2cos(x*sin(2pi/5) - {a}pi/5) + 2cos(x*sin(4pi/5) - {b}pi/5)]"
        )
        return _row(5, p, False, display, lambda x: (
            1 + 2 * cos(x * SIN_2PI_5 - a * PI / 5) + 2 * cos(x * SIN_4PI_5 - b * PI / 5)
        ) / 5)

    a, b = 4 * p, 2 * p
    lead = -1 if p % 2 else 1
    sign = "-" if lead < 0 else ""
    display = (
        "(1/5)[1 + 2cos(x*sin(pi/5)) + 2cos(x*sin(3pi/5))]" if p == 0 else
        f"{sign}(1/5)[1 + 2cos(x*sin(pi/5) + {a}pi/5) + 2cos(x*sin(3pi/5) + {b}pi/5)]"
    )
    return _row(5, p, True, display, lambda x: lead * (
        1 + 2 * cos(x * SIN_PI_5 + a * PI / 5) + 2 * cos(x * SIN_3PI_5 + b * PI / 5)
    ) / 5)


MISPRINT_NOTE = (
    "printed without x inside the sine; the x-dependent reading "
    "sin(x*sqrt(3)/2) is what the general formula produces"
)

_ENTRIES = [
    # sum_v J_{Nv+p}(x)
    _row(1, 0, False, "1", lambda x: 1 + 0 * x),
    _row(2, 0, False, "1", lambda x: 1 + 0 * x),
    _row(2, 1, False, "0", lambda x: 0 * x),
    _row(3, 0, False, "(1/3)[1 + 2cos(x*sqrt(3)/2)]",
         lambda x: (1 + 2 * cos(x * SQRT3 / 2)) / 3),
    _row(3, 1, False, "(1/3)[1 + 2cos(x*sqrt(3)/2 - 2pi/3)]",
         lambda x: (1 + 2 * cos(x * SQRT3 / 2 - 2 * PI / 3)) / 3),
    _row(3, 2, False, "(1/3)[1 + 2cos(x*sqrt(3)/2 - 4pi/3)]",
         lambda x: (1 + 2 * cos(x * SQRT3 / 2 - 4 * PI / 3)) / 3),
    _row(4, 0, False, "cos^2(x/2)", lambda x: cos(x / 2) ** 2),
    _row(4, 1, False, "(1/2)sin(x)", lambda x: sin(x) / 2),
    _row(4, 2, False, "sin^2(x/2)", lambda x: sin(x / 2) ** 2),
    _row(4, 3, False, "-(1/2)sin(x)", lambda x: -sin(x) / 2),
    *(_five(False, p) for p in range(5)),
    _row(6, 0, False, "(1/3)[1 + 2cos(x*sqrt(3)/2)]",
         lambda x: (1 + 2 * cos(x * SQRT3 / 2)) / 3),
    _row(6, 1, False, "(1/sqrt(3))sin(sqrt(3)/2)",
         lambda x: sin(x * SQRT3 / 2) / SQRT3,
         printed=lambda x: sin(SQRT3 / 2) / SQRT3 + 0 * x,
         reading="(1/sqrt(3))sin(x*sqrt(3)/2)",
         note=MISPRINT_NOTE),
    _row(6, 2, False, "(1/3)[1 - cos(x*sqrt(3)/2)]",
         lambda x: (1 - cos(x * SQRT3 / 2)) / 3),
    _row(6, 3, False, "0", lambda x: 0 * x),
    _row(6, 4, False, "(1/3)[1 - cos(x*sqrt(3)/2)]",
         lambda x: (1 - cos(x * SQRT3 / 2)) / 3),
    _row(6, 5, False, "-(1/sqrt(3))sin(sqrt(3)/2)",
         lambda x: -sin(x * SQRT3 / 2) / SQRT3,
         printed=lambda x: -sin(SQRT3 / 2) / SQRT3 + 0 * x,
         reading="-(1/sqrt(3))sin(x*sqrt(3)/2)",
         note=MISPRINT_NOTE),

    # sum_v (-1)^v J_{Nv+p}(x)
    _row(1, 0, True, "1", lambda x: 1 + 0 * x),
    _row(2, 0, True, "cos(x)", lambda x: cos(x)),
    _row(2, 1, True, "sin(x)", lambda x: sin(x)),
    _row(3, 0, True, "(1/3)[1 + 2cos(x*sqrt(3)/2)]",
         lambda x: (1 + 2 * cos(x * SQRT3 / 2)) / 3),
    _row(3, 1, True, "-(1/3)[1 - 2cos(x*sqrt(3)/2 - pi/3)]",
         lambda x: -(1 - 2 * cos(x * SQRT3 / 2 - PI / 3)) / 3),
    _row(3, 2, True, "(1/3)[1 + 2cos(x*sqrt(3)/2 - 2pi/3)]",
         lambda x: (1 + 2 * cos(x * SQRT3 / 2 - 2 * PI / 3)) / 3),
    _row(4, 0, True, "cos(x/sqrt(2))", lambda x: cos(x / SQRT2)),
    _row(4, 1, True, "(1/sqrt(2))sin(x/sqrt(2))", lambda x: sin(x / SQRT2) / SQRT2),
    _row(4, 2, True, "0", lambda x: 0 * x),
    _row(4, 3, True, "(1/sqrt(2))sin(x/sqrt(2))", lambda x: sin(x / SQRT2) / SQRT2),
    *(_five(True, p) for p in range(5)),
    _row(6, 0, True, "(1/3)[cos(x) + 2cos(x/2)]", lambda x: (cos(x) + 2 * cos(x / 2)) / 3),
    _row(6, 1, True, "(1/3)[sin(x) + sin(x/2)]", lambda x: (sin(x) + sin(x / 2)) / 3),
    _row(6, 2, True, "-(1/3)[cos(x) - cos(x/2)]", lambda x: -(cos(x) - cos(x / 2)) / 3),
    _row(6, 3, True, "-(1/3)[sin(x) - 2sin(x/2)]", lambda x: -(sin(x) - 2 * sin(x / 2)) / 3),
    _row(6, 4, True, "(1/3)[cos(x) - cos(x/2)]", lambda x: (cos(x) - cos(x / 2)) / 3),
    _row(6, 5, True, "(1/3)[sin(x) + sin(x/2)]", lambda x: (sin(x) + sin(x / 2)) / 3),
]

CATALOG = MappingProxyType({entry.spec: entry for entry in _ENTRIES})


def catalog_entries() -> list[CatalogEntry]:
    """All entries, ordered by family, then N, then p."""
    return sorted(CATALOG.values(), key=lambda e: (e.spec.alternating, e.spec.N, e.spec.p))


def lookup(spec: SeriesSpec) -> tuple[CatalogEntry, int]:
    """Entry for the canonical form of ``spec`` and the sign relating the two."""
    if spec.N > MAX_CATALOG_MODULUS:
        raise UnsupportedModulus(spec.N, MAX_CATALOG_MODULUS)
    canonical, sign = spec.canonical()
    return CATALOG[canonical], sign


def catalog_eval(spec: SeriesSpec, x) -> ComplexValue:
    """Evaluate the simplified form for ``spec`` at real or complex x."""
    entry, sign = lookup(spec)
    if entry.suspect:
        logger.debug("[CATALOG] %s evaluated with its x-dependent reading", entry.spec)
    x = as_complex(x)
    with overflow_guard(spec, x):
        value = sign * entry.evaluate(x)
    return finite_result(value, spec, x)


def catalog_display(spec: SeriesSpec) -> str:
    """Formula text of the table row for ``spec`` as printed."""
    entry, sign = lookup(spec)
    if sign < 0:
        return f"-[{entry.display}]"
    return entry.display
