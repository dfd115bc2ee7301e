"""Grid-based cross-checks between the closed forms, the catalog and the oracle.

Every check produces a ``CheckRecord``; failures (including evaluation errors)
are recorded, never raised, so a run always ends with a complete report.
Records are produced in a fixed loop order, so identical grids give identical
reports.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Iterable, Optional

import numpy as np
from django.conf import settings
from django.db.models import TextChoices

from .catalog import CatalogEntry, catalog_entries
from .closed_form import SeriesSpec, closed_form_sum, theorem1_sum, theorem2_sum
from .exceptions import InvalidGrid, InvalidParameter, SeriesError, TruncationCapExceeded
from .kernel import (
    COMPLEX_ARGUMENT_LIMIT,
    REAL_ARGUMENT_LIMIT,
    ComplexValue,
    as_complex,
    bessel_j,
    reflection_sign,
)
from .oracle import (
    TruncationPolicy,
    generating_function_partial_sum,
    jacobi_anger_partial_sum,
    oracle_sum,
)

logger = logging.getLogger(__name__)

REFLECTION_MAX_ORDER = 50


class Check(TextChoices):
    THEOREM1 = "theorem1", "Oracle vs general closed form"
    THEOREM2 = "theorem2", "Oracle vs general closed form (alternating)"
    CATALOG = "catalog", "Table row vs general closed form"
    CATALOG_PRINTED = "catalog_printed", "Printed misprint vs general closed form"
    INTRO_FORMULA = "intro_formula", "N=3 introductory formula"
    PARTITION = "partition_of_unity", "Offsets of one modulus sum to 1"
    PERIODICITY = "p_periodicity", "p and p+N give the same series"
    SIGN_SHIFT = "sign_shift", "Alternating series flips sign under p -> p+N"
    CROSS_THEOREM = "cross_theorem", "Alternating series from the non-alternating one at 2N"
    REALITY = "real_axis_reality", "Real x gives a real sum"
    JACOBI_ANGER = "jacobi_anger", "Jacobi-Anger partial sum"
    REFLECTION = "reflection", "J_{-n}(x) = (-1)^n J_n(x)"
    GENERATING_FUNCTION = "generating_function", "Generating function at t = +-1"
    ONE_SIDED = "one_sided_rows", "One-sided N=2 alternating sums"
    CLASSICAL = "classical_rows", "N=2 alternating rows vs cos/sin"


STRUCTURAL_CHECKS = (
    Check.PARTITION,
    Check.PERIODICITY,
    Check.SIGN_SHIFT,
    Check.CROSS_THEOREM,
    Check.REALITY,
    Check.JACOBI_ANGER,
    Check.REFLECTION,
    Check.GENERATING_FUNCTION,
    Check.ONE_SIDED,
    Check.CLASSICAL,
)


@dataclass(frozen=True)
class Tolerances:
    theorem_real: float = 1e-10
    theorem_complex: float = 1e-9
    catalog: float = 1e-12
    structural: float = 1e-12
    periodicity: float = 1e-15
    sign_shift: float = 1e-13
    reality: float = 1e-13
    reflection: float = 1e-14
    jacobi_anger: float = 1e-10
    jacobi_anger_complex: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise InvalidParameter(f"tolerance {f.name} must be > 0, got {value}")

    @classmethod
    def from_settings(cls) -> "Tolerances":
        return cls(**settings.BESSEL_SERIES["TOLERANCES"])

    def override_all(self, tol: float) -> "Tolerances":
        return replace(self, **{f.name: tol for f in fields(self)})

    def theorem(self, x: complex) -> float:
        return self.theorem_real if x.imag == 0 else self.theorem_complex

    def partial_sum(self, x: complex) -> float:
        return self.jacobi_anger if x.imag == 0 else self.jacobi_anger_complex


def mirrored(points: Iterable[float]) -> tuple[float, ...]:
    """The points together with their negatives, sorted, zero kept once."""
    values = {float(x) for x in points} | {-float(x) for x in points}
    return tuple(sorted(values))


@dataclass(frozen=True)
class GridSpec:
    real_points: tuple[float, ...]
    complex_points: tuple[complex, ...] = ()
    moduli: tuple[int, ...] = tuple(range(1, 13))
    tolerances: Tolerances = field(default_factory=Tolerances)
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    thetas: tuple[float, ...] = (0.4, math.pi / 7, 2.0)
    partial_sum_margin: int = 40
    generating_points: tuple[float, ...] = (1.0, -1.0)

    def __post_init__(self):
        if not self.real_points and not self.complex_points:
            raise InvalidGrid("grid has no points")
        if not self.moduli:
            raise InvalidGrid("grid has no moduli")
        if any(n < 1 for n in self.moduli):
            raise InvalidGrid(f"moduli must be >= 1, got {list(self.moduli)}")
        for x in self.real_points:
            if not (math.isfinite(x) and abs(x) < REAL_ARGUMENT_LIMIT):
                raise InvalidGrid(f"real point {x} is outside the kernel domain")
        for z in self.complex_points:
            if not (cmath.isfinite(z) and abs(z) <= COMPLEX_ARGUMENT_LIMIT):
                raise InvalidGrid(f"complex point {z} is outside the kernel domain")
        if 0 in self.generating_points:
            raise InvalidGrid("generating-function points must be nonzero")

    @classmethod
    def default(cls, **overrides) -> "GridSpec":
        conf = settings.BESSEL_SERIES
        values = {
            "real_points": mirrored(conf["REAL_POINTS"]),
            "complex_points": tuple(complex(re, im) for re, im in conf["COMPLEX_POINTS"]),
            "moduli": tuple(conf["MODULI"]),
            "tolerances": Tolerances.from_settings(),
            "policy": TruncationPolicy.from_settings(),
            "thetas": tuple(conf["JACOBI_ANGER_THETAS"]),
            "partial_sum_margin": conf["JACOBI_ANGER_MARGIN"],
            "generating_points": tuple(conf["GENERATING_FUNCTION_POINTS"]),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def points(self) -> tuple[complex, ...]:
        return tuple(complex(x) for x in self.real_points) + tuple(self.complex_points)


@dataclass(frozen=True)
class CheckRecord:
    check: str
    x: complex
    lhs: Optional[complex]
    rhs: Optional[complex]
    abs_diff: Optional[float]
    tol: float
    passed: bool
    spec: Optional[SeriesSpec] = None
    flagged: bool = False
    note: str = ""

    @classmethod
    def compare(cls, check, x, lhs, rhs, tol, spec=None, flagged=False, note="") -> "CheckRecord":
        diff = abs(lhs - rhs)
        return cls(check, complex(x), complex(lhs), complex(rhs), diff, tol, diff <= tol,
                   spec, flagged, note)

    @classmethod
    def errored(cls, check, x, tol, spec, exc: Exception, flagged=False) -> "CheckRecord":
        return cls(check, complex(x), None, None, None, tol, False, spec, flagged,
                   f"{type(exc).__name__}: {exc}")

    # Flat accessors used by the serializers and CSV export.
    @property
    def N(self):
        return self.spec.N if self.spec else None

    @property
    def p(self):
        return self.spec.p if self.spec else None

    @property
    def alternating(self):
        return self.spec.alternating if self.spec else None

    @property
    def x_re(self):
        return self.x.real

    @property
    def x_im(self):
        return self.x.imag

    @property
    def lhs_re(self):
        return None if self.lhs is None else self.lhs.real

    @property
    def lhs_im(self):
        return None if self.lhs is None else self.lhs.imag

    @property
    def rhs_re(self):
        return None if self.rhs is None else self.rhs.real

    @property
    def rhs_im(self):
        return None if self.rhs is None else self.rhs.imag


@dataclass
class VerificationReport:
    checks: list[str] = field(default_factory=list)
    records: list[CheckRecord] = field(default_factory=list)

    def register(self, *checks: str) -> None:
        for check in checks:
            if check not in self.checks:
                self.checks.append(str(check))

    def add(self, record: CheckRecord) -> None:
        self.register(record.check)
        self.records.append(record)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.register(*other.checks)
        self.records.extend(other.records)
        return self

    @property
    def gated_records(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.flagged]

    @property
    def flagged_records(self) -> list[CheckRecord]:
        return [r for r in self.records if r.flagged]

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.gated_records if not r.passed]

    def summary(self) -> dict:
        gated = self.gated_records
        passed = sum(1 for r in gated if r.passed)
        max_diff = {}
        for check in self.checks:
            diffs = [r.abs_diff for r in self.records if r.check == check and r.abs_diff is not None]
            max_diff[check] = float(np.max(diffs)) if diffs else 0.0
        return {
            "total": len(gated),
            "passed": passed,
            "failed": len(gated) - passed,
            "flagged": len(self.flagged_records),
            "max_diff": max_diff,
        }

    @property
    def ok(self) -> bool:
        return not self.failures


def _record(report, check, x, tol, spec, evaluate: Callable[[], tuple], flagged=False, note=""):
    """Evaluate (lhs, rhs) and record the comparison, or the error it raised."""
    try:
        lhs, rhs = evaluate()
    except SeriesError as exc:
        logger.warning("[VERIFY] %s %s at x=%s raised %s", check, spec or "", x, exc)
        report.add(CheckRecord.errored(check, x, tol, spec, exc, flagged))
        return
    report.add(CheckRecord.compare(check, x, lhs, rhs, tol, spec, flagged, note))


def _log_summary(name: str, report: VerificationReport) -> None:
    summary = report.summary()
    logger.info("[VERIFY] %s: %d/%d passed, %d flagged",
                name, summary["passed"], summary["total"], summary["flagged"])
    if summary["failed"]:
        logger.warning("[VERIFY] %s: %d checks failed", name, summary["failed"])


def verify_theorem(spec: SeriesSpec, grid: GridSpec) -> VerificationReport:
    """Oracle sum against the general closed form at every grid point."""
    check = Check.THEOREM2 if spec.alternating else Check.THEOREM1
    report = VerificationReport()
    report.register(check)
    for x in grid.points:
        _record(report, check, x, grid.tolerances.theorem(x), spec,
                lambda: (oracle_sum(spec, x, grid.policy).value, closed_form_sum(spec, x)))
    _log_summary(f"{check} {spec}", report)
    return report


def intro_formula(p: int, x) -> ComplexValue:
    """(1/3)[1 + 2cos(x sqrt(3)/2 - 2 pi p/3)]"""
    x = as_complex(x)
    return (1 + 2 * cmath.cos(x * math.sqrt(3.0) / 2 - 2 * math.pi * p / 3)) / 3


def _catalog_rows(report: VerificationReport, entry: CatalogEntry, grid: GridSpec) -> None:
    spec = entry.spec
    tol = grid.tolerances.catalog
    for x in grid.points:
        _record(report, Check.CATALOG, x, tol, spec,
                lambda: (entry.evaluate(x), closed_form_sum(spec, x)),
                flagged=entry.suspect, note=entry.reading)
        if entry.suspect:
            _record(report, Check.CATALOG_PRINTED, x, tol, spec,
                    lambda: (entry.printed(x), closed_form_sum(spec, x)),
                    flagged=True, note=f"{entry.display}: {entry.note}")


def verify_catalog(grid: GridSpec) -> VerificationReport:
    """Every table row whose N is in the grid against the general closed form."""
    report = VerificationReport()
    report.register(Check.CATALOG, Check.CATALOG_PRINTED, Check.INTRO_FORMULA)
    for entry in catalog_entries():
        if entry.spec.N in grid.moduli:
            _catalog_rows(report, entry, grid)

    if 3 in grid.moduli:
        for p in range(3):
            spec = SeriesSpec(3, p)
            for x in grid.points:
                _record(report, Check.INTRO_FORMULA, x, grid.tolerances.catalog, spec,
                        lambda: (theorem1_sum(spec, x), intro_formula(p, x)))

    differing = []
    for record in report.flagged_records:
        if record.check == Check.CATALOG_PRINTED and not record.passed and record.spec not in differing:
            differing.append(record.spec)
    for spec in differing:
        logger.info("[CATALOG] %s printed form differs from the general formula (flagged)", spec)
    _log_summary("catalog", report)
    return report


def _partial_sum_order(x: complex, margin: int, scale: float = 1.0) -> int:
    return math.ceil(abs(x) * scale) + margin


def _within_cap(M: int, x: complex, policy: TruncationPolicy, what: str) -> int:
    if M > policy.max_half_width:
        raise TruncationCapExceeded(what, x, policy.max_half_width)
    return M


def _one_sided_order(M: int, x: complex, policy: TruncationPolicy) -> int:
    """Half-width K of the one-sided sums, whose orders reach 2K + 1 ~ M."""
    return _within_cap(M, x, policy, "one-sided sum") // 2 + 1


def _phase_terms(spec: SeriesSpec) -> list[tuple[float, int]]:
    """(oscillation angle, phase numerator over pi/N) for each q, with p left as given."""
    N, p = spec.N, spec.p
    if spec.alternating:
        return [((2 * q + 1) * math.pi / N, (2 * q + 1) * p) for q in range(N)]
    return [(2.0 * math.pi * q / N, 2 * p * q) for q in range(N)]


def unreduced_phase_sum(spec: SeriesSpec, x) -> ComplexValue:
    """The closed form with every phase angle taken as written, p neither reduced nor folded."""
    x = as_complex(x)
    total = 0j
    for angle, numerator in _phase_terms(spec):
        total += cmath.exp(1j * x * math.sin(angle)) * cmath.exp(-1j * math.pi * numerator / spec.N)
    return total / spec.N


def phase_rounding_scale(spec: SeriesSpec, x) -> float:
    """(1/N) sum_q |oscillation_q| (1 + |phase angle_q|).

    Rounding in a phase factor grows with its angle, so tolerances on
    unreduced phase sums are given per unit of this scale.
    """
    x = as_complex(x)
    total = 0.0
    for angle, numerator in _phase_terms(spec):
        total += abs(cmath.exp(1j * x * math.sin(angle))) * (1 + math.pi * abs(numerator) / spec.N)
    return total / spec.N


def _one_sided_cos(x: complex, K: int) -> complex:
    total = 0j
    for nu in range(K, 0, -1):
        total += 2 * reflection_sign(nu) * bessel_j(2 * nu, x)
    return total + bessel_j(0, x)


def _one_sided_sin(x: complex, K: int) -> complex:
    total = 0j
    for nu in range(K, -1, -1):
        total += 2 * reflection_sign(nu) * bessel_j(2 * nu + 1, x)
    return total


def verify_structural(grid: GridSpec) -> VerificationReport:
    """Identities that tie the closed forms and the kernel together."""
    report = VerificationReport()
    report.register(*STRUCTURAL_CHECKS)
    tols = grid.tolerances
    real_points = [complex(x) for x in grid.real_points]

    for N in grid.moduli:
        for x in grid.points:
            _record(report, Check.PARTITION, x, tols.structural, SeriesSpec(N, 0),
                    lambda: (sum(theorem1_sum(SeriesSpec(N, p), x) for p in range(N)), 1.0),
                    note=f"sum over p in [0, {N})")

    for N in grid.moduli:
        for p in range(N):
            plain, shifted = SeriesSpec(N, p), SeriesSpec(N, p + N)
            alt, alt_shifted = SeriesSpec(N, p, True), SeriesSpec(N, p + N, True)
            for x in grid.points:
                _record(report, Check.PERIODICITY, x,
                        tols.periodicity * phase_rounding_scale(shifted, x), plain,
                        lambda: (unreduced_phase_sum(shifted, x), theorem1_sum(plain, x)),
                        note="p+N unreduced")
                _record(report, Check.SIGN_SHIFT, x,
                        tols.sign_shift * phase_rounding_scale(alt_shifted, x), alt,
                        lambda: (unreduced_phase_sum(alt_shifted, x), -theorem2_sum(alt, x)),
                        note="p+N unreduced")
                _record(report, Check.CROSS_THEOREM, x, tols.structural, alt,
                        lambda: (theorem2_sum(alt, x),
                                 theorem1_sum(SeriesSpec(2 * N, p), x)
                                 - theorem1_sum(SeriesSpec(2 * N, p + N), x)))
            for x in real_points:
                for spec in (plain, alt):
                    _record(report, Check.REALITY, x, tols.reality, spec,
                            lambda: (closed_form_sum(spec, x).imag, 0.0), note="imaginary part")

    margin = grid.partial_sum_margin
    for x in grid.points:
        M = _partial_sum_order(x, margin)
        for theta in grid.thetas:
            _record(report, Check.JACOBI_ANGER, x, tols.partial_sum(x), None,
                    lambda: (cmath.exp(1j * x * math.sin(theta)),
                             jacobi_anger_partial_sum(
                                 x, theta, _within_cap(M, x, grid.policy, "Jacobi-Anger partial sum"))),
                    note=f"theta={theta!r} M={M}")
        for t in grid.generating_points:
            Mt = _partial_sum_order(x, margin, max(abs(t), 1 / abs(t)))
            _record(report, Check.GENERATING_FUNCTION, x, tols.partial_sum(x), None,
                    lambda: (cmath.exp((t - 1 / t) * x / 2),
                             generating_function_partial_sum(
                                 x, t, _within_cap(Mt, x, grid.policy, "generating-function partial sum"))),
                    note=f"t={t!r} M={Mt}")
        K = M // 2 + 1
        _record(report, Check.ONE_SIDED, x, tols.partial_sum(x), None,
                lambda: (cmath.cos(x), _one_sided_cos(x, _one_sided_order(M, x, grid.policy))),
                note=f"cos, K={K}")
        _record(report, Check.ONE_SIDED, x, tols.partial_sum(x), None,
                lambda: (cmath.sin(x), _one_sided_sin(x, _one_sided_order(M, x, grid.policy))),
                note=f"sin, K={K}")

    for x in real_points:
        for n in range(REFLECTION_MAX_ORDER + 1):
            _record(report, Check.REFLECTION, x, tols.reflection, None,
                    lambda: (bessel_j(-n, x), reflection_sign(n) * bessel_j(n, x)),
                    note=f"n={n}")
        _record(report, Check.CLASSICAL, x, tols.structural, SeriesSpec(2, 0, True),
                lambda: (theorem2_sum(SeriesSpec(2, 0, True), x), math.cos(x.real)))
        _record(report, Check.CLASSICAL, x, tols.structural, SeriesSpec(2, 1, True),
                lambda: (theorem2_sum(SeriesSpec(2, 1, True), x), math.sin(x.real)))

    _log_summary("structural", report)
    return report


def verify_all(grid: GridSpec) -> VerificationReport:
    """Both theorems for every canonical spec in the grid, then catalog and structural checks."""
    report = VerificationReport()
    report.register(Check.THEOREM1, Check.THEOREM2)
    for alternating in (False, True):
        for N in grid.moduli:
            for p in range(N):
                report.extend(verify_theorem(SeriesSpec(N, p, alternating), grid))
    report.extend(verify_catalog(grid))
    report.extend(verify_structural(grid))
    _log_summary("all", report)
    return report


@dataclass(frozen=True)
class TableCell:
    x: float
    catalog: complex
    theorem: complex
    oracle: complex
    printed: Optional[complex] = None

    @property
    def max_diff(self) -> float:
        return max(abs(self.catalog - self.theorem),
                   abs(self.theorem - self.oracle),
                   abs(self.catalog - self.oracle))


@dataclass(frozen=True)
class TableRow:
    entry: CatalogEntry
    cells: tuple[TableCell, ...]

    @property
    def spec(self) -> SeriesSpec:
        return self.entry.spec


@dataclass(frozen=True)
class CorollaryTables:
    x_samples: tuple[float, ...]
    rows: tuple[TableRow, ...]

    @property
    def suspect_rows(self) -> tuple[TableRow, ...]:
        return tuple(row for row in self.rows if row.entry.suspect)


def reproduce_tables(x_samples: Iterable[float], policy: TruncationPolicy | None = None) -> CorollaryTables:
    """Numerically reproduce every table row at the given real sample points."""
    samples = tuple(float(x) for x in x_samples)
    if not samples:
        raise InvalidParameter("reproduce_tables needs at least one x sample")
    rows = []
    for entry in catalog_entries():
        cells = []
        for x in samples:
            cells.append(TableCell(
                x=x,
                catalog=complex(entry.evaluate(complex(x))),
                theorem=closed_form_sum(entry.spec, x),
                oracle=oracle_sum(entry.spec, x, policy).value,
                printed=complex(entry.printed(complex(x))) if entry.suspect else None,
            ))
        rows.append(TableRow(entry, tuple(cells)))
    return CorollaryTables(samples, tuple(rows))


@dataclass(frozen=True)
class PlotSample:
    x: float
    closed: complex
    oracle: complex

    @property
    def abs_diff(self) -> float:
        return abs(self.closed - self.oracle)


def sample_series(spec: SeriesSpec, x_min: float, x_max: float, steps: int,
                  policy: TruncationPolicy | None = None) -> list[PlotSample]:
    """Closed form and oracle at steps + 1 evenly spaced real points, ends included."""
    if steps < 1:
        raise InvalidParameter(f"steps must be >= 1, got {steps}")
    if not x_min <= x_max:
        raise InvalidParameter(f"x_min must not exceed x_max, got {x_min} > {x_max}")
    samples = []
    for x in np.linspace(x_min, x_max, steps + 1):
        x = float(x)
        samples.append(PlotSample(x, closed_form_sum(spec, x), oracle_sum(spec, x, policy).value))
    return samples
