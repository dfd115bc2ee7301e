import logging
from dataclasses import replace
from pathlib import Path

import yaml
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from series.catalog import MAX_CATALOG_MODULUS
from series.evaluation import closed_method, evaluate
from series.exceptions import InvalidInput, NumericDomainError
from series.oracle import Method, TruncationPolicy
from series.rendering import (
    outcomes_json,
    outcomes_text,
    plot_csv,
    report_csv,
    report_json,
    report_text,
    summary_line,
    tables_csv,
    tables_json,
    tables_text,
)
from series.serializers import (
    EvalOptionsSerializer,
    PlotDataOptionsSerializer,
    TableOptionsSerializer,
    VerifyOptionsSerializer,
)
from series.verification import GridSpec, Tolerances, reproduce_tables, sample_series, verify_all

logger = logging.getLogger(__name__)

EXIT_FAILED_CHECKS = 1
EXIT_BAD_ARGUMENTS = 2
EXIT_NUMERIC_DOMAIN = 3

OPTION_SERIALIZERS = {
    "eval": EvalOptionsSerializer,
    "verify": VerifyOptionsSerializer,
    "table": TableOptionsSerializer,
    "plot-data": PlotDataOptionsSerializer,
}

# Flag-specific tolerance overrides and the Tolerances fields they set.
TOLERANCE_FLAGS = {
    "real_tol": ("theorem_real", "jacobi_anger"),
    "complex_tol": ("theorem_complex", "jacobi_anger_complex"),
    "catalog_tol": ("catalog",),
    "structural_tol": ("structural",),
}


def _add_series_arguments(parser):
    parser.add_argument("--N", help="Modulus N >= 1 of the order progression N*v + p")
    parser.add_argument("--p", help="Offset p of the order progression (default 0)")
    parser.add_argument(
        "--alternating",
        action="store_true",
        default=None,
        help="Sum (-1)^v J_{Nv+p}(x) instead of J_{Nv+p}(x)",
    )


def _add_common_arguments(parser, formats=("text", "json", "csv")):
    parser.add_argument("--config", help="YAML file whose keys mirror these flags")
    parser.add_argument("--tail-tol", help="Oracle tail tolerance")
    parser.add_argument("--max-half-width", help="Oracle cap on |v|")
    parser.add_argument("--output", help="Write the result to this file instead of stdout")
    if formats:
        parser.add_argument("--format", choices=formats, default=None)


class Command(BaseCommand):
    '''Evaluate, verify and tabulate closed forms of sums of Bessel functions'''
    help = "Evaluate, verify and tabulate closed forms of sums of Bessel functions J_{Nv+p}(x)"
    requires_system_checks = []

    def add_arguments(self, parser):
        commands = parser.add_subparsers(dest="command", required=True)

        eval_parser = commands.add_parser("eval", help="Evaluate one series at one x")
        _add_series_arguments(eval_parser)
        eval_parser.add_argument("--x", help='Argument: a number, or "re,im" for a complex x')
        eval_parser.add_argument("--method", choices=["closed", "oracle", "catalog", "all"])
        _add_common_arguments(eval_parser, formats=("text", "json"))

        verify_parser = commands.add_parser("verify", help="Run the full verification suite")
        verify_parser.add_argument("--N-max", help="Verify moduli 1..N_MAX")
        verify_parser.add_argument("--tol", help="Override every tolerance")
        verify_parser.add_argument("--real-tol", help="Closed form vs oracle, real x")
        verify_parser.add_argument("--complex-tol", help="Closed form vs oracle, complex x")
        verify_parser.add_argument("--catalog-tol", help="Table rows vs closed form")
        verify_parser.add_argument("--structural-tol", help="Structural identities")
        verify_parser.add_argument("--points", help="Comma-separated real grid")
        verify_parser.add_argument("--complex-points", help='Semicolon-separated "re,im" pairs')
        verify_parser.add_argument("--full", action="store_true", help="Print every record")
        _add_common_arguments(verify_parser)

        table_parser = commands.add_parser("table", help="Reproduce the closed-form tables numerically")
        table_parser.add_argument("--x", help="Comma-separated real sample points")
        _add_common_arguments(table_parser)

        plot_parser = commands.add_parser("plot-data", help="CSV of closed form and oracle over an x range")
        _add_series_arguments(plot_parser)
        plot_parser.add_argument("--x-min")
        plot_parser.add_argument("--x-max")
        plot_parser.add_argument("--steps")
        _add_common_arguments(plot_parser, formats=())

    def handle(self, *args, **options):
        """
        Dispatch to cmd_<subcommand> and map domain errors onto exit codes:
        2 for invalid input, 3 for numeric domain errors.
        """
        command = options["command"]
        values = self._resolve_options(command, options)
        handler = getattr(self, "cmd_" + command.replace("-", "_"))
        try:
            handler(values, options)
        except InvalidInput as exc:
            raise CommandError(str(exc), returncode=EXIT_BAD_ARGUMENTS)
        except NumericDomainError as exc:
            raise CommandError(str(exc), returncode=EXIT_NUMERIC_DOMAIN)

    def _resolve_options(self, command, options):
        """Flags win over the config file, which wins over settings defaults."""
        names = set(OPTION_SERIALIZERS[command]().fields)
        values = {name: options.get(name) for name in names}
        if options.get("config"):
            for key, value in self._load_config(options["config"]).items():
                name = key.replace("-", "_")
                if name not in names:
                    raise CommandError(
                        f"config key {key!r} is not an option of {command}",
                        returncode=EXIT_BAD_ARGUMENTS,
                    )
                if values.get(name) is None:
                    values[name] = value
        return {name: value for name, value in values.items() if value is not None}

    def _load_config(self, path):
        """
        Read a YAML mapping of option names to values.
        """
        try:
            with open(path) as fh:
                data = yaml.safe_load(fh) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise CommandError(f"cannot read config file {path}: {exc}", returncode=EXIT_BAD_ARGUMENTS)
        if not isinstance(data, dict):
            raise CommandError(f"config file {path} must hold a mapping", returncode=EXIT_BAD_ARGUMENTS)
        return data

    def _validated(self, command, values):
        """
        Run the option serializer of the subcommand; field errors become exit 2.
        """
        serializer = OPTION_SERIALIZERS[command](data=values)
        if not serializer.is_valid():
            problems = "; ".join(
                f"{field}: {' '.join(str(m) for m in messages)}"
                for field, messages in serializer.errors.items()
            )
            raise CommandError(f"invalid {command} options: {problems}", returncode=EXIT_BAD_ARGUMENTS)
        return serializer.validated_data

    def _policy(self, data):
        return TruncationPolicy.from_settings(
            tail_tol=data.get("tail_tol"), max_half_width=data.get("max_half_width"),
        )

    def _emit(self, text, output=None):
        if output:
            Path(output).write_text(text)
            self.stderr.write(f"wrote {output}")
        else:
            self.stdout.write(text, ending="")

    def cmd_eval(self, values, options):
        """
        Evaluate one series at one x by the chosen method or methods.
        """
        data = self._validated("eval", values)
        spec, x = data["spec"], data["x"]
        policy = self._policy(data)
        closed = closed_method(spec)
        methods = {
            "closed": [closed],
            "oracle": [Method.ORACLE],
            "catalog": [Method.CATALOG],
            "all": [closed, Method.ORACLE, Method.CATALOG],
        }[data["method"]]
        if data["method"] == "all" and spec.N > MAX_CATALOG_MODULUS:
            logger.info("[CLI] no catalog row for N=%d, comparing closed form and oracle only", spec.N)
            methods.remove(Method.CATALOG)

        outcomes = [evaluate(spec, x, method, policy) for method in methods]
        if data["format"] == "json":
            self._emit(outcomes_json(outcomes), data.get("output"))
        else:
            self._emit(outcomes_text(spec, x, outcomes), data.get("output"))

    def _tolerances(self, data):
        """
        --tol sets every tolerance; the grouped flags then override their own classes.
        """
        tolerances = Tolerances.from_settings()
        if data.get("tol") is not None:
            tolerances = tolerances.override_all(data["tol"])
        overrides = {}
        for flag, targets in TOLERANCE_FLAGS.items():
            if data.get(flag) is not None:
                overrides.update({name: data[flag] for name in targets})
        return replace(tolerances, **overrides)

    def cmd_verify(self, values, options):
        """
        Run the verification suite, always write the JSON report, and exit 1
        when any gated check failed.
        """
        data = self._validated("verify", values)
        moduli = tuple(range(1, data["N_max"] + 1)) if data.get("N_max") else None
        grid = GridSpec.default(
            real_points=tuple(data["points"]) if data.get("points") else None,
            complex_points=tuple(data["complex_points"]) if data.get("complex_points") else None,
            moduli=moduli,
            tolerances=self._tolerances(data),
            policy=self._policy(data),
        )
        report = verify_all(grid)

        path = data.get("output") or settings.BESSEL_SERIES["REPORT_PATH"]
        Path(path).write_text(report_json(report))
        logger.info("[CLI] verification report written to %s", path)

        fmt = data["format"]
        if fmt == "json":
            self.stdout.write(report_json(report), ending="")
        elif fmt == "csv":
            self.stdout.write(report_csv(report), ending="")
        else:
            full = options.get("full") or options["verbosity"] >= 2
            self.stdout.write(report_text(report, include_records=full), ending="")
        line = summary_line(report)
        if fmt != "text":
            self.stderr.write(line)
        if not report.ok:
            raise CommandError(line, returncode=EXIT_FAILED_CHECKS)

    def cmd_table(self, values, options):
        """
        Reproduce the catalog tables at the requested sample points.
        """
        data = self._validated("table", values)
        tables = reproduce_tables(data["x"], self._policy(data))
        render = {"text": tables_text, "json": tables_json, "csv": tables_csv}[data["format"]]
        self._emit(render(tables), data.get("output"))

    def cmd_plot_data(self, values, options):
        """
        CSV of closed form and oracle over a linspace of x.
        """
        data = self._validated("plot-data", values)
        samples = sample_series(
            data["spec"], data["x_min"], data["x_max"], data["steps"], self._policy(data),
        )
        self._emit(plot_csv(samples), data.get("output"))
