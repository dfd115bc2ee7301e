import csv
import io
import json
import math
import tempfile
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.test import SimpleTestCase

from series.management.commands.besselseries import Command
from series.serializers import RECORD_FIELDS


def run(*argv):
    """Run the command as manage.py would; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    command = Command(stdout=out, stderr=err)
    try:
        command.run_from_argv(["manage.py", "besselseries", *argv])
    except SystemExit as exc:
        return exc.code, out.getvalue(), err.getvalue()
    return 0, out.getvalue(), err.getvalue()


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)


class EvalCommandTests(CommandTestCase):

    def test_all_methods_agree(self):
        code, out, _ = run("eval", "--N", "3", "--p", "1", "--x", "2.0", "--method", "all", "--format", "json")
        self.assertEqual(code, 0)
        outcomes = json.loads(out)
        self.assertEqual([o["method"] for o in outcomes], ["theorem1", "oracle", "catalog"])
        expected = (1 + 2 * math.cos(math.sqrt(3) - 2 * math.pi / 3)) / 3
        for outcome in outcomes:
            self.assertLessEqual(abs(outcome["value_re"] - expected), 1e-10)

    def test_text_output_lists_pairwise_diffs(self):
        code, out, _ = run("eval", "--N", "3", "--p", "1", "--x", "2.0", "--method", "all")
        self.assertEqual(code, 0)
        self.assertIn("|theorem1 - oracle|", out)
        self.assertIn("|oracle - catalog|", out)

    def test_closed_method(self):
        out = io.StringIO()
        call_command("besselseries", "eval", "--N", "2", "--p", "0", "--x", "7.3",
                     "--method", "closed", "--format", "json", stdout=out)
        [outcome] = json.loads(out.getvalue())
        self.assertAlmostEqual(outcome["value_re"], 1.0, delta=1e-14)
        self.assertEqual(outcome["terms_used"], 2)

    def test_alternating_default_method(self):
        code, out, _ = run("eval", "--N", "4", "--p", "2", "--alternating", "--x", "5.0", "--format", "json")
        self.assertEqual(code, 0)
        [outcome] = json.loads(out)
        self.assertEqual(outcome["method"], "theorem2")
        self.assertLessEqual(abs(outcome["value_re"]), 1e-14)

    def test_complex_argument(self):
        code, out, _ = run("eval", "--N", "2", "--p", "1", "--alternating", "--x", "1.0,1.0",
                           "--method", "oracle", "--format", "json")
        self.assertEqual(code, 0)
        [outcome] = json.loads(out)
        expected = complex(math.sin(1) * math.cosh(1), math.cos(1) * math.sinh(1))
        self.assertLessEqual(abs(complex(outcome["value_re"], outcome["value_im"]) - expected), 1e-9)

    def test_all_without_catalog_row(self):
        code, out, _ = run("eval", "--N", "9", "--p", "4", "--x", "3.0", "--method", "all", "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual([o["method"] for o in json.loads(out)], ["theorem1", "oracle"])

    def test_invalid_arguments_exit_2(self):
        for argv in [
            ("eval", "--N", "0", "--x", "1.0"),
            ("eval", "--N", "two", "--x", "1.0"),
            ("eval", "--N", "3", "--x", "1.0,abc"),
            ("eval", "--N", "3"),
            ("eval", "--N", "3", "--x", "1", "--tail-tol", "0"),
            ("eval", "--N", "3", "--x", "1", "--method", "symbolic"),
            ("frobnicate",),
        ]:
            with self.subTest(argv=argv):
                code, _, _ = run(*argv)
                self.assertEqual(code, 2)

    def test_error_message_names_the_field(self):
        code, _, err = run("eval", "--N", "0", "--x", "1.0")
        self.assertEqual(code, 2)
        self.assertIn("N:", err)

    def test_numeric_domain_errors_exit_3(self):
        for argv in [
            ("eval", "--N", "7", "--x", "1.0", "--method", "catalog"),
            ("eval", "--N", "1", "--x", "1e7", "--method", "oracle"),
            ("eval", "--N", "2", "--x", "40,1", "--method", "oracle"),
            ("eval", "--N", "1", "--x", "30", "--method", "oracle", "--max-half-width", "3"),
            ("eval", "--N", "4", "--x", "0,800"),
            ("eval", "--N", "4", "--x", "0,2000", "--method", "catalog"),
            ("eval", "--N", "4", "--x", "1e308,1e308"),
            ("eval", "--N", "1000000000000", "--x", "1.0", "--method", "closed"),
        ]:
            with self.subTest(argv=argv):
                code, _, err = run(*argv)
                self.assertEqual(code, 3)
                self.assertNotIn("Traceback", err)

    def test_huge_modulus_by_oracle(self):
        code, out, _ = run("eval", "--N", "1000000000000", "--x", "1.0", "--method", "oracle", "--format", "json")
        self.assertEqual(code, 0)
        [outcome] = json.loads(out)
        self.assertAlmostEqual(outcome["value_re"], 0.7651976865579666, delta=1e-13)

    def test_output_file(self):
        path = self.dir / "value.json"
        code, out, _ = run("eval", "--N", "1", "--x", "2.0", "--format", "json", "--output", str(path))
        self.assertEqual(code, 0)
        self.assertEqual(out, "")
        self.assertEqual(json.loads(path.read_text())[0]["value_re"], 1.0)


class ConfigFileTests(CommandTestCase):

    def _config(self, text):
        path = self.dir / "config.yml"
        path.write_text(text)
        return str(path)

    def test_config_supplies_options(self):
        config = self._config("N: 4\np: 1\nx: 1.2\nformat: json\n")
        code, out, _ = run("eval", "--config", config)
        self.assertEqual(code, 0)
        [outcome] = json.loads(out)
        self.assertAlmostEqual(outcome["value_re"], math.sin(1.2) / 2, delta=1e-13)

    def test_flags_override_config(self):
        config = self._config("N: 4\np: 1\nx: 1.2\nformat: json\n")
        code, out, _ = run("eval", "--config", config, "--p", "3")
        self.assertEqual(code, 0)
        [outcome] = json.loads(out)
        self.assertAlmostEqual(outcome["value_re"], -math.sin(1.2) / 2, delta=1e-13)

    def test_hyphenated_keys(self):
        config = self._config("N-max: 1\npoints: [0.5, 1.0]\nformat: json\n")
        code, out, _ = run("verify", "--config", config, "--output", str(self.dir / "r.json"))
        self.assertEqual(code, 0)
        theorem_records = [r for r in json.loads(out)["records"] if r["check"] in ("theorem1", "theorem2")]
        self.assertEqual({r["N"] for r in theorem_records}, {1})

    def test_unknown_key_exit_2(self):
        config = self._config("N: 2\nx: 1.0\nwobble: 3\n")
        code, _, err = run("eval", "--config", config)
        self.assertEqual(code, 2)
        self.assertIn("wobble", err)

    def test_unreadable_config_exit_2(self):
        code, _, _ = run("eval", "--config", str(self.dir / "missing.yml"))
        self.assertEqual(code, 2)
        code, _, _ = run("eval", "--config", self._config("- just\n- a list\n"))
        self.assertEqual(code, 2)


class VerifyCommandTests(CommandTestCase):

    def test_defaults_pass(self):
        path = self.dir / "report.json"
        with self.settings(BESSEL_SERIES={**settings.BESSEL_SERIES, "REPORT_PATH": str(path)}):
            code, out, _ = run("verify")
        self.assertEqual(code, 0)
        first = out.splitlines()[0]
        self.assertRegex(first, r"^PASS: (\d+)/\1 checks$")
        document = json.loads(path.read_text())
        self.assertEqual(document["summary"]["failed"], 0)
        self.assertEqual(list(document["records"][0])[:len(RECORD_FIELDS)], RECORD_FIELDS)

    def test_unattainable_tolerance_exit_1(self):
        path = self.dir / "report.json"
        code, out, err = run("verify", "--tol", "1e-30", "--N-max", "3", "--output", str(path))
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith("FAIL: "))
        self.assertIn("Failures", out)
        self.assertIn("FAIL: ", err)
        document = json.loads(path.read_text())
        failed = [r for r in document["records"] if not r["pass"]]
        self.assertEqual(len(failed), document["summary"]["failed"])
        self.assertTrue(all(r["abs_diff"] is None or r["abs_diff"] > 1e-30 for r in failed))

    def test_restricted_moduli_json(self):
        code, out, err = run("verify", "--N-max", "3", "--format", "json",
                             "--output", str(self.dir / "report.json"))
        self.assertEqual(code, 0)
        document = json.loads(out)
        self.assertTrue(all(r["N"] is None or r["N"] <= 3 for r in document["records"]))
        self.assertIn("theorem2", document["checks"])
        self.assertTrue(err.strip().startswith("PASS: "))

    def test_csv_format(self):
        code, out, _ = run("verify", "--N-max", "2", "--points", "0.5,2.0", "--complex-points", "1,1",
                           "--format", "csv", "--output", str(self.dir / "report.json"))
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))
        self.assertEqual(rows[0], RECORD_FIELDS)
        self.assertTrue(all(row[-1] == "true" for row in rows[1:]))

    def test_full_text_report(self):
        code, out, _ = run("verify", "--N-max", "1", "--points", "1.0", "--full",
                           "--output", str(self.dir / "report.json"))
        self.assertEqual(code, 0)
        self.assertIn("Records", out)

    def test_invalid_grid_exit_2(self):
        for argv in [("--points", "1e9"), ("--complex-points", "40,1"), ("--tol", "0"), ("--N-max", "0")]:
            with self.subTest(argv=argv):
                code, _, _ = run("verify", *argv, "--output", str(self.dir / "report.json"))
                self.assertEqual(code, 2)


class TableAndPlotCommandTests(CommandTestCase):

    def test_table_document(self):
        code, out, _ = run("table", "--x", "1.0", "--format", "json")
        self.assertEqual(code, 0)
        document = json.loads(out)
        self.assertEqual(len(document["rows"]), 36)
        self.assertEqual(document["x_samples"], [1.0])

    def test_table_text(self):
        code, out, _ = run("table", "--x", "2.5")
        self.assertEqual(code, 0)
        self.assertIn("| 6 | 1 |", out)
        self.assertIn("Suspected misprints", out)

    def test_plot_data(self):
        path = self.dir / "plot.csv"
        code, _, _ = run("plot-data", "--N", "3", "--p", "0", "--x-min", "0", "--x-max", "20",
                         "--steps", "400", "--output", str(path))
        self.assertEqual(code, 0)
        lines = path.read_text().splitlines()
        self.assertEqual(lines[0], "x,closed_re,closed_im,oracle_re,oracle_im,abs_diff")
        self.assertEqual(len(lines), 402)
        for line in lines[1::50]:
            x, closed_re = (float(v) for v in line.split(",")[:2])
            self.assertAlmostEqual(closed_re, (1 + 2 * math.cos(x * math.sqrt(3) / 2)) / 3, delta=1e-12)

    def test_plot_data_constant(self):
        code, out, _ = run("plot-data", "--N", "1", "--p", "0", "--x-min", "0", "--x-max", "5", "--steps", "10")
        self.assertEqual(code, 0)
        rows = list(csv.DictReader(io.StringIO(out)))
        self.assertEqual(len(rows), 11)
        self.assertTrue(all(row["closed_re"] == "1.0" for row in rows))

    def test_plot_data_bad_range_exit_2(self):
        code, _, _ = run("plot-data", "--N", "1", "--x-min", "5", "--x-max", "0", "--steps", "10")
        self.assertEqual(code, 2)
