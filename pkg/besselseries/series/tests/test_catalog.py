import math

from django.test import SimpleTestCase

from series.catalog import CATALOG, catalog_display, catalog_entries, catalog_eval, lookup
from series.closed_form import SeriesSpec, closed_form_sum
from series.exceptions import NumericDomainError, ResultOverflow, UnsupportedModulus

GRID = [-20.0, -10.0, -2.5, -0.5, 0.0, 0.5, 1.0, 2.5, math.pi, 5.0, 10.0, 17.3, 20.0,
        1 + 1j, 3 - 2j, 0.5 + 0.5j]


class CatalogContentTests(SimpleTestCase):

    def test_holds_36_canonical_rows(self):
        entries = catalog_entries()
        self.assertEqual(len(entries), 36)
        self.assertEqual(len(CATALOG), 36)
        for entry in entries:
            self.assertTrue(entry.spec.is_canonical)
            self.assertLessEqual(entry.spec.N, 6)

    def test_entries_are_ordered(self):
        keys = [(e.spec.alternating, e.spec.N, e.spec.p) for e in catalog_entries()]
        self.assertEqual(keys, sorted(keys))

    def test_only_the_sqrt3_sine_rows_are_suspect(self):
        suspects = {e.spec for e in catalog_entries() if e.suspect}
        self.assertEqual(suspects, {SeriesSpec(6, 1), SeriesSpec(6, 5)})
        for spec in suspects:
            self.assertTrue(CATALOG[spec].note)
            self.assertIn("x*sqrt(3)/2", CATALOG[spec].reading)

    def test_catalog_is_read_only(self):
        with self.assertRaises(TypeError):
            CATALOG[SeriesSpec(7, 0)] = None


class CatalogEvalTests(SimpleTestCase):

    def test_table_values(self):
        self.assertAlmostEqual(catalog_eval(SeriesSpec(3, 0), 0.0), 1 + 0j, delta=1e-15)
        self.assertAlmostEqual(catalog_eval(SeriesSpec(6, 3), 13.7), 0j, delta=1e-15)
        self.assertAlmostEqual(catalog_eval(SeriesSpec(3, 1, True), 0.0), 0j, delta=1e-15)

    def test_agrees_with_closed_form(self):
        for entry in catalog_entries():
            for x in GRID:
                with self.subTest(spec=str(entry.spec), x=x):
                    diff = abs(catalog_eval(entry.spec, x) - closed_form_sum(entry.spec, x))
                    self.assertLessEqual(diff, 1e-12)

    def test_non_canonical_offsets(self):
        for spec in [SeriesSpec(4, 5), SeriesSpec(3, -2), SeriesSpec(6, 9, True), SeriesSpec(5, 13, True)]:
            with self.subTest(spec=str(spec)):
                self.assertLessEqual(abs(catalog_eval(spec, 2.5) - closed_form_sum(spec, 2.5)), 1e-12)

    def test_printed_misprint_disagrees_away_from_one(self):
        entry = CATALOG[SeriesSpec(6, 1)]
        x = 2.5
        self.assertGreater(abs(entry.printed(complex(x)) - closed_form_sum(entry.spec, x)), 1e-3)
        self.assertLessEqual(abs(entry.evaluate(complex(x)) - closed_form_sum(entry.spec, x)), 1e-12)
        # At x = 1 the two readings coincide.
        self.assertLessEqual(abs(entry.printed(1 + 0j) - entry.evaluate(1 + 0j)), 1e-15)

    def test_unsupported_modulus(self):
        with self.assertRaises(UnsupportedModulus):
            catalog_eval(SeriesSpec(7, 3), 1.0)
        with self.assertRaises(NumericDomainError):
            lookup(SeriesSpec(12, 0, True))

    def test_overflow_is_a_domain_error(self):
        with self.assertRaises(ResultOverflow):
            catalog_eval(SeriesSpec(4, 0), 2000j)
        with self.assertRaises(NumericDomainError):
            catalog_eval(SeriesSpec(2, 1, True), complex(0.0, 1e6))


class CatalogDisplayTests(SimpleTestCase):

    def test_display_strings(self):
        self.assertEqual(catalog_display(SeriesSpec(4, 2)), "sin^2(x/2)")
        self.assertEqual(catalog_display(SeriesSpec(1, 0)), "1")
        self.assertEqual(catalog_display(SeriesSpec(6, 1, True)), "(1/3)[sin(x) + sin(x/2)]")
        self.assertEqual(catalog_display(SeriesSpec(6, 1)), "(1/sqrt(3))sin(sqrt(3)/2)")

    def test_display_of_sign_folded_spec(self):
        self.assertEqual(catalog_display(SeriesSpec(2, 2, True)), "-[cos(x)]")
        self.assertEqual(catalog_display(SeriesSpec(2, 4, True)), "cos(x)")
