import cmath
import math

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from series.closed_form import (
    MAX_CLOSED_FORM_MODULUS,
    SeriesSpec,
    closed_form_sum,
    theorem1_sum,
    theorem2_sum,
)
from series.exceptions import (
    InvalidSeriesSpec,
    NonFiniteValue,
    NumericDomainError,
    ResultOverflow,
    UnsupportedModulus,
)


class SeriesSpecTests(SimpleTestCase):

    def test_rejects_bad_modulus(self):
        for N in [0, -3]:
            with self.subTest(N=N):
                with self.assertRaises(InvalidSeriesSpec):
                    SeriesSpec(N, 0)

    def test_rejects_non_integers(self):
        with self.assertRaises(InvalidSeriesSpec):
            SeriesSpec(2.0, 0)
        with self.assertRaises(InvalidSeriesSpec):
            SeriesSpec(3, True)

    def test_invalid_spec_is_a_value_error(self):
        with self.assertRaises(ValueError):
            SeriesSpec(0, 1)

    def test_canonical_non_alternating(self):
        self.assertEqual(SeriesSpec(4, 7).canonical(), (SeriesSpec(4, 3), 1))
        self.assertEqual(SeriesSpec(4, -1).canonical(), (SeriesSpec(4, 3), 1))
        self.assertEqual(SeriesSpec(4, 2).canonical(), (SeriesSpec(4, 2), 1))

    def test_canonical_alternating_folds_with_sign(self):
        self.assertEqual(SeriesSpec(3, 4, True).canonical(), (SeriesSpec(3, 1, True), -1))
        self.assertEqual(SeriesSpec(3, 7, True).canonical(), (SeriesSpec(3, 1, True), 1))
        self.assertEqual(SeriesSpec(3, -1, True).canonical(), (SeriesSpec(3, 2, True), -1))

    def test_is_canonical(self):
        self.assertTrue(SeriesSpec(5, 4).is_canonical)
        self.assertFalse(SeriesSpec(5, 5).is_canonical)
        self.assertFalse(SeriesSpec(5, -1, True).is_canonical)

    def test_str(self):
        self.assertEqual(str(SeriesSpec(3, 1)), "sum_v J_{3v+1}(x)")
        self.assertEqual(str(SeriesSpec(1, 0)), "sum_v J_{v}(x)")
        self.assertEqual(str(SeriesSpec(4, -2, True)), "sum_v (-1)^v J_{4v-2}(x)")

    def test_hashable(self):
        self.assertEqual(len({SeriesSpec(2, 1), SeriesSpec(2, 1), SeriesSpec(2, 1, True)}), 2)


class Theorem1Tests(SimpleTestCase):

    def test_table_values(self):
        self.assertAlmostEqual(theorem1_sum(SeriesSpec(2, 0), 7.3), 1 + 0j, delta=1e-14)
        self.assertAlmostEqual(theorem1_sum(SeriesSpec(2, 1), 7.3), 0j, delta=1e-14)
        self.assertAlmostEqual(theorem1_sum(SeriesSpec(4, 1), math.pi / 2), 0.5 + 0j, delta=1e-14)

    def test_zero_argument_selects_order_zero(self):
        self.assertAlmostEqual(theorem1_sum(SeriesSpec(5, 3), 0.0), 0j, delta=1e-15)
        self.assertAlmostEqual(theorem1_sum(SeriesSpec(5, 0), 0.0), 1 + 0j, delta=1e-15)

    def test_introductory_formula(self):
        x = 2.0
        expected = (1 + 2 * math.cos(math.sqrt(3) - 2 * math.pi / 3)) / 3
        self.assertAlmostEqual(theorem1_sum(SeriesSpec(3, 1), x), expected, delta=1e-12)

    def test_rejects_alternating(self):
        with self.assertRaises(InvalidSeriesSpec):
            theorem1_sum(SeriesSpec(3, 1, True), 1.0)

    def test_p_periodicity_is_exact(self):
        for N in range(1, 13):
            for p in range(N):
                with self.subTest(N=N, p=p):
                    for x in [0.7, 17.3, 1 + 1j]:
                        self.assertEqual(theorem1_sum(SeriesSpec(N, p + N), x), theorem1_sum(SeriesSpec(N, p), x))
                        self.assertEqual(theorem1_sum(SeriesSpec(N, p - 3 * N), x), theorem1_sum(SeriesSpec(N, p), x))

    def test_partition_of_unity(self):
        x = 17.3
        total = sum(theorem1_sum(SeriesSpec(12, p), x) for p in range(12))
        self.assertLessEqual(abs(total - 1), 1e-12)

    def test_real_axis_reality(self):
        self.assertLessEqual(abs(theorem1_sum(SeriesSpec(5, 4), 6.6).imag), 1e-13)


class Theorem2Tests(SimpleTestCase):

    def test_table_values(self):
        self.assertAlmostEqual(theorem2_sum(SeriesSpec(2, 0, True), 1.1), complex(math.cos(1.1)), delta=1e-14)
        self.assertAlmostEqual(theorem2_sum(SeriesSpec(2, 1, True), 1.1), complex(math.sin(1.1)), delta=1e-14)
        self.assertAlmostEqual(theorem2_sum(SeriesSpec(1, 0, True), 4.2), 1 + 0j, delta=1e-14)
        self.assertAlmostEqual(theorem2_sum(SeriesSpec(4, 2, True), 9.9), 0j, delta=1e-14)

    def test_complex_classical_rows(self):
        z = 0.8 - 1.3j
        self.assertLessEqual(abs(theorem2_sum(SeriesSpec(2, 0, True), z) - cmath.cos(z)), 1e-13)
        self.assertLessEqual(abs(theorem2_sum(SeriesSpec(2, 1, True), z) - cmath.sin(z)), 1e-13)

    def test_rejects_non_alternating(self):
        with self.assertRaises(InvalidSeriesSpec):
            theorem2_sum(SeriesSpec(3, 1), 1.0)

    def test_sign_shift(self):
        for N in range(1, 13):
            for p in range(N):
                with self.subTest(N=N, p=p):
                    lhs = theorem2_sum(SeriesSpec(N, p + N, True), 2.7)
                    rhs = -theorem2_sum(SeriesSpec(N, p, True), 2.7)
                    self.assertLessEqual(abs(lhs - rhs), 1e-13)

    def test_cross_theorem(self):
        x = 2.2
        lhs = theorem2_sum(SeriesSpec(3, 2, True), x)
        rhs = theorem1_sum(SeriesSpec(6, 2), x) - theorem1_sum(SeriesSpec(6, 5), x)
        self.assertLessEqual(abs(lhs - rhs), 1e-12)

    def test_dispatch(self):
        self.assertEqual(closed_form_sum(SeriesSpec(4, 1), 3.0), theorem1_sum(SeriesSpec(4, 1), 3.0))
        self.assertEqual(closed_form_sum(SeriesSpec(4, 1, True), 3.0), theorem2_sum(SeriesSpec(4, 1, True), 3.0))


class ClosedFormDomainTests(SimpleTestCase):

    def test_large_imaginary_part_overflows(self):
        with self.assertRaises(ResultOverflow):
            theorem1_sum(SeriesSpec(4, 0), 800j)
        with self.assertRaises(ResultOverflow):
            theorem2_sum(SeriesSpec(2, 0, True), 800j)

    def test_unrepresentable_modulus_of_x(self):
        with self.assertRaises(NonFiniteValue):
            theorem1_sum(SeriesSpec(2, 0), complex(1e308, 1e308))

    def test_modulus_cap(self):
        with self.assertRaises(UnsupportedModulus):
            theorem1_sum(SeriesSpec(10**12, 0), 1.0)
        with self.assertRaises(NumericDomainError):
            closed_form_sum(SeriesSpec(MAX_CLOSED_FORM_MODULUS + 1, 3, True), 1.0)


class ClosedFormPropertyTests(SimpleTestCase):

    @settings(max_examples=60, derandomize=True, deadline=None)
    @given(
        N=st.integers(min_value=1, max_value=12),
        p=st.integers(min_value=-40, max_value=40),
        x=st.floats(min_value=-20.0, max_value=20.0, allow_nan=False),
    )
    def test_real_argument_gives_real_sum(self, N, p, x):
        self.assertLessEqual(abs(theorem1_sum(SeriesSpec(N, p), x).imag), 1e-13)
        self.assertLessEqual(abs(theorem2_sum(SeriesSpec(N, p, True), x).imag), 1e-13)

    @settings(max_examples=60, derandomize=True, deadline=None)
    @given(
        N=st.integers(min_value=1, max_value=6),
        p=st.integers(min_value=0, max_value=11),
        re=st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
        im=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False),
    )
    def test_cross_theorem_holds_off_axis(self, N, p, re, im):
        x = complex(re, im)
        lhs = theorem2_sum(SeriesSpec(N, p, True), x)
        rhs = theorem1_sum(SeriesSpec(2 * N, p), x) - theorem1_sum(SeriesSpec(2 * N, p + N), x)
        self.assertLessEqual(abs(lhs - rhs), 1e-12 * max(1.0, abs(lhs)))
