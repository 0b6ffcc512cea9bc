#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Test the group_fn module
"""

from fractions import Fraction
import logging
from pathlib import Path
import pytest
from walsh_paley.group_fn import (
    EXACT,
    FLOAT,
    DyadicArray,
    DyadicInterval,
    LevelMismatchError,
    Point,
    StepFunction,
    annulus,
    coarsen_average,
    format_dyadic,
    indicator,
    maximum,
    mean_on,
    parse_dyadic,
    random_step,
    refine,
    restrict,
    translate,
)

test_data_path = Path(__file__).parent / "data"
logger = logging.getLogger(__name__)


class TestDyadicRationals:
    def test_format(self):
        assert format_dyadic(Fraction(3, 4)) == "3/2^2"
        assert format_dyadic(-5) == "-5/2^0"
        with pytest.raises(ValueError):
            format_dyadic(Fraction(1, 3))

    def test_parse(self):
        assert parse_dyadic("-5/2^3") == Fraction(-5, 8)
        assert parse_dyadic("7") == Fraction(7)
        with pytest.raises(ValueError):
            parse_dyadic("1/3")


class TestStepFunction:
    def test_from_values(self):
        f = StepFunction.from_values([1, Fraction(1, 2), "3/2^2", 0])
        assert f.level == 2
        assert f.mode == EXACT
        assert f.scale == 2
        assert list(f.data) == [4, 2, 3, 0]
        assert f.value_at(2) == Fraction(3, 4)

    def test_float_values(self):
        f = StepFunction.from_values([0.5, 1, 2, 3])
        assert f.mode == FLOAT
        assert f.value_at(0) == 0.5

    def test_invalid_values(self):
        with pytest.raises(ValueError):
            StepFunction.from_values([Fraction(1, 3), 0])
        with pytest.raises(ValueError):
            StepFunction.from_values([1, 2, 3], 2)
        with pytest.raises(ValueError):
            StepFunction(2, [1, 2, 3, 4], "decimal")

    def test_load_fixture(self):
        f = StepFunction.load(test_data_path / "step_function.json")
        assert f.level == 3
        assert f.value_at(4) == Fraction(5, 8)
        assert f.integrate() == Fraction(5, 32)

    def test_save_load(self, tmp_path):
        f = random_step(5, 11, mode=EXACT)
        f.save(tmp_path / "f.json")
        assert StepFunction.load(tmp_path / "f.json") == f
        g = random_step(5, 11)
        g.save(tmp_path / "g.json")
        assert StepFunction.load(tmp_path / "g.json") == g

    def test_arithmetic(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        g = StepFunction.from_values([Fraction(1, 2), 0, -1, 2])
        assert (f + g).exact_values() == [Fraction(3, 2), 2, 2, 6]
        assert (f - g).exact_values() == [Fraction(1, 2), 2, 4, 2]
        assert (f * g).exact_values() == [Fraction(1, 2), 0, -3, 8]
        assert (f + 1).exact_values() == [2, 3, 4, 5]
        assert (f / 4).exact_values() == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
        assert (f / 3).mode == FLOAT
        assert (f * 0.5).mode == FLOAT
        assert abs(g).exact_values() == [Fraction(1, 2), 0, 1, 2]
        assert (-g).exact_values() == [Fraction(-1, 2), 0, 1, -2]

    def test_large_numerators(self):
        f = StepFunction.from_values([1 << 40, 1])
        square = f * f
        assert square.value_at(0) == Fraction(1 << 80)
        assert square.value_at(1) == 1
        assert (square - square).nonzero_count() == 0

    def test_levels(self):
        coarse = StepFunction.from_values([1, 2])
        fine = StepFunction.from_values([1, 1, 1, 1])
        assert (coarse + fine).exact_values() == [2, 3, 2, 3]
        assert refine(coarse, 2).exact_values() == [1, 2, 1, 2]
        with pytest.raises(LevelMismatchError):
            DyadicArray(1, [1, 2]) + DyadicArray(2, [1, 2, 3, 4])

    def test_equality(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        assert f == StepFunction.from_values([1, 2, 3, 4])
        assert f != f.to_mode(FLOAT)
        assert f.to_mode(FLOAT).to_mode(EXACT) == f
        assert f.allclose(f.to_mode(FLOAT) * (1 + 1e-14))
        assert not f.allclose(f + Fraction(1, 1024))

    def test_integrate(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        assert f.integrate() == Fraction(5, 2)
        assert f.to_mode(FLOAT).integrate() == 2.5

    def test_integrate_translation_invariant(self):
        f = random_step(6, 11, mode=EXACT)
        for h in (0, 1, 5, 38, 63):
            assert translate(f, h).integrate() == f.integrate()
        g = random_step(6, 11)
        assert translate(g, 21).integrate() == pytest.approx(g.integrate())

    def test_translate(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        assert translate(f, 1).exact_values() == [2, 1, 4, 3]
        assert f.translate(Point(2, 2)).exact_values() == [3, 4, 1, 2]
        with pytest.raises(LevelMismatchError):
            translate(f, Point(1, 3))

    def test_coarsen_average(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        assert coarsen_average(f, 1).exact_values() == [2, 3]
        assert coarsen_average(f, 0).exact_values() == [Fraction(5, 2)]
        assert f.coarsen_average(2) == f

    def test_maximum(self):
        f = StepFunction.from_values([1, -2, 3, 0])
        g = StepFunction.from_values([0, 1, Fraction(7, 2), -1])
        assert maximum(f, g).exact_values() == [1, 1, Fraction(7, 2), 0]

    def test_random_step(self):
        assert random_step(6, 3) == random_step(6, 3)
        assert random_step(6, 3, mode=EXACT) == random_step(6, 3, mode=EXACT)
        f = random_step(6, 3, mode=EXACT, denominator_bits=4)
        assert all(abs(v) <= 1 and (v * 16).denominator == 1 for v in f.exact_values())


class TestGroup:
    def test_point(self):
        x = Point.from_coordinates([1, 0, 1])
        assert x.coords == 5
        assert x.coordinate(2) == 1
        y = Point(3, 3)
        assert (x + y) == Point(6, 3)
        assert (x + x).is_identity
        with pytest.raises(ValueError):
            Point(8, 3)
        with pytest.raises(LevelMismatchError):
            x + Point(1, 2)

    def test_evaluate(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        assert f(Point(5, 3)) == 2
        with pytest.raises(LevelMismatchError):
            f(Point(1, 1))

    def test_interval(self):
        interval = DyadicInterval.around(Point(6, 3), 1)
        assert interval == DyadicInterval(1, 0)
        assert interval.measure == Fraction(1, 2)
        assert list(interval.indices(3)) == [0, 2, 4, 6]
        assert interval.contains(4)
        assert not interval.contains(5)

    def test_indicator(self):
        assert indicator(DyadicInterval(1, 0), 2).exact_values() == [1, 0, 1, 0]
        assert indicator(DyadicInterval(2, 3), 2).exact_values() == [0, 0, 0, 1]

    def test_annulus(self):
        assert annulus(0, 2).exact_values() == [0, 1, 0, 1]
        assert annulus(1, 2).exact_values() == [0, 0, 1, 0]
        with pytest.raises(ValueError):
            annulus(2, 2)

    def test_complement_decomposition(self):
        level = 5
        for M in range(level + 1):
            total = indicator(DyadicInterval(M), level)
            for s in range(M):
                total = total + annulus(s, level)
            assert total.exact_values() == [1] * (1 << level)

    def test_restrict_and_mean(self):
        f = StepFunction.from_values([1, 2, 3, 4])
        interval = DyadicInterval(1, 1)
        assert restrict(f, interval).exact_values() == [0, 2, 0, 4]
        assert mean_on(f, interval) == 3
        assert mean_on(f.to_mode(FLOAT), interval) == 3.0
