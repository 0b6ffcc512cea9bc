#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Test the norms module
"""

from fractions import Fraction
import logging
import math
import numpy as np
from pathlib import Path
import pytest
from walsh_paley.group_fn import EXACT, FLOAT, DyadicInterval, StepFunction, indicator, random_step
from walsh_paley.norms import (
    NormValue,
    best_approx_bounds,
    hp_norm,
    hp_norm_rows,
    level_sets,
    linf_norm,
    lp_norm,
    maximal_function,
    maximal_rows,
    modulus_hp,
    modulus_lp,
    weak_lp_norm,
)
from walsh_paley.transform import partial_sum, walsh

test_data_path = Path(__file__).parent / "data"
logger = logging.getLogger(__name__)


def sample():
    return StepFunction.from_values([1, -2, 3, 0])


class TestLpNorms:
    def test_l1_exact(self):
        v = lp_norm(sample(), 1)
        assert v.exact
        assert v.value == Fraction(3, 2)
        assert v.power() == Fraction(3, 2)

    def test_l2(self):
        assert math.isclose(lp_norm(sample(), 2).value, math.sqrt(3.5))

    def test_quasi_norm(self):
        v = lp_norm(sample(), 0.5)
        expected = ((1 + math.sqrt(2) + math.sqrt(3)) / 4) ** 2
        assert math.isclose(v.value, expected)
        assert math.isclose(v.power(), math.sqrt(expected))

    def test_linf(self):
        assert linf_norm(sample()) == 3
        assert linf_norm(sample().to_mode(FLOAT)) == 3.0

    def test_exponent_checks(self):
        with pytest.raises(ValueError):
            lp_norm(sample(), 0)
        with pytest.raises(TypeError):
            lp_norm(sample(), "1")
        with pytest.raises(ValueError):
            NormValue(-1, 1)


class TestWeakNorms:
    def test_level_sets(self):
        assert level_sets(sample()) == [
            (Fraction(3), Fraction(1, 4)),
            (Fraction(2), Fraction(1, 2)),
            (Fraction(1), Fraction(3, 4)),
        ]

    def test_weak_l1(self):
        v = weak_lp_norm(sample(), 1)
        assert v.value == 1
        assert v.exact

    def test_weak_quasi_norm(self):
        v = weak_lp_norm(sample(), 0.5)
        assert math.isclose(v.value, 0.5625)
        assert math.isclose(v.power(), 0.75)

    def test_weak_below_strong(self):
        for seed in range(10):
            f = random_step(6, seed, mode=EXACT)
            assert weak_lp_norm(f, 1).value <= lp_norm(f, 1).value

    def test_zero(self):
        zero = StepFunction.constant(0, 3)
        assert weak_lp_norm(zero, 1).value == 0
        assert weak_lp_norm(zero.to_mode(FLOAT), 0.5).value == 0.0


class TestHardyNorms:
    def test_maximal_function(self):
        star = maximal_function(sample())
        assert star.exact_values() == [2, 2, 3, 1]
        assert hp_norm(sample(), 1).value == 2

    def test_maximal_rows(self):
        fs = [random_step(6, seed) for seed in range(4)]
        rows = maximal_rows(np.stack([f.data for f in fs]))
        for f, row in zip(fs, rows):
            assert np.allclose(row, maximal_function(f).data, rtol=1e-12, atol=0.0)
        norms = hp_norm_rows(np.stack([f.data for f in fs]), 0.5)
        for f, v in zip(fs, norms):
            assert math.isclose(v, hp_norm(f, 0.5).value, rel_tol=1e-12)

    def test_walsh_function(self):
        # every conditional expectation of w_1 below rank 1 vanishes
        assert hp_norm(walsh(1, 4), 1).value == 1
        assert hp_norm(walsh(1, 4), 0.5).value == pytest.approx(1.0)

    def test_dominates_lp(self):
        for seed in range(10):
            f = random_step(6, seed, mode=EXACT)
            assert hp_norm(f, 1).value >= lp_norm(f, 1).value

    def test_interval_indicators(self):
        # the coarse averages spread 1_(I_s) over the annuli, so H_1 exceeds L_1 for s >= 1
        for s in range(7):
            f = indicator(DyadicInterval(s), 6)
            assert hp_norm(f, 1).value == Fraction(s + 2, 2 ** (s + 1))
            assert lp_norm(f, 1).value == Fraction(1, 2**s)


class TestModuli:
    def test_walsh_translations(self):
        w = walsh(1, 2)
        assert modulus_lp(w, 0, 1).value == 2
        assert modulus_lp(w, 1, 1).value == 0
        assert modulus_lp(w, 2, 2).value == 0.0

    def test_best_approx_bounds(self):
        assert best_approx_bounds(walsh(1, 2), 0, 1) == (Fraction(1, 2), Fraction(1))

    def test_sandwich(self):
        for seed in range(12):
            f = random_step(6, seed, mode=EXACT)
            n = seed % 7
            omega = modulus_lp(f, n, 1).value
            lower, error = best_approx_bounds(f, n, 1)
            assert omega / 2 <= error <= omega
            assert lower == error / 2

    def test_modulus_lp_non_increasing(self):
        for seed in range(4):
            f = random_step(5, seed, mode=EXACT)
            exact = [modulus_lp(f, n, 1).value for n in range(6)]
            assert all(after <= before for before, after in zip(exact, exact[1:]))
            assert exact[-1] == 0
            squares = [modulus_lp(f, n, 2).value for n in range(6)]
            assert all(after <= before for before, after in zip(squares, squares[1:]))

    def test_modulus_hp(self):
        f = walsh(2, 4) + walsh(9, 4) * Fraction(1, 2)
        assert modulus_hp(f, 2, 1).value == Fraction(1, 2)
        assert modulus_hp(f, 4, 1).value == 0
        assert modulus_hp(f, 2, 1).value == hp_norm(f - partial_sum(f, 4), 1).value

    def test_rank_checks(self):
        with pytest.raises(ValueError):
            modulus_lp(sample(), 3, 1)
        with pytest.raises(ValueError):
            modulus_lp(sample(), 1, 0.5)
        with pytest.raises(ValueError):
            modulus_hp(sample(), -1, 1)
