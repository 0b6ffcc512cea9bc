#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Test the transform module
"""

from fractions import Fraction
import logging
import math
import numpy as np
from pathlib import Path
import pytest
from walsh_paley.dyadic_index import expand
from walsh_paley.group_fn import EXACT, FLOAT, StepFunction, coarsen_average, random_step, refine
from walsh_paley.transform import (
    CoefficientVector,
    coefficients_of,
    dirichlet,
    dirichlet_direct,
    dirichlet_formula,
    fwht,
    ifwht,
    kernel_annulus_moduli,
    kernel_support_measure,
    lebesgue_constant,
    lebesgue_constant_closed,
    partial_sum,
    rademacher,
    walsh,
    walsh_polynomial,
)

test_data_path = Path(__file__).parent / "data"
logger = logging.getLogger(__name__)


class TestWalsh:
    def test_walsh(self):
        assert walsh(0, 2).exact_values() == [1, 1, 1, 1]
        assert walsh(1, 2).exact_values() == [1, -1, 1, -1]
        assert walsh(2, 2).exact_values() == [1, 1, -1, -1]
        assert walsh(3, 2).exact_values() == [1, -1, -1, 1]
        with pytest.raises(ValueError):
            walsh(4, 2)

    def test_rademacher(self):
        assert rademacher(1, 3) == walsh(2, 3)
        with pytest.raises(ValueError):
            rademacher(3, 3)

    def test_products(self):
        for m in range(16):
            for n in range(16):
                assert walsh(m, 4) * walsh(n, 4) == walsh(m ^ n, 4)

    def test_orthonormal(self):
        for m in range(8):
            for n in range(8):
                assert (walsh(m, 3) * walsh(n, 3)).integrate() == (1 if m == n else 0)


class TestFWHT:
    def test_single_walsh(self):
        c = fwht(walsh(5, 4))
        assert isinstance(c, CoefficientVector)
        assert c[5] == 1
        assert c.support().tolist() == [5]

    def test_involution_exact(self):
        for level in range(0, 13, 3):
            f = random_step(level, level, mode=EXACT)
            assert ifwht(fwht(f)) == f

    def test_fixture(self):
        f = StepFunction.load(test_data_path / "step_function.json")
        c = coefficients_of(f)
        assert c[0] == Fraction(5, 32)
        assert walsh_polynomial(c) == f
        assert c.energy() == (f * f).integrate()

    def test_parseval_float(self):
        f = random_step(12, 7)
        c = fwht(f)
        assert c.mode == FLOAT
        assert math.isclose(c.energy(), (f * f).integrate(), rel_tol=1e-12)

    def test_walsh_polynomial_dict(self):
        f = walsh_polynomial({0: 1, 3: Fraction(1, 2)}, 2)
        assert f.exact_values() == [Fraction(3, 2), Fraction(1, 2), Fraction(1, 2), Fraction(3, 2)]
        with pytest.raises(ValueError):
            walsh_polynomial({4: 1}, 2)

    def test_truncate(self):
        c = fwht(walsh(3, 2) + walsh(1, 2))
        assert c.truncate(2).support().tolist() == [1]
        with pytest.raises(ValueError):
            c.truncate(5)


class TestPartialSum:
    def test_dyadic_partial_sum_is_conditional_expectation(self):
        f = random_step(8, 2, mode=EXACT)
        for m in range(9):
            assert partial_sum(f, 1 << m) == refine(coarsen_average(f, m), 8)

    def test_polynomial(self):
        f = walsh(2, 3) + walsh(6, 3) * Fraction(1, 4)
        assert partial_sum(f, 3) == walsh(2, 3)
        assert partial_sum(f, 7) == f
        assert partial_sum(f, 8) == f
        with pytest.raises(ValueError):
            partial_sum(f, 9)

    def test_kernel_convolution(self):
        f = random_step(5, 9, mode=EXACT)
        n = 11
        kernel = dirichlet(n, 5)
        S = partial_sum(f, n)
        for ix in (0, 7, 19):
            assert S.value_at(ix) == (f * kernel.translate(ix)).integrate()


class TestDirichlet:
    def test_small(self):
        assert dirichlet(3, 2).exact_values() == [3, 1, 1, -1]
        assert dirichlet(4, 2).exact_values() == [4, 0, 0, 0]
        assert dirichlet(1, 0).exact_values() == [1]

    def test_paths_agree(self):
        for n in range(1, 257):
            assert dirichlet_direct(n, 8) == dirichlet_formula(n, 8)

    def test_recursion(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            m = int(rng.integers(1, 8))
            j = int(rng.integers(1, 1 << m))
            lhs = dirichlet(j + (1 << m), 8)
            rhs = dirichlet(1 << m, 8) + walsh(1 << m, 8) * dirichlet(j, 8)
            assert lhs == rhs

    def test_range(self):
        with pytest.raises(ValueError):
            dirichlet(0, 3)
        with pytest.raises(ValueError):
            dirichlet(9, 3)

    def test_annulus_moduli(self):
        assert kernel_annulus_moduli(3) == [
            (0, 1, Fraction(1, 2)),
            (1, 1, Fraction(1, 4)),
            (2, 3, Fraction(1, 4)),
        ]
        for n in range(1, 200):
            kernel = dirichlet(n, expand(n).order + 1)
            for s, modulus, _ in kernel_annulus_moduli(n)[:-1]:
                ring = (np.arange(kernel.size) & ((2 << s) - 1)) == 1 << s
                assert set(np.abs(kernel.data[ring]).tolist()) == {modulus}


class TestLebesgue:
    def test_values(self):
        assert lebesgue_constant(1) == 1
        assert lebesgue_constant(3) == Fraction(3, 2)
        for k in range(12):
            assert lebesgue_constant(1 << k) == 1

    def test_closed_form(self):
        for n in range(1, 1025):
            assert lebesgue_constant(n) == lebesgue_constant_closed(n)

    def test_bounds(self):
        for n in range(1, 1025):
            v = expand(n).variation
            assert Fraction(v, 8) <= lebesgue_constant(n) <= v

    def test_support_measure(self):
        assert kernel_support_measure(3) == 1
        assert kernel_support_measure(4) == Fraction(1, 4)
        for n in range(1, 513):
            low = expand(n).low
            assert Fraction(1, 2 << low) <= kernel_support_measure(n) <= Fraction(1, 1 << low)
