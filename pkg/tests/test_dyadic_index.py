#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Test the dyadic_index module
"""

from fractions import Fraction
import logging
from pathlib import Path
import pytest
from walsh_paley.dyadic_index import (
    ALTERNATING_BITS,
    EXPLICIT,
    POW2_PLUS_1,
    POW2_PLUS_HALF,
    IndexSequence,
    SelectionError,
    expand,
    gap,
    low,
    order,
    reconstruct,
    select_gap_doubling,
    select_summable,
    select_variation_squaring,
    summable_term,
    support_ratio_bounds,
    variation,
)

test_data_path = Path(__file__).parent / "data"
logger = logging.getLogger(__name__)


def one(n):
    return 1


class TestExpand:
    def test_one(self):
        e = expand(1)
        assert (e.order, e.low, e.gap, e.variation) == (0, 0, 0, 2)
        assert e.bits == (1,)

    def test_five(self):
        e = expand(5)
        assert (e.order, e.low, e.gap, e.variation) == (2, 0, 2, 4)
        assert e.bits == (1, 0, 1)

    def test_pow2_plus_1(self):
        e = expand(1025)
        assert e.as_dict() == {
            "n": 1025,
            "bits": [1] + [0] * 9 + [1],
            "order": 10,
            "low": 0,
            "gap": 10,
            "variation": 4,
        }

    def test_even(self):
        assert (order(6), low(6), gap(6), variation(6)) == (2, 1, 1, 2)

    def test_powers_of_two(self):
        for k in range(40):
            e = expand(1 << k)
            assert e.gap == 0
            assert e.variation == 2

    def test_reconstruct(self):
        for n in range(1, 1025):
            assert reconstruct(expand(n).bits) == n

    def test_variation_range(self):
        for n in range(1, 4097):
            e = expand(n)
            assert 2 <= e.variation <= e.gap + 2
            assert e.variation % 2 == 0

    def test_invalid(self):
        with pytest.raises(ValueError):
            expand(0)
        with pytest.raises(ValueError):
            expand(1 << 63)
        with pytest.raises(TypeError):
            expand(2.0)
        with pytest.raises(ValueError):
            reconstruct([1, 2])

    def test_support_ratio_bounds(self):
        assert support_ratio_bounds(3) == (Fraction(1), Fraction(4))
        assert support_ratio_bounds(8) == (Fraction(1, 2), Fraction(2))


class TestIndexSequence:
    def test_families(self):
        assert list(IndexSequence.family(POW2_PLUS_1, 5)) == [3, 5, 9, 17]
        assert list(IndexSequence.family(POW2_PLUS_HALF, 5)) == [3, 6, 12, 24]
        assert list(IndexSequence.family(ALTERNATING_BITS, 5)) == [1, 5, 21]

    def test_alternating_variation(self):
        for k, n in enumerate(IndexSequence.family(ALTERNATING_BITS, 40), start=1):
            assert variation(n) == 2 * k

    def test_parse(self):
        s = IndexSequence.parse("pow2plus1", 5)
        assert s.kind == POW2_PLUS_1
        assert s == IndexSequence.family(POW2_PLUS_1, 5)
        s = IndexSequence.parse("9, 3, 5, 17", 4)
        assert s.kind == EXPLICIT
        assert list(s) == [3, 5, 9]
        with pytest.raises(ValueError):
            IndexSequence.parse("threes")

    def test_increasing(self):
        with pytest.raises(ValueError):
            IndexSequence(EXPLICIT, [5, 3])
        with pytest.raises(ValueError):
            IndexSequence(EXPLICIT, [3, 3])
        with pytest.raises(ValueError):
            IndexSequence("fibonacci", [1, 2])

    def test_bind(self):
        s = IndexSequence.family(POW2_PLUS_1, 10).bind(6)
        assert list(s) == [3, 5, 9, 17, 33]
        assert s.max_order == 5
        assert len(s) == s.count == 5


class TestSelection:
    def test_summable_pow2_plus_1(self):
        base = IndexSequence.family(POW2_PLUS_1, 18)
        selected = select_summable(base, 0.5, one)
        assert list(selected) == [3, 17, 257, 4097, 65537]
        assert [expand(a).gap for a in selected] == [1, 4, 8, 12, 16]

    def test_summable_alternating(self):
        base = IndexSequence.family(ALTERNATING_BITS, 20)
        assert list(select_summable(base, 1, one)) == [5, 21, 21845]

    def test_summable_series_within_budget(self):
        cases = [
            (IndexSequence.family(POW2_PLUS_1, 30), 0.5, 1.0),
            (IndexSequence.family(POW2_PLUS_1, 30), 0.5, 0.3),
            (IndexSequence.family(ALTERNATING_BITS, 20), 1, 1.0),
        ]
        for base, p, budget in cases:
            selected = select_summable(base, p, one, budget=budget)
            assert len(selected) > 0
            running = 0.0
            for k, alpha in enumerate(selected):
                term = summable_term(alpha, p, one)
                assert term <= budget * 2.0 ** -k
                running += term
                assert running <= 2 * budget

    def test_summable_skips_powers_of_two(self):
        base = IndexSequence.explicit([2, 4, 5, 8, 17])
        selected = select_summable(base, 0.5, one, budget=4.0)
        assert all(expand(a).gap > 0 for a in selected)

    def test_gap_doubling(self):
        base = IndexSequence.family(POW2_PLUS_1, 30)
        selected = select_gap_doubling(base, 0.5, resolution=18)
        assert list(selected) == [3, 5, 17, 257, 65537]

    def test_variation_squaring(self):
        base = IndexSequence.family(ALTERNATING_BITS, 20)
        selected = select_variation_squaring(base)
        assert list(selected) == [1, 5, 21845]
        assert [variation(a) for a in selected] == [2, 4, 16]

    def test_count(self):
        base = IndexSequence.family(POW2_PLUS_1, 18)
        assert list(select_gap_doubling(base, 0.5, count=3)) == [3, 5, 17]

    def test_shortfall(self):
        base = IndexSequence.family(ALTERNATING_BITS, 20)
        with pytest.raises(SelectionError) as info:
            select_variation_squaring(base, count=4)
        assert list(info.value.achieved) == [1, 5, 21845]
        assert info.value.requested == 4

    def test_exponent_range(self):
        base = IndexSequence.family(POW2_PLUS_1, 10)
        with pytest.raises(ValueError):
            select_summable(base, 0, one)
        with pytest.raises(ValueError):
            select_summable(base, 1.5, one)
        with pytest.raises(ValueError):
            select_gap_doubling(base, 1)
