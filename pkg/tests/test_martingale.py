#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Test the martingale module
"""

from fractions import Fraction
import json
import logging
import math
from pathlib import Path
import pytest
from walsh_paley.dyadic_index import ALTERNATING_BITS, POW2_PLUS_1, IndexSequence
from walsh_paley.group_fn import EXACT, FLOAT, DyadicInterval, StepFunction
from walsh_paley.martingale import (
    Atom,
    ConstructionSpec,
    ResolutionError,
    WeightFunction,
    as_exponent,
    atom_check,
    build,
    coefficient_oracle,
    kernel_difference,
    power_of_two,
    proof_probe_II,
    random_martingale,
    random_p_atom,
)
from walsh_paley.norms import modulus_hp
from walsh_paley.transform import fwht, partial_sum

test_data_path = Path(__file__).parent / "data"
logger = logging.getLogger(__name__)


def t5b_spec(**kwargs):
    return ConstructionSpec("t5b", IndexSequence.family(ALTERNATING_BITS, 20), 16, **kwargs)


def t4b_spec():
    return ConstructionSpec("t4b", IndexSequence.family(POW2_PLUS_1, 30), 18, p=Fraction(1, 2))


def t1b_spec():
    return ConstructionSpec("t1b", IndexSequence.family(POW2_PLUS_1, 12), 12, p=0.5)


class TestExponents:
    def test_as_exponent(self):
        assert as_exponent(0.3) == Fraction(3, 10)
        assert as_exponent("1/2") == Fraction(1, 2)
        with pytest.raises(TypeError):
            as_exponent(True)
        with pytest.raises(ValueError):
            as_exponent(0)

    def test_power_of_two(self):
        assert power_of_two(Fraction(-2)) == Fraction(1, 4)
        assert math.isclose(power_of_two(Fraction(1, 2)), math.sqrt(2))


class TestWeightFunction:
    def test_one(self):
        phi = WeightFunction.parse("one")
        assert phi(12345) == 1
        assert phi.sqrt(12345) == 1

    def test_log2(self):
        phi = WeightFunction.parse("log2")
        assert phi(8) == Fraction(4)
        assert phi.sqrt(8) == Fraction(2)
        assert math.isclose(phi(5), 1 + math.log2(5))

    def test_power(self):
        phi = WeightFunction.parse("power:0.25")
        assert phi(1) == 1
        assert math.isclose(phi(16), 2.0)
        assert phi.describe() == "power:0.25"
        with pytest.raises(ValueError):
            WeightFunction.power(0.5)

    def test_table(self):
        phi = WeightFunction.from_table({1: 1, 4: 2, 16: 4})
        assert [phi(n) for n in (3, 5, 100)] == [1, 2, 4]
        with pytest.raises(ValueError):
            WeightFunction.from_table({1: 2, 4: 1})

    def test_unknown(self):
        with pytest.raises(ValueError):
            WeightFunction.parse("cubic")


class TestConstructionSpec:
    def test_defaults(self):
        spec = t5b_spec()
        assert spec.p == 1
        assert spec.exponent == 1
        assert spec.phi.describe() == "one"
        assert ConstructionSpec("T5B", IndexSequence.family(ALTERNATING_BITS, 20), 16).theorem == "t5b"

    def test_validation(self):
        base = IndexSequence.family(POW2_PLUS_1, 10)
        with pytest.raises(ValueError):
            ConstructionSpec("t1b", base, 10)
        with pytest.raises(ValueError):
            ConstructionSpec("t4b", base, 10, p=1)
        with pytest.raises(ValueError):
            ConstructionSpec("t2b", base, 10, p=0.5)
        with pytest.raises(ValueError):
            ConstructionSpec("t3b", base, 10, p=0.5)
        with pytest.raises(ValueError):
            ConstructionSpec("t1b", base, 0, p=0.5)
        with pytest.raises(ValueError):
            ConstructionSpec("t1b", base, 10, p=0.5, terms=2)
        with pytest.raises(ValueError):
            ConstructionSpec("t1b", base, 10, p=0.5, mode="decimal")


class TestAtoms:
    def test_kernel_difference(self):
        assert kernel_difference(1, 3).exact_values() == [2, 0, -2, 0, 2, 0, -2, 0]
        with pytest.raises(ResolutionError):
            kernel_difference(3, 3)

    def test_atom_check(self):
        good = Atom(DyadicInterval(1), kernel_difference(1, 3) / 2, 1)
        assert atom_check(good).ok
        bad = Atom(DyadicInterval(1), StepFunction.from_values([1, 1, 0, 0]), 1)
        report = atom_check(bad)
        assert not report
        assert len(report.violations) == 2
        too_tall = Atom(DyadicInterval(1), kernel_difference(1, 3) * 2, 1)
        assert not atom_check(too_tall).ok

    def test_random_p_atom(self):
        for seed in range(8):
            a = random_p_atom(Fraction(1, 2), 2, 6, seed)
            assert a.f.mode == EXACT
            assert atom_check(a).ok
        a = random_p_atom(0.75, 2, 6, 3)
        assert a.f.mode == FLOAT
        assert atom_check(a).ok
        with pytest.raises(ResolutionError):
            random_p_atom(0.5, 6, 6, 0)

    def test_atom_partial_sums_vanish(self):
        for M in range(4):
            a = random_p_atom(Fraction(1, 2), M, 5, seed=M + 10)
            for n in range(1, (1 << M) + 1):
                assert all(v == 0 for v in partial_sum(a.f, n).exact_values())
        a = random_p_atom(0.75, 3, 5, seed=2)
        assert all(v == 0 for v in partial_sum(a.f, 8).exact_values())

    def test_random_martingale(self):
        F = random_martingale(10, 4, decay=1.0)
        assert F.mode == FLOAT
        assert F.level == 10
        assert random_martingale(10, 4, decay=1.0) == F
        errors = [modulus_hp(F, n, 1).value for n in (2, 5, 8)]
        assert errors[0] > errors[1] > errors[2]


class TestBuild:
    def test_t5b(self):
        rc = build(t5b_spec())
        assert list(rc.alphas) == [1, 5, 21845]
        assert rc.lambdas == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 16)]
        assert rc.mode == EXACT
        assert fwht(rc.F) == rc.oracle_coeffs
        assert rc.atomic_p_sum() == Fraction(13, 16)
        assert all(atom_check(a).ok for a in rc.atoms)
        assert rc.martingale(rc.level) == rc.F

    def test_t4b(self):
        rc = build(t4b_spec())
        assert list(rc.alphas) == [3, 5, 17, 257, 65537]
        assert rc.mode == EXACT
        assert fwht(rc.F) == rc.oracle_coeffs
        assert all(atom_check(a).ok for a in rc.atoms)

    def test_t1b(self):
        rc = build(t1b_spec())
        assert list(rc.alphas) == [3, 17, 257]
        assert rc.mode == FLOAT
        assert fwht(rc.F).allclose(rc.oracle_coeffs)
        assert all(atom_check(a).ok for a in rc.atoms)

    def test_t2b(self):
        spec = ConstructionSpec("t2b", IndexSequence.family(ALTERNATING_BITS, 20), 16)
        rc = build(spec)
        assert list(rc.alphas) == [5, 21, 21845]
        assert rc.mode == FLOAT
        assert fwht(rc.F).allclose(rc.oracle_coeffs)

    def test_exact_request_refused(self):
        base = IndexSequence.family(POW2_PLUS_1, 12)
        with pytest.raises(ValueError):
            build(ConstructionSpec("t1b", base, 12, p=0.5, mode=EXACT))

    def test_float_request(self):
        rc = build(t5b_spec(mode=FLOAT))
        assert rc.mode == FLOAT
        assert fwht(rc.F).allclose(rc.oracle_coeffs)

    def test_terms(self):
        rc = build(ConstructionSpec("t4b", IndexSequence.family(POW2_PLUS_1, 30), 18, p=0.5, terms=3))
        assert list(rc.alphas) == [3, 5, 17]

    def test_coefficient_oracle(self):
        spec = t5b_spec()
        alphas = build(spec).alphas
        assert coefficient_oracle(spec, alphas, 0) == 0
        assert coefficient_oracle(spec, alphas, 1) == Fraction(1, 2)
        assert coefficient_oracle(spec, alphas, 3) == 0
        assert coefficient_oracle(spec, alphas, 5) == Fraction(1, 4)
        assert coefficient_oracle(spec, alphas, 20000) == Fraction(1, 16)
        with pytest.raises(ValueError):
            coefficient_oracle(spec, alphas, 1 << 16)

    def test_tail_bounds(self):
        rc = build(t5b_spec())
        assert rc.tail_bound(0) == Fraction(13, 16)
        for k in range(len(rc.alphas)):
            assert rc.tail_measure(k) <= rc.tail_bound(k)

    def test_save(self, tmp_path):
        rc = build(t5b_spec())
        rc.save(tmp_path / "t5b.json")
        with open(tmp_path / "t5b.json", "r", encoding="utf-8") as f:
            d = json.load(f)
        del f
        assert d["alphas"] == [1, 5, 21845]
        assert d["lambdas"] == ["1/2^1", "1/2^2", "1/2^4"]
        assert d["spec"]["theorem"] == "t5b"
        assert StepFunction.from_json_dict(d["F"]) == rc.F


class TestProbe:
    def test_probe(self):
        rc = build(t1b_spec())
        for k in range(len(rc.alphas)):
            result = proof_probe_II(rc, k)
            assert not result.skipped
            assert result.matches
        assert proof_probe_II(rc, 1).predicted == 4

    def test_probe_family(self):
        with pytest.raises(ValueError):
            proof_probe_II(build(t5b_spec()), 0)
