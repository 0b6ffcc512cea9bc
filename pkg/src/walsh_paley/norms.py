#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
L_p, weak-L_p and martingale Hardy norms of step functions, with moduli of continuity
"""
from fractions import Fraction
import logging
import numpy as np

from walsh_paley.group_fn import (
    EXACT,
    StepFunction,
    exact_total,
    peak_magnitude,
    widen_numerators,
    coarsen_average,
    maximum,
    refine,
)
from walsh_paley.transform import partial_sum

TRANSLATION_CHUNK_CELLS = 1 << 22


class NormValue:
    """
    A norm or quasi-norm value with its exponent; exact (a Fraction) only at p = 1 in exact mode
    """

    def __init__(self, value, p):
        if value < 0:
            raise ValueError(f"Norm values are non-negative. Got {value}")
        self.value = value
        self.p = p

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def power(self):
        """value ** p, the subadditive quantity for p < 1."""
        if self.exact and self.p == 1:
            return self.value
        return float(self.value) ** float(self.p)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"NormValue({self.value!r}, p={self.p})"


def _check_p(p, minimum: float = 0.0, inclusive: bool = False):
    if isinstance(p, bool) or not isinstance(p, (int, float, Fraction, np.floating)):
        raise TypeError(f"Exponent must be a real number. Got {type(p)}: {p!r}")
    if p < minimum or (p == minimum and not inclusive):
        relation = ">=" if inclusive else ">"
        raise ValueError(f"Exponent must be {relation} {minimum}. Got {p}")


def lp_norm(f: StepFunction, p) -> NormValue:
    """(2^-N sum |f|^p)^(1/p); exact at p = 1 in exact mode."""
    _check_p(p)
    if f.mode == EXACT and p == 1:
        return NormValue(abs(f).integrate(), p)
    v = np.abs(f.as_float())
    return NormValue(float(np.mean(v ** float(p)) ** (1.0 / float(p))), p)


def linf_norm(f: StepFunction):
    """sup |f|, exact in exact mode."""
    if f.mode == EXACT:
        return Fraction(peak_magnitude(f.data), 1 << f.scale)
    return float(np.abs(f.data).max())


def _level_arrays(f: StepFunction) -> tuple:
    """Distinct positive |f| values (ascending, raw storage) with mu(|f| >= v) counts."""
    values, counts = np.unique(np.abs(f.data), return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1]
    if values.size and values[0] == 0:
        values, at_least = values[1:], at_least[1:]
    return values, at_least


def level_sets(f: StepFunction) -> list:
    """(v, mu(|f| >= v)) for every distinct positive value v of |f|, in decreasing v."""
    values, at_least = _level_arrays(f)
    rows = []
    for v, c in zip(values[::-1], at_least[::-1]):
        if f.mode == EXACT:
            rows.append((Fraction(int(v), 1 << f.scale), Fraction(int(c), f.size)))
        else:
            rows.append((float(v), Fraction(int(c), f.size)))
    return rows


def weak_lp_norm(f: StepFunction, p) -> NormValue:
    """
    sup over lambda of lambda * mu(|f| > lambda)^(1/p), attained in the limit at the
    values of |f|: the max over level sets of (v^p mu(|f| >= v))^(1/p).
    """
    _check_p(p)
    values, at_least = _level_arrays(f)
    if values.size == 0:
        return NormValue(Fraction(0) if f.mode == EXACT and p == 1 else 0.0, p)
    if f.mode == EXACT and p == 1:
        best = max(int(v) * int(c) for v, c in zip(values, at_least))
        return NormValue(Fraction(best, f.size << f.scale), p)
    v = values.astype(np.float64)
    if f.mode == EXACT:
        v = np.ldexp(v, -f.scale)
    peak = float(np.max(v ** float(p) * (at_least / f.size)))
    return NormValue(peak ** (1.0 / float(p)), p)


def maximal_function(f: StepFunction) -> StepFunction:
    """f*(x) = max over m = 0..N of |E_m f(x)|, the conditional expectations on I_m(x)."""
    best = abs(f)
    current = f
    for m in range(f.level - 1, -1, -1):
        current = coarsen_average(current, m)
        best = maximum(best, refine(abs(current), f.level))
    return best


def maximal_rows(values: np.ndarray) -> np.ndarray:
    """Maximal functions of a stack of float level-N functions, one function per row."""
    rows, size = values.shape
    if size & (size - 1):
        raise ValueError(f"Rows must hold a power of two values. Got {size}")
    best = np.abs(values).astype(np.float64)
    current = np.array(values, dtype=np.float64)
    width = size
    while width > 1:
        width //= 2
        current = current.reshape(rows, 2, width).mean(axis=1)
        view = best.reshape(rows, -1, width)
        np.maximum(view, np.abs(current)[:, None, :], out=view)
    return best


def hp_norm_rows(values: np.ndarray, p) -> np.ndarray:
    """||f*||_p for every row of a float stack."""
    _check_p(p)
    stars = maximal_rows(values)
    return np.mean(stars ** float(p), axis=1) ** (1.0 / float(p))


def hp_norm(f: StepFunction, p) -> NormValue:
    """||f*||_p."""
    logger = logging.getLogger(f"{__name__}:hp_norm")
    _check_p(p)
    if p > 1:
        logger.debug(f"H_p norm requested with p = {p} > 1")
    return lp_norm(maximal_function(f), p)


def modulus_lp(f: StepFunction, n: int, p) -> NormValue:
    """
    omega_p(2^-n, f): the largest ||f(. + h) - f||_p over the 2^(N-n) translations
    h in I_n (h with its first n coordinates zero).
    """
    _check_p(p, 1.0, inclusive=True)
    if not 0 <= n <= f.level:
        raise ValueError(f"Modulus rank {n} outside 0..{f.level}")
    ix = np.arange(f.size, dtype=np.int64)
    shifts = np.arange(1 << (f.level - n), dtype=np.int64) << n
    exact_l1 = f.mode == EXACT and p == 1
    data = widen_numerators(f.data, 1) if exact_l1 else f.as_float()
    step = max(1, TRANSLATION_CHUNK_CELLS >> f.level)
    best = 0
    for start in range(0, shifts.size, step):
        hs = shifts[start : start + step]
        diffs = np.abs(data[ix[None, :] ^ hs[:, None]] - data[None, :])
        if exact_l1:
            chunk_best = max(exact_total(row, f.level) for row in diffs)
        else:
            chunk_best = float(np.max(np.mean(diffs ** float(p), axis=1)))
        best = max(best, chunk_best)
    if exact_l1:
        return NormValue(Fraction(best, 1 << (f.scale + f.level)), p)
    return NormValue(best ** (1.0 / float(p)), p)


def best_approx_bounds(f: StepFunction, n: int, p) -> tuple:
    """(||f - S_(2^n) f||_p / 2, ||f - S_(2^n) f||_p), the two sides around E_(2^n)(f, L_p)."""
    _check_p(p, 1.0, inclusive=True)
    if not 0 <= n <= f.level:
        raise ValueError(f"Approximation rank {n} outside 0..{f.level}")
    error = lp_norm(f - partial_sum(f, 1 << n), p).value
    return error / 2, error


def modulus_hp(f: StepFunction, n: int, p) -> NormValue:
    """omega_(H_p)(2^-n, f) = ||f - S_(2^n) f||_(H_p)."""
    _check_p(p)
    if not 0 <= n <= f.level:
        raise ValueError(f"Modulus rank {n} outside 0..{f.level}")
    return hp_norm(f - partial_sum(f, 1 << n), p)
