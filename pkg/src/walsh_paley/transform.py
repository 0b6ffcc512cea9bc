#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Walsh-Paley system, fast Walsh-Hadamard transform, partial sums and Dirichlet kernels
"""
from fractions import Fraction
import logging
import numpy as np

from walsh_paley.dyadic_index import expand
from walsh_paley.group_fn import (
    EXACT,
    FLOAT,
    DyadicArray,
    StepFunction,
    widen_numerators,
)

DIRECT_CHUNK_CELLS = 1 << 22


class CoefficientVector(DyadicArray):
    """
    Walsh-Fourier coefficients f^(0), ..., f^(2^N - 1) of a level-N step function
    """

    def __getitem__(self, k: int):
        return self.value_at(k)

    def truncate(self, n: int) -> "CoefficientVector":
        """Zero every coefficient at and above n."""
        if not 0 <= n <= self.size:
            raise ValueError(f"Truncation point {n} outside 0..{self.size}")
        data = np.array(self.data)
        data[n:] = 0
        return CoefficientVector(self.level, data, self.mode, self.scale)

    def support(self) -> np.ndarray:
        """Indices of the nonzero coefficients."""
        return np.flatnonzero(self.data)

    def energy(self):
        """Sum of squared coefficients (exact in exact mode)."""
        if self.mode == EXACT:
            total = sum(int(v) * int(v) for v in self.data.flat)
            return Fraction(total, 1 << (2 * self.scale))
        return float(np.dot(self.data, self.data))


def _butterfly(values: np.ndarray) -> np.ndarray:
    """Unnormalized in-place Hadamard butterfly on a private copy, natural (Paley) order."""
    a = np.array(values)
    h = 1
    while h < a.size:
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        y = v[:, 1, :]
        v[:, 0, :] = x + y
        v[:, 1, :] = x - y
        h *= 2
    return a


def fwht(f: StepFunction) -> CoefficientVector:
    """Coefficients f^(k) = 2^-N sum_x f(x) w_k(x); exact in exact mode."""
    if f.mode == EXACT:
        return CoefficientVector(
            f.level, _butterfly(widen_numerators(f.data, f.level)), EXACT, f.scale + f.level
        )
    return CoefficientVector(f.level, _butterfly(f.data) / f.size, FLOAT)


def ifwht(c: CoefficientVector) -> StepFunction:
    """Walsh polynomial sum_k c_k w_k; inverse of fwht()."""
    if c.mode == EXACT:
        return StepFunction(c.level, _butterfly(widen_numerators(c.data, c.level)), EXACT, c.scale)
    return StepFunction(c.level, _butterfly(c.data), FLOAT)


def coefficients_of(f: StepFunction) -> CoefficientVector:
    return fwht(f)


def walsh_polynomial(coeffs, level: int = None) -> StepFunction:  # type: ignore
    """
    Step function with the given Walsh coefficients, from a CoefficientVector or
    from a {k: value} dict (then at the given level).
    """
    if isinstance(coeffs, CoefficientVector):
        return ifwht(coeffs)
    if level is None:
        level = max(coeffs, default=0).bit_length()
    size = 1 << level
    if any(not 0 <= k < size for k in coeffs):
        raise ValueError(f"Walsh polynomial indices must lie in 0..{size - 1}")
    values = [0] * size
    for k, v in coeffs.items():
        values[k] = v
    return ifwht(CoefficientVector.from_values(values, level))


def walsh(n: int, level: int) -> StepFunction:
    """w_n at the given level: (-1)^popcount(n & ix) at point code ix."""
    if not 0 <= n < 1 << level:
        raise ValueError(f"Walsh index {n} not resolvable at level {level}")
    ix = np.arange(1 << level, dtype=np.int64)
    parity = np.bitwise_count(ix & n) & 1
    return StepFunction(level, 1 - 2 * parity.astype(np.int64), EXACT)


def rademacher(k: int, level: int) -> StepFunction:
    """r_k(x) = (-1)^x_k."""
    if not 0 <= k < level:
        raise ValueError(f"Rademacher function r_{k} needs level > {k}. Got {level}")
    return walsh(1 << k, level)


def partial_sum(f: StepFunction, n: int) -> StepFunction:
    """S_n f = sum_{k<n} f^(k) w_k."""
    if not 0 <= n <= f.size:
        raise ValueError(
            f"Partial sum S_{n} needs n <= 2^{f.level} at level {f.level}"
        )
    if n == f.size:
        return f
    return ifwht(fwht(f).truncate(n))


def _dyadic_kernel(m: int, level: int) -> np.ndarray:
    """D_(2^m): 2^m on I_m, 0 elsewhere, as int64."""
    ix = np.arange(1 << level, dtype=np.int64)
    return np.where(ix & ((1 << m) - 1) == 0, np.int64(1 << m), np.int64(0))


def _check_kernel_range(n: int, level: int):
    if not 1 <= n <= 1 << level:
        raise ValueError(f"Dirichlet kernel D_{n} needs 1 <= n <= 2^{level}")


def dirichlet_direct(n: int, level: int) -> StepFunction:
    """D_n as the plain sum of w_0, ..., w_(n-1)."""
    logger = logging.getLogger(f"{__name__}:dirichlet_direct")
    _check_kernel_range(n, level)
    ix = np.arange(1 << level, dtype=np.int64)
    acc = np.zeros(1 << level, dtype=np.int64)
    step = max(1, DIRECT_CHUNK_CELLS >> level)
    for start in range(0, n, step):
        ks = np.arange(start, min(n, start + step), dtype=np.int64)[:, None]
        parity = np.bitwise_count(ks & ix[None, :]) & 1
        acc += (1 - 2 * parity.astype(np.int64)).sum(axis=0)
    logger.debug(f"Summed {n} Walsh functions at level {level}")
    return StepFunction(level, acc, EXACT)


def dirichlet_formula(n: int, level: int) -> StepFunction:
    """
    D_n = w_n sum_k n_k (D_(2^(k+1)) - D_(2^k)), with D_(2^m) equal to 2^m on I_m.
    """
    _check_kernel_range(n, level)
    e = expand(n)
    if e.gap == 0:
        return StepFunction(level, _dyadic_kernel(e.order, level), EXACT)
    acc = np.zeros(1 << level, dtype=np.int64)
    for k, bit in enumerate(e.bits):
        if bit:
            acc += _dyadic_kernel(k + 1, level) - _dyadic_kernel(k, level)
    return StepFunction(level, walsh(n, level).data * acc, EXACT)


def dirichlet(n: int, level: int) -> StepFunction:
    return dirichlet_formula(n, level)


def kernel_annulus_moduli(n: int) -> list:
    """
    |D_n| on each annulus: (s, |D_n| on I_s minus I_(s+1), measure) for s = 0..|n|,
    then (|n|+1, n, measure of I_(|n|+1)). On the s-th annulus |D_n| is
    |(n mod 2^s) - n_s 2^s|.
    """
    e = expand(n)
    rows = []
    for s in range(e.order + 1):
        modulus = abs((n & ((1 << s) - 1)) - ((n >> s) & 1) * (1 << s))
        rows.append((s, modulus, Fraction(1, 1 << (s + 1))))
    rows.append((e.order + 1, n, Fraction(1, 1 << (e.order + 1))))
    return rows


def lebesgue_constant(n: int) -> Fraction:
    """L(n) = ||D_n||_1, computed exactly at level |n| + 1."""
    if n < 1:
        raise ValueError(f"Lebesgue constant needs n >= 1. Got {n}")
    kernel = dirichlet_formula(n, expand(n).order + 1)
    return abs(kernel).integrate()


def lebesgue_constant_closed(n: int) -> Fraction:
    """L(n) from kernel_annulus_moduli(), without building the kernel."""
    return sum((m * mu for _, m, mu in kernel_annulus_moduli(n)), Fraction(0))


def kernel_support_measure(n: int) -> Fraction:
    """mu{x : D_n(x) != 0}, exact."""
    if n < 1:
        raise ValueError(f"Kernel support measure needs n >= 1. Got {n}")
    kernel = dirichlet_formula(n, expand(n).order + 1)
    return Fraction(kernel.nonzero_count(), kernel.size)
