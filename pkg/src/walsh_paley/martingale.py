#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
p-atoms and the lacunary counterexample martingales built from kernel-difference atoms
"""
from fractions import Fraction
import json
import logging
import math
import numpy as np
from pathlib import Path

from walsh_paley.dyadic_index import (
    IndexSequence,
    SelectionError,
    expand,
    select_gap_doubling,
    select_summable,
    select_variation_squaring,
)
from walsh_paley.group_fn import (
    EXACT,
    FLOAT,
    MAX_EXACT_LEVEL,
    DyadicInterval,
    StepFunction,
    annulus,
    is_dyadic,
    numerators_from,
)
from walsh_paley.norms import modulus_hp
from walsh_paley.transform import (
    CoefficientVector,
    dirichlet_formula,
    partial_sum,
    walsh,
)

T1B = "t1b"
T2B = "t2b"
T4B = "t4b"
T5B = "t5b"
VALID_THEOREMS = {T1B, T2B, T4B, T5B}
WEIGHTED_THEOREMS = {T1B, T2B}
AUTO = "auto"
VALID_BUILD_MODES = {AUTO, EXACT, FLOAT}
MIN_TERMS = 3
MAX_WEIGHT_POWER = Fraction(1, 4)
ATOM_TOLERANCE = 1e-12


class ResolutionError(ValueError):
    """An object needs more resolution than the requested level provides."""


def as_exponent(p) -> Fraction:
    """Exponent as a Fraction; floats are read through their decimal form (0.3 -> 3/10)."""
    if isinstance(p, bool):
        raise TypeError(f"Exponent must be a real number. Got {p!r}")
    if isinstance(p, (float, np.floating)):
        q = Fraction(repr(float(p)))
    else:
        q = Fraction(p)
    if q <= 0:
        raise ValueError(f"Exponent must be positive. Got {p}")
    return q


def power_of_two(e: Fraction):
    """2**e: an exact Fraction when e is an integer, else a float."""
    if e.denominator == 1:
        return Fraction(2) ** int(e)
    return 2.0 ** float(e)


def dyadic_sqrt(q):
    """Exact square root of a dyadic rational when it is one, else None."""
    if not isinstance(q, (int, Fraction)) or q < 0:
        return None
    q = Fraction(q)
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator and is_dyadic(Fraction(a, b)):
        return Fraction(a, b)
    return None


def settle(x):
    """Keep dyadic Fractions exact, turn everything else into a float."""
    if isinstance(x, (int, Fraction)) and is_dyadic(x):
        return Fraction(x)
    return float(x)


def _times(a, b):
    return settle(a * b) if isinstance(a, Fraction) and isinstance(b, Fraction) else float(a) * float(b)


def _over(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return settle(a / b)
    return float(a) / float(b)


class WeightFunction:
    """
    Nondecreasing weight Phi >= 1: one (Phi = 1), log2 (1 + log2 n), power (n^gamma)
    or a user table
    """

    def __init__(self, kind: str = "one", gamma=None, table: dict = None):  # type: ignore
        if kind not in {"one", "log2", "power", "table"}:
            raise ValueError(f"Unrecognized weight function kind: {kind}")
        if kind == "power":
            if gamma is None or not 0 < Fraction(gamma) <= MAX_WEIGHT_POWER:
                raise ValueError(
                    f"Power weights need 0 < gamma <= {MAX_WEIGHT_POWER}. Got {gamma}"
                )
        if kind == "table":
            if not table:
                raise ValueError("Table weights need at least one (n, value) entry")
            keys = sorted(table)
            if keys[0] < 1:
                raise ValueError(f"Table weight keys must be positive. Got {keys[0]}")
            previous = 1
            for k in keys:
                if table[k] < previous:
                    raise ValueError(
                        f"Table weights must be >= 1 and nondecreasing; value {table[k]} at {k}"
                    )
                previous = table[k]
            table = {k: table[k] for k in keys}
        self.kind = kind
        self.gamma = gamma
        self.table = table

    @classmethod
    def one(cls) -> "WeightFunction":
        return cls("one")

    @classmethod
    def log2(cls) -> "WeightFunction":
        return cls("log2")

    @classmethod
    def power(cls, gamma) -> "WeightFunction":
        return cls("power", gamma=gamma)

    @classmethod
    def from_table(cls, values: dict) -> "WeightFunction":
        """Phi(n) is the value at the largest key <= n, and 1 below the first key."""
        return cls("table", table=dict(values))

    @classmethod
    def parse(cls, text: str) -> "WeightFunction":
        """'one', 'log2' or 'power:<gamma>'."""
        text = text.strip()
        if text in {"one", "log2"}:
            return cls(text)
        if text.startswith("power:"):
            return cls.power(float(text.split(":", 1)[1]))
        raise ValueError(f"Unrecognized weight function: '{text}'. Use one, log2 or power:<gamma>")

    def exact_value(self, n: int):
        """Phi(n) as a Fraction where it is rational, else None."""
        if self.kind == "one":
            return Fraction(1)
        if self.kind == "log2":
            e = expand(n)
            return Fraction(1 + e.order) if e.gap == 0 else None
        if self.kind == "power":
            return Fraction(1) if n == 1 else None
        value = self._table_value(n)
        return Fraction(value) if isinstance(value, (int, Fraction)) else None

    def _table_value(self, n: int):
        value = 1
        for k, v in self.table.items():
            if k > n:
                break
            value = v
        return value

    def __call__(self, n: int):
        exact = self.exact_value(n)
        if exact is not None:
            return exact
        if self.kind == "log2":
            return 1.0 + math.log2(n)
        if self.kind == "power":
            return float(n) ** float(self.gamma)
        return float(self._table_value(n))

    def sqrt(self, n: int):
        """Phi(n)^(1/2), exact when Phi(n) is the square of a dyadic rational."""
        value = self(n)
        root = dyadic_sqrt(value)
        return root if root is not None else math.sqrt(float(value))

    def describe(self) -> str:
        if self.kind == "power":
            return f"power:{self.gamma}"
        return self.kind

    def __repr__(self):
        return f"WeightFunction({self.describe()!r})"


class Atom:
    """
    A candidate p-atom: a step function meant to live on `support` with zero mean there
    and sup norm at most mu(support)^(-1/p)
    """

    def __init__(self, support: DyadicInterval, f: StepFunction, p):
        if support.rank > f.level:
            raise ResolutionError(
                f"Atom support of rank {support.rank} needs level >= {support.rank}; got {f.level}"
            )
        self.support = support
        self.f = f
        self.p = p

    def __repr__(self):
        return f"Atom(support={self.support!r}, level={self.f.level}, p={self.p})"


class AtomReport:
    """Outcome of atom_check(): ok, plus one message per violated condition."""

    def __init__(self, violations: list):
        self.violations = violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"AtomReport(ok={self.ok}, violations={self.violations})"


def atom_check(a: Atom) -> AtomReport:
    """Check support, zero mean and the sup-norm bound; exact whenever the data allow."""
    f = a.f
    violations = []
    inside = a.support.mask(f.level)
    if np.any(f.data[~inside] != 0):
        violations.append(f"nonzero values outside {a.support!r}")
    cells = f.data[inside]
    bound = power_of_two(a.support.rank * (1 / as_exponent(a.p)))
    if f.mode == EXACT:
        total = sum(int(v) for v in cells.flat) if cells.dtype == object else int(cells.sum())
        if total != 0:
            violations.append(f"mean on the support is {Fraction(total, cells.size << f.scale)}")
        peak = Fraction(max(abs(int(v)) for v in cells.flat), 1 << f.scale)
        if isinstance(bound, Fraction) and peak > bound:
            violations.append(f"sup norm {peak} exceeds {bound}")
        elif not isinstance(bound, Fraction) and float(peak) > bound * (1 + ATOM_TOLERANCE):
            violations.append(f"sup norm {float(peak)} exceeds {bound}")
    else:
        peak = float(np.abs(cells).max())
        mean = float(cells.mean())
        if abs(mean) > ATOM_TOLERANCE * max(peak, 1.0):
            violations.append(f"mean on the support is {mean}")
        if peak > float(bound) * (1 + ATOM_TOLERANCE):
            violations.append(f"sup norm {peak} exceeds {float(bound)}")
    return AtomReport(violations)


def kernel_difference(m: int, level: int) -> StepFunction:
    """D_(2^(m+1)) - D_(2^m): 2^m on I_(m+1), -2^m on I_m minus I_(m+1), 0 elsewhere."""
    if m + 1 > level:
        raise ResolutionError(f"Kernel difference at rank {m} needs level >= {m + 1}; got {level}")
    return dirichlet_formula(1 << (m + 1), level) - dirichlet_formula(1 << m, level)


class ConstructionSpec:
    """
    Which counterexample to realize: theorem family, exponent, weight, base sequence
    and truncation resolution
    """

    def __init__(
        self,
        theorem: str,
        base_sequence: IndexSequence,
        resolution: int,
        p=None,
        phi: WeightFunction = None,  # type: ignore
        terms: int = None,  # type: ignore
        budget: float = 1.0,
        mode: str = AUTO,
    ):
        """
        t1b and t4b need 0 < p < 1; t2b and t5b work at p = 1 (the default there).
        The weight only enters t1b and t2b.
        """
        theorem = theorem.lower()
        if theorem not in VALID_THEOREMS:
            raise ValueError(f"Unrecognized theorem family: {theorem}")
        if theorem in {T2B, T5B}:
            if p is None:
                p = 1
            if p != 1:
                raise ValueError(f"Family {theorem} works at p = 1. Got p = {p}")
        elif p is None or not 0 < p < 1:
            raise ValueError(f"Family {theorem} needs 0 < p < 1. Got p = {p}")
        if not 1 <= resolution <= MAX_EXACT_LEVEL:
            raise ValueError(f"Resolution must be in 1..{MAX_EXACT_LEVEL}. Got {resolution}")
        if terms is not None and terms < MIN_TERMS:
            raise ValueError(f"A construction needs at least {MIN_TERMS} terms. Got {terms}")
        if mode not in VALID_BUILD_MODES:
            raise ValueError(f"Unrecognized build mode: {mode}")
        self.theorem = theorem
        self.base_sequence = base_sequence
        self.resolution = resolution
        self.p = p
        self.exponent = as_exponent(p)
        self.phi = phi if phi is not None and theorem in WEIGHTED_THEOREMS else WeightFunction.one()
        self.terms = terms
        self.budget = budget
        self.mode = mode

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "p": str(self.exponent),
            "phi": self.phi.describe(),
            "base_sequence": {"kind": self.base_sequence.kind, "values": list(self.base_sequence)},
            "resolution": self.resolution,
            "terms": self.terms,
            "budget": self.budget,
            "mode": self.mode,
        }

    def __repr__(self):
        return (
            f"ConstructionSpec({self.theorem!r}, p={self.p}, phi={self.phi.describe()!r}, "
            f"resolution={self.resolution})"
        )


def select_alphas(spec: ConstructionSpec) -> IndexSequence:
    """Apply the family's selection law to the base sequence at the spec's resolution."""
    logger = logging.getLogger(f"{__name__}:select_alphas")
    if spec.theorem == T1B:
        alphas = select_summable(
            spec.base_sequence, spec.p, spec.phi, spec.budget, resolution=spec.resolution
        )
    elif spec.theorem == T2B:
        alphas = select_summable(
            spec.base_sequence, 1, spec.phi, spec.budget, resolution=spec.resolution
        )
    elif spec.theorem == T4B:
        alphas = select_gap_doubling(spec.base_sequence, spec.p, resolution=spec.resolution)
    else:
        alphas = select_variation_squaring(spec.base_sequence, resolution=spec.resolution)
    wanted = spec.terms if spec.terms is not None else MIN_TERMS
    if len(alphas) < wanted:
        raise SelectionError(
            f"Only {len(alphas)} terms selected for {spec!r}; at least {wanted} needed",
            achieved=alphas,
            requested=wanted,
        )
    if spec.terms is not None:
        alphas = IndexSequence(alphas.kind, alphas.values[: spec.terms])
    logger.info(f"Selected {len(alphas)} terms for {spec.theorem}: {list(alphas)}")
    return alphas


def lambda_coefficient(spec: ConstructionSpec, alpha: int):
    """The scalar in front of the k-th atom."""
    e = expand(alpha)
    gain = 1 / spec.exponent - 1
    if spec.theorem == T1B:
        return _times(spec.phi.sqrt(alpha), power_of_two(-e.gap * gain / 2))
    if spec.theorem == T2B:
        root = dyadic_sqrt(e.variation)
        return _over(spec.phi.sqrt(alpha), root if root is not None else math.sqrt(e.variation))
    if spec.theorem == T4B:
        return power_of_two(-e.gap * gain)
    return settle(Fraction(1, e.variation))


def atom_scale(spec: ConstructionSpec, alpha: int):
    """2^(|alpha|(1/p - 1)), the factor that turns the kernel difference into a p-atom."""
    return power_of_two(expand(alpha).order * (1 / spec.exponent - 1))


def block_coefficient(spec: ConstructionSpec, alpha: int):
    """Closed-form Walsh coefficient of the construction on the block [2^|alpha|, 2^(|alpha|+1))."""
    e = expand(alpha)
    gain = 1 / spec.exponent - 1
    if spec.theorem == T1B:
        return _times(spec.phi.sqrt(alpha), power_of_two((e.order + e.low) * gain / 2))
    if spec.theorem == T2B:
        root = dyadic_sqrt(e.variation)
        return _over(spec.phi.sqrt(alpha), root if root is not None else math.sqrt(e.variation))
    if spec.theorem == T4B:
        return power_of_two(gain * e.low)
    return settle(Fraction(1, e.variation))


def coefficient_oracle(spec: ConstructionSpec, alphas: IndexSequence, j: int):
    """The construction's j-th Walsh coefficient from the closed-form laws alone."""
    if not 0 <= j < 1 << spec.resolution:
        raise ValueError(f"Coefficient index {j} outside 0..2^{spec.resolution} - 1")
    if j == 0:
        return Fraction(0)
    block = j.bit_length() - 1
    for alpha in alphas:
        if expand(alpha).order == block:
            return block_coefficient(spec, alpha)
    return Fraction(0)


def _oracle_vector(spec: ConstructionSpec, alphas: IndexSequence) -> CoefficientVector:
    level = spec.resolution
    coefficients = [block_coefficient(spec, alpha) for alpha in alphas]
    orders = [expand(alpha).order for alpha in alphas]
    if all(isinstance(c, Fraction) for c in coefficients):
        nums, scale = numerators_from(coefficients)
        data = np.zeros(1 << level, dtype=nums.dtype)
        for m, v in zip(orders, nums):
            data[1 << m : 1 << (m + 1)] = v
        return CoefficientVector(level, data, EXACT, scale)
    data = np.zeros(1 << level, dtype=np.float64)
    for m, c in zip(orders, coefficients):
        data[1 << m : 1 << (m + 1)] = float(c)
    return CoefficientVector(level, data, FLOAT)


class RealizedConstruction:
    """
    The truncated martingale F = sum of lambda_k a_k for a ConstructionSpec, with the
    data it was assembled from
    """

    def __init__(
        self,
        spec: ConstructionSpec,
        alphas: IndexSequence,
        F: StepFunction,
        lambdas: list,
        atoms: list,
        oracle_coeffs: CoefficientVector,
    ):
        self.spec = spec
        self.alphas = alphas
        self.F = F
        self.lambdas = lambdas
        self.atoms = atoms
        self.oracle_coeffs = oracle_coeffs

    @property
    def mode(self) -> str:
        return self.F.mode

    @property
    def level(self) -> int:
        return self.F.level

    def martingale(self, n: int) -> StepFunction:
        """F_n, the conditional expectation on rank-n intervals: S_(2^n) F."""
        if not 0 <= n <= self.level:
            raise ValueError(f"Martingale index {n} outside 0..{self.level}")
        return partial_sum(self.F, 1 << n)

    def atomic_p_sum(self):
        """sum |lambda_k|^p, exact when p = 1 and every lambda is dyadic."""
        if self.spec.exponent == 1 and all(isinstance(x, Fraction) for x in self.lambdas):
            return sum((abs(x) for x in self.lambdas), Fraction(0))
        return sum(abs(float(x)) ** float(self.spec.exponent) for x in self.lambdas)

    def tail_bound(self, k: int):
        """
        sum over i >= k of |lambda_i|^p: each kernel-difference atom has H_p norm 1, so
        this bounds ||F - S_(2^|alpha_k|) F||_(H_p)^p.
        """
        tail = self.lambdas[k:]
        if self.spec.exponent == 1 and all(isinstance(x, Fraction) for x in tail):
            return sum((abs(x) for x in tail), Fraction(0))
        return sum(abs(float(x)) ** float(self.spec.exponent) for x in tail)

    def tail_measure(self, k: int):
        """||F - S_(2^|alpha_k|) F||_(H_p)^p, measured."""
        return modulus_hp(self.F, expand(self.alphas[k]).order, self.spec.p).power()

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "alphas": list(self.alphas),
            "lambdas": [_jsonable(x) for x in self.lambdas],
            "block_coefficients": [
                _jsonable(block_coefficient(self.spec, alpha)) for alpha in self.alphas
            ],
            "F": self.F.to_json_dict(),
        }

    def save(self, path: Path):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_json_dict(), f)
        del f

    def __repr__(self):
        return f"RealizedConstruction({self.spec!r}, alphas={list(self.alphas)}, mode={self.mode!r})"


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/2^{x.denominator.bit_length() - 1}"
    return float(x)


def build(spec: ConstructionSpec) -> RealizedConstruction:
    """Select the indices and realize F = sum lambda_k a_k at the spec's resolution."""
    logger = logging.getLogger(f"{__name__}:build")
    alphas = select_alphas(spec)
    level = spec.resolution
    for alpha in alphas:
        if expand(alpha).order + 1 > level:
            raise ResolutionError(f"Index {alpha} needs level > {expand(alpha).order}")
    lambdas = [lambda_coefficient(spec, alpha) for alpha in alphas]
    scales = [atom_scale(spec, alpha) for alpha in alphas]
    weights = [_times(lam, s) for lam, s in zip(lambdas, scales)]
    exact_possible = all(isinstance(w, Fraction) for w in weights)
    if spec.mode == EXACT and not exact_possible:
        raise ValueError(f"Exact mode requested but {spec!r} has non-dyadic coefficients")
    mode = EXACT if exact_possible and spec.mode != FLOAT else FLOAT
    if spec.mode == AUTO and mode == FLOAT:
        logger.info(f"Non-dyadic coefficients: realizing {spec.theorem} in float mode")
    F = StepFunction.constant(0, level, mode)
    atoms = []
    for alpha, w, s in zip(alphas, weights, scales):
        m = expand(alpha).order
        difference = kernel_difference(m, level)
        if mode == FLOAT:
            difference = difference.to_mode(FLOAT)
            w, s = float(w), float(s)
        F = F + difference * w
        atoms.append(Atom(DyadicInterval(m), difference * s, spec.p))
    logger.info(
        f"Realized {spec.theorem} with {len(alphas):,} blocks at level {level} in {mode} mode"
    )
    return RealizedConstruction(spec, alphas, F, lambdas, atoms, _oracle_vector(spec, alphas))


class ProbeResult:
    """Predicted and measured modulus of the tail term II on the annulus at rank <alpha_k>."""

    def __init__(
        self,
        k: int,
        alpha: int,
        predicted=None,
        measured=None,
        kernel_modulus=None,
        matches=None,
        skipped: bool = False,
    ):
        self.k = k
        self.alpha = alpha
        self.predicted = predicted
        self.measured = measured
        self.kernel_modulus = kernel_modulus
        self.matches = matches
        self.skipped = skipped

    def __repr__(self):
        return (
            f"ProbeResult(k={self.k}, alpha={self.alpha}, predicted={self.predicted!r}, "
            f"matches={self.matches}, skipped={self.skipped})"
        )


def proof_probe_II(rc: RealizedConstruction, k: int) -> ProbeResult:
    """
    Evaluate II = (c_k / Phi(alpha_k)) w_(2^|alpha_k|) D_(alpha_k - 2^|alpha_k|) on
    I_<alpha_k> minus I_(<alpha_k>+1), c_k the block coefficient, and compare |II| there with
    2^(|alpha_k|(1/p-1)/2) 2^(<alpha_k>(1/p+1)/2) / Phi^(1/2)(alpha_k).
    """
    logger = logging.getLogger(f"{__name__}:proof_probe_II")
    if rc.spec.theorem != T1B:
        raise ValueError(f"The tail probe applies to t1b constructions. Got {rc.spec.theorem}")
    alpha = rc.alphas[k]
    e = expand(alpha)
    if e.low == e.order:
        logger.warning(f"Skipping probe at k = {k}: alpha = {alpha} has <alpha> = |alpha|")
        return ProbeResult(k, alpha, skipped=True)
    level = rc.level
    spec = rc.spec
    factor = _over(block_coefficient(spec, alpha), spec.phi(alpha))
    kernel = dirichlet_formula(alpha - (1 << e.order), level)
    tail = walsh(1 << e.order, level) * kernel
    tail = tail * factor if isinstance(factor, Fraction) else tail.to_mode(FLOAT) * factor
    ring = annulus(e.low, level).data.astype(bool)
    measured = tail * annulus(e.low, level)
    ring_values = np.abs(tail.data[ring])
    kernel_values = np.abs(kernel.data[ring])
    kernel_modulus = int(kernel_values[0])
    predicted = _over(
        power_of_two(e.order * (1 / spec.exponent - 1) / 2 + e.low * (1 / spec.exponent + 1) / 2),
        spec.phi.sqrt(alpha),
    )
    kernel_ok = bool(np.all(kernel_values == 1 << e.low))
    if tail.mode == EXACT and isinstance(predicted, Fraction):
        values_ok = all(Fraction(int(v), 1 << tail.scale) == predicted for v in ring_values)
    else:
        scaled = ring_values.astype(np.float64)
        if tail.mode == EXACT:
            scaled = np.ldexp(scaled, -tail.scale)
        values_ok = bool(np.allclose(scaled, float(predicted), rtol=ATOM_TOLERANCE, atol=0.0))
    logger.debug(f"Probe k = {k}, alpha = {alpha}: predicted {predicted}, matches {values_ok and kernel_ok}")
    return ProbeResult(k, alpha, predicted, measured, kernel_modulus, values_ok and kernel_ok)


def random_p_atom(p, M: int, level: int, seed: int, denominator_bits: int = 8) -> Atom:
    """
    Random p-atom on I_M: random values on the half of I_M with x_M = 0 (one cell
    forced to +-1), a shuffled copy of their negatives on the other half, all scaled
    by mu(I_M)^(-1/p) = 2^(M/p). Exact when M/p is an integer.
    """
    if not 0 <= M < level:
        raise ResolutionError(f"A random atom on I_{M} needs level > {M}; got {level}")
    rng = np.random.default_rng(seed)
    first = DyadicInterval(M + 1, 0).indices(level)
    second = DyadicInterval(M + 1, 1 << M).indices(level)
    top = 1 << denominator_bits
    nums = rng.integers(-top, top, size=first.size, endpoint=True, dtype=np.int64)
    nums[rng.integers(first.size)] = top if rng.integers(2) else -top
    data = np.zeros(1 << level, dtype=np.int64)
    data[first] = nums
    data[second] = -rng.permutation(nums)
    base = StepFunction(level, data, EXACT, denominator_bits)
    height = power_of_two(M * (1 / as_exponent(p)))
    f = base * height if isinstance(height, Fraction) else base.to_mode(FLOAT) * height
    return Atom(DyadicInterval(M), f, p)


def random_martingale(level: int, seed: int, decay: float = 0.5) -> StepFunction:
    """
    F = c + sum over j < level of 2^(-decay j) r_j g_j with g_j a random function of the
    first j coordinates, so that F - S_(2^k) F shrinks like 2^(-decay k).
    """
    rng = np.random.default_rng(seed)
    ix = np.arange(1 << level, dtype=np.int64)
    values = np.full(1 << level, rng.uniform(-1.0, 1.0))
    for j in range(level):
        g = rng.uniform(-1.0, 1.0, size=1 << j)
        r = 1 - 2 * ((ix >> j) & 1)
        values += 2.0 ** (-decay * j) * g[ix & ((1 << j) - 1)] * r
    return StepFunction(level, values, FLOAT)
