#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Functions on the dyadic group, held as step functions on rank-N dyadic intervals

Binary contract of the whole package: the group coordinate x_j of a point is
bit j of the point's integer code (x_0 is the least significant bit). With
this convention the Walsh function w_n takes the value (-1)**popcount(n & ix)
at the point with code ix, and the rank-s dyadic interval I_s(x) is the set of
codes that agree with x on their s lowest bits.
"""
from fractions import Fraction
import functools
import json
import logging
import numpy as np
import operator
from pathlib import Path
import re

EXACT = "exact"
FLOAT = "float"
VALID_MODES = {EXACT, FLOAT}
MAX_EXACT_LEVEL = 30
DEFAULT_SWEEP_LEVEL = 24
INT64_HEADROOM = 1 << 62
RX_DYADIC = re.compile(r"^\s*(-?\d+)\s*(?:/\s*2\^(\d+))?\s*$")


class LevelMismatchError(ValueError):
    """Two objects live at different resolutions where equal ones are required."""


def is_dyadic(q) -> bool:
    """Return True if q is a rational whose reduced denominator is a power of two."""
    try:
        q = Fraction(q)
    except (TypeError, ValueError, OverflowError):
        return False
    d = q.denominator
    return d & (d - 1) == 0


def format_dyadic(q) -> str:
    """Serialize a dyadic rational as 'a/2^b' with b minimal."""
    q = Fraction(q)
    if not is_dyadic(q):
        raise ValueError(f"Not a dyadic rational: {q}")
    return f"{q.numerator}/2^{q.denominator.bit_length() - 1}"


def parse_dyadic(s: str) -> Fraction:
    """Parse 'a/2^b' (or a bare integer) into a Fraction."""
    m = RX_DYADIC.match(s)
    if not m:
        raise ValueError(f"Invalid dyadic rational string: '{s}'")
    numerator, exponent = m.groups()
    return Fraction(int(numerator), 1 << int(exponent or 0))


def peak_magnitude(nums: np.ndarray) -> int:
    if nums.size == 0:
        return 0
    if nums.dtype == object:
        return max(abs(int(v)) for v in nums.flat)
    return int(np.abs(nums).max())


def widen_numerators(nums: np.ndarray, bits: int) -> np.ndarray:
    """Promote int64 numerators to Python ints if growing them by `bits` bits could overflow."""
    if nums.dtype == object:
        return nums
    if bits >= 62 or peak_magnitude(nums) >= INT64_HEADROOM >> bits:
        return nums.astype(object)
    return nums


def _narrow(nums: np.ndarray) -> np.ndarray:
    if nums.dtype == object and peak_magnitude(nums) < INT64_HEADROOM:
        return nums.astype(np.int64)
    return nums


def _shift_up(nums: np.ndarray, bits: int) -> np.ndarray:
    if bits == 0:
        return nums
    return widen_numerators(nums, bits) * (1 << bits)


def _normalize(nums: np.ndarray, scale: int) -> tuple:
    """Reduce numerators over a shared 2**scale denominator to lowest terms."""
    nums = _narrow(nums)
    if scale == 0 or nums.size == 0:
        return nums, scale
    if nums.dtype == object:
        acc = functools.reduce(operator.or_, (abs(int(v)) for v in nums.flat), 0)
    else:
        acc = int(np.bitwise_or.reduce(np.abs(nums)))
    if acc == 0:
        return np.zeros(nums.shape, dtype=np.int64), 0
    shift = min((acc & -acc).bit_length() - 1, scale)
    if shift:
        nums = nums // (1 << shift)
    return nums, scale - shift


def numerators_from(values) -> tuple:
    """Turn ints/Fractions/floats into (numerators, scale); every value must be dyadic."""
    fractions = []
    for v in values:
        if isinstance(v, str):
            q = parse_dyadic(v)
        else:
            q = Fraction(v)
        if not is_dyadic(q):
            raise ValueError(f"Exact mode requires dyadic rationals; got {q}")
        fractions.append(q)
    scale = max((q.denominator.bit_length() - 1 for q in fractions), default=0)
    nums = np.array(
        [q.numerator * ((1 << scale) // q.denominator) for q in fractions],
        dtype=object,
    )
    return _normalize(nums, scale)


def exact_total(nums: np.ndarray, level: int) -> int:
    if nums.dtype != object and peak_magnitude(nums) < INT64_HEADROOM >> max(level, 1):
        return int(nums.sum())
    return sum(int(v) for v in nums.flat)


class DyadicArray:
    """
    2**level values, either exact (integer numerators over one shared power-of-two
    denominator 2**scale) or float (double precision)
    """

    def __init__(self, level: int, data, mode: str = EXACT, scale: int = 0):
        """Wrap raw storage: integer numerators in exact mode, floats in float mode."""
        if isinstance(level, bool) or not isinstance(level, (int, np.integer)):
            raise TypeError(f"Level must be an integer. Got {type(level)}: {level!r}")
        if level < 0:
            raise ValueError(f"Level must be non-negative. Got {level}")
        if mode not in VALID_MODES:
            raise ValueError(f"Unrecognized mode: {mode}")
        arr = np.asarray(data)
        if arr.shape != (1 << int(level),):
            raise ValueError(
                f"Expected {1 << int(level)} values for level {level}, got shape {arr.shape}"
            )
        if mode == EXACT:
            if level > MAX_EXACT_LEVEL:
                raise ValueError(
                    f"Exact mode is limited to level {MAX_EXACT_LEVEL}; got {level}"
                )
            if arr.dtype.kind == "f":
                raise TypeError(
                    "Exact mode stores integer numerators; use from_values() for floats"
                )
            if arr.dtype == object:
                if any(not isinstance(v, (int, np.integer)) for v in arr.flat):
                    raise TypeError(
                        "Exact mode stores integer numerators; use from_values() for fractions"
                    )
                nums = np.array([int(v) for v in arr.flat], dtype=object)
            else:
                nums = arr.astype(np.int64)
            scale = int(scale)
            if scale < 0:
                nums, scale = _shift_up(nums, -scale), 0
            nums, scale = _normalize(nums, scale)
        else:
            nums = np.array(arr, dtype=np.float64)
            if scale:
                nums = np.ldexp(nums, -int(scale))
            scale = 0
        nums.setflags(write=False)
        self.level = int(level)
        self.mode = mode
        self.scale = scale
        self._data = nums

    @classmethod
    def from_values(cls, values, level: int = None, mode: str = None):  # type: ignore
        """
        Build from a sequence of ints, Fractions, 'a/2^b' strings or floats.

        Without an explicit mode, floats select float mode and everything else exact mode.
        """
        values = list(values)
        if level is None:
            level = len(values).bit_length() - 1
        if len(values) != 1 << level:
            raise ValueError(
                f"Expected {1 << level} values for level {level}, got {len(values)}"
            )
        if mode is None:
            mode = (
                FLOAT
                if any(isinstance(v, (float, np.floating)) for v in values)
                else EXACT
            )
        if mode == FLOAT:
            return cls(
                level,
                [float(parse_dyadic(v)) if isinstance(v, str) else float(v) for v in values],
                FLOAT,
            )
        nums, scale = numerators_from(values)
        return cls(level, nums, EXACT, scale)

    @classmethod
    def constant(cls, c, level: int = 0, mode: str = None):  # type: ignore
        """The constant function c at the given level."""
        base = cls.from_values([c], 0, mode)
        return cls(level, np.repeat(base.data, 1 << level), base.mode, base.scale)

    @property
    def size(self) -> int:
        """Number of stored values (2**level)."""
        return 1 << self.level

    @property
    def data(self) -> np.ndarray:
        """Read-only raw storage: numerators over 2**scale (exact) or floats."""
        return self._data

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    def value_at(self, ix: int):
        """Value at position ix: a Fraction in exact mode, a float in float mode."""
        if not 0 <= ix < self.size:
            raise IndexError(f"Index {ix} outside 0..{self.size - 1}")
        if self.mode == EXACT:
            return Fraction(int(self._data[ix]), 1 << self.scale)
        return float(self._data[ix])

    def exact_values(self) -> list:
        """All values as Fractions (float values convert exactly)."""
        if self.mode == EXACT:
            denominator = 1 << self.scale
            return [Fraction(int(v), denominator) for v in self._data.flat]
        return [Fraction(float(v)) for v in self._data.flat]

    def tolist(self) -> list:
        if self.mode == EXACT:
            return self.exact_values()
        return [float(v) for v in self._data.flat]

    def as_float(self) -> np.ndarray:
        """Values as a fresh float64 array."""
        if self.mode == FLOAT:
            return np.array(self._data, dtype=np.float64)
        return np.ldexp(self._data.astype(np.float64), -self.scale)

    def to_mode(self, mode: str):
        """Convert between exact and float storage; float values convert exactly."""
        if mode not in VALID_MODES:
            raise ValueError(f"Unrecognized mode: {mode}")
        if mode == self.mode:
            return self
        if mode == FLOAT:
            return type(self)(self.level, self.as_float(), FLOAT)
        nums, scale = numerators_from(float(v) for v in self._data.flat)
        return type(self)(self.level, nums, EXACT, scale)

    def _at_level(self, level: int):
        if level != self.level:
            raise LevelMismatchError(
                f"{type(self).__name__} at level {self.level} cannot be used at level {level}"
            )
        return self

    def _operand(self, other):
        if isinstance(other, DyadicArray):
            return other
        if isinstance(other, (bool, np.bool_)):
            return NotImplemented
        if isinstance(other, (int, np.integer, Fraction)):
            if not is_dyadic(other):
                raise ValueError(
                    f"Exact arithmetic needs dyadic rationals; got {other}. Use a float instead."
                )
            return type(self).from_values([other], 0, EXACT)
        if isinstance(other, (float, np.floating)):
            return type(self).from_values([float(other)], 0, FLOAT)
        return NotImplemented

    def _leveled(self, other) -> tuple:
        level = max(self.level, other.level)
        return self._at_level_broadcast(level), self._lift(other, level)

    def _aligned(self, other) -> tuple:
        a, b = self._leveled(other)
        if a.mode == FLOAT or b.mode == FLOAT:
            return a.level, FLOAT, a.as_float(), b.as_float(), 0
        s = max(a.scale, b.scale)
        return a.level, EXACT, _shift_up(a._data, s - a.scale), _shift_up(b._data, s - b.scale), s

    def _lift(self, other, level: int):
        if not isinstance(other, type(self)):
            if other.level != 0:
                raise TypeError(
                    f"Cannot combine {type(self).__name__} with {type(other).__name__}"
                )
            other = type(self)(other.level, other._data, other.mode, other.scale)
        return other._at_level_broadcast(level)

    def _at_level_broadcast(self, level: int):
        if self.level == level or self.level != 0:
            return self._at_level(level)
        return type(self)(level, np.repeat(self._data, 1 << level), self.mode, self.scale)

    def __add__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        level, mode, a, b, s = self._aligned(other)
        if mode == EXACT:
            a, b = widen_numerators(a, 1), widen_numerators(b, 1)
        return type(self)(level, a + b, mode, s)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.level, -widen_numerators(self._data, 1), self.mode, self.scale)

    def __sub__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        a, b = self._leveled(other)
        if a.mode == FLOAT or b.mode == FLOAT:
            return type(self)(a.level, a.as_float() * b.as_float(), FLOAT)
        x = widen_numerators(a._data, peak_magnitude(b._data).bit_length())
        y = b._data.astype(object) if x.dtype == object else b._data
        return type(self)(a.level, x * y, EXACT, a.scale + b.scale)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, np.integer, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("Division of a step function by zero")
            inverse = 1 / Fraction(other)
            if is_dyadic(inverse):
                return self * inverse
            return type(self)(self.level, self.as_float() / float(other), FLOAT)
        if isinstance(other, (float, np.floating)):
            return type(self)(self.level, self.as_float() / float(other), FLOAT)
        return NotImplemented

    def __abs__(self):
        return type(self)(self.level, np.abs(self._data), self.mode, self.scale)

    def __eq__(self, other):
        if not isinstance(other, DyadicArray):
            return NotImplemented
        if (self.level, self.mode, self.scale) != (other.level, other.mode, other.scale):
            return False
        if self.mode == EXACT and object in (self._data.dtype, other._data.dtype):
            return all(int(x) == int(y) for x, y in zip(self._data.flat, other._data.flat))
        return bool(np.array_equal(self._data, other._data))

    __hash__ = None  # type: ignore

    def allclose(self, other, rel_tol: float = 1e-12, abs_tol: float = 0.0) -> bool:
        """Sup-norm comparison relative to the larger of the two sup norms."""
        a, b = self._leveled(other)
        x, y = a.as_float(), b.as_float()
        peak = max(float(np.abs(x).max(initial=0.0)), float(np.abs(y).max(initial=0.0)))
        return float(np.abs(x - y).max(initial=0.0)) <= rel_tol * peak + abs_tol

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self._data))

    def to_json_dict(self) -> dict:
        """Dictionary in the StepFunction file format."""
        if self.mode == EXACT:
            values = [format_dyadic(q) for q in self.exact_values()]
        else:
            values = [float(v) for v in self._data.flat]
        return {"level": self.level, "mode": self.mode, "values": values}

    @classmethod
    def from_json_dict(cls, d: dict):
        """Inverse of to_json_dict()."""
        try:
            level = d["level"]
            mode = d["mode"]
            values = d["values"]
        except KeyError as err:
            err.add_note(f"Step function JSON must have level, mode and values keys: {sorted(d)}")
            raise err
        if mode not in VALID_MODES:
            raise ValueError(f"Unrecognized mode in step function JSON: {mode}")
        if mode == EXACT:
            return cls.from_values([parse_dyadic(str(v)) for v in values], level, EXACT)
        return cls.from_values([float(v) for v in values], level, FLOAT)

    def save(self, path: Path):
        """Write the StepFunction JSON file format to path."""
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_json_dict(), f)
        del f

    @classmethod
    def load(cls, path: Path):
        """Read a file written by save()."""
        with open(path, "r", encoding="utf-8") as f:
            d = json.load(f)
        del f
        try:
            return cls.from_json_dict(d)
        except (ValueError, TypeError) as err:
            err.add_note(f"While reading step function file {path}")
            raise err

    def __repr__(self):
        return f"{type(self).__name__}(level={self.level}, mode={self.mode!r}, scale={self.scale})"


class Point:
    """
    A point of the dyadic group known to its first `level` coordinates
    """

    def __init__(self, coords: int, level: int):
        """Coordinate x_j is bit j of coords."""
        if level < 0:
            raise ValueError(f"Level must be non-negative. Got {level}")
        if not 0 <= coords < 1 << level:
            raise ValueError(f"Point code {coords} does not fit in {level} coordinates")
        self.coords = int(coords)
        self.level = int(level)

    @classmethod
    def from_coordinates(cls, coordinates) -> "Point":
        """Build from the coordinate sequence (x_0, x_1, ...)."""
        coordinates = list(coordinates)
        coords = 0
        for j, x in enumerate(coordinates):
            if x not in (0, 1):
                raise ValueError(f"Group coordinates are 0 or 1. Got x_{j} = {x}")
            coords |= x << j
        return cls(coords, len(coordinates))

    def coordinate(self, j: int) -> int:
        if not 0 <= j < self.level:
            raise IndexError(f"Coordinate {j} outside 0..{self.level - 1}")
        return (self.coords >> j) & 1

    @property
    def is_identity(self) -> bool:
        return self.coords == 0

    def __add__(self, other: "Point") -> "Point":
        if not isinstance(other, Point):
            return NotImplemented
        if other.level != self.level:
            raise LevelMismatchError(
                f"Cannot add points at levels {self.level} and {other.level}"
            )
        return Point(self.coords ^ other.coords, self.level)

    __sub__ = __add__

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return (self.coords, self.level) == (other.coords, other.level)

    def __hash__(self):
        return hash((self.coords, self.level))

    def __repr__(self):
        return f"Point({self.coords}, {self.level})"


class DyadicInterval:
    """
    The rank-s interval of points whose first s coordinates equal those of `prefix`
    """

    def __init__(self, rank: int, prefix: int = 0):
        """rank s fixes coordinates x_0..x_{s-1} to the bits of prefix."""
        if rank < 0:
            raise ValueError(f"Rank must be non-negative. Got {rank}")
        if not 0 <= prefix < 1 << rank:
            raise ValueError(f"Prefix {prefix} does not fit in rank {rank}")
        self.rank = int(rank)
        self.prefix = int(prefix)

    @classmethod
    def around(cls, x: Point, rank: int) -> "DyadicInterval":
        """I_rank(x)."""
        if rank > x.level:
            raise ValueError(f"Rank {rank} exceeds the point's level {x.level}")
        return cls(rank, x.coords & ((1 << rank) - 1))

    @property
    def measure(self) -> Fraction:
        return Fraction(1, 1 << self.rank)

    def contains(self, ix: int) -> bool:
        return (ix & ((1 << self.rank) - 1)) == self.prefix

    def indices(self, level: int) -> np.ndarray:
        """Codes of the level-`level` cells that make up the interval."""
        if self.rank > level:
            raise ValueError(f"Interval rank {self.rank} exceeds level {level}")
        return self.prefix + (np.arange(1 << (level - self.rank), dtype=np.int64) << self.rank)

    def mask(self, level: int) -> np.ndarray:
        if self.rank > level:
            raise ValueError(f"Interval rank {self.rank} exceeds level {level}")
        ix = np.arange(1 << level, dtype=np.int64)
        return (ix & ((1 << self.rank) - 1)) == self.prefix

    def __eq__(self, other):
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        return (self.rank, self.prefix) == (other.rank, other.prefix)

    def __hash__(self):
        return hash((self.rank, self.prefix))

    def __repr__(self):
        return f"DyadicInterval(rank={self.rank}, prefix={self.prefix})"


class StepFunction(DyadicArray):
    """
    A function on the dyadic group, constant on every rank-`level` dyadic interval;
    the value at position ix belongs to the interval whose prefix is ix
    """

    def _at_level(self, level: int):
        if level < self.level:
            raise LevelMismatchError(
                f"Cannot coarsen level {self.level} implicitly to level {level}"
            )
        return refine(self, level)

    def __call__(self, x: Point):
        """Evaluate at a point known to at least `level` coordinates."""
        if x.level < self.level:
            raise LevelMismatchError(
                f"Point known to {x.level} coordinates cannot resolve level {self.level}"
            )
        return self.value_at(x.coords & (self.size - 1))

    def integrate(self):
        return integrate(self)

    def translate(self, h):
        return translate(self, h)

    def refine(self, level: int) -> "StepFunction":
        return refine(self, level)

    def coarsen_average(self, level: int) -> "StepFunction":
        return coarsen_average(self, level)


def integrate(f: StepFunction):
    """Haar integral over G: exact Fraction in exact mode, float otherwise."""
    if f.mode == EXACT:
        return Fraction(exact_total(f.data, f.level), 1 << (f.scale + f.level))
    return float(f.data.mean())


def translate(f: StepFunction, h) -> StepFunction:
    """x -> f(x + h); h is a Point at the function's level (or its integer code)."""
    if isinstance(h, Point):
        if h.level != f.level:
            raise LevelMismatchError(
                f"Translation by a level-{h.level} point of a level-{f.level} function"
            )
        h = h.coords
    elif not 0 <= h < f.size:
        raise ValueError(f"Translation code {h} outside 0..{f.size - 1}")
    ix = np.arange(f.size, dtype=np.int64) ^ h
    return StepFunction(f.level, f.data[ix], f.mode, f.scale)


def refine(f: StepFunction, level: int) -> StepFunction:
    """The same function viewed at a finer resolution."""
    if level < f.level:
        raise ValueError(f"Cannot refine level {f.level} to a coarser level {level}")
    if level == f.level:
        return f
    return StepFunction(level, np.tile(f.data, 1 << (level - f.level)), f.mode, f.scale)


def coarsen_average(f: StepFunction, level: int) -> StepFunction:
    """Replace each rank-`level` block by its mean: the conditional expectation E_level f."""
    if not 0 <= level <= f.level:
        raise ValueError(f"Cannot coarsen level {f.level} to level {level}")
    if level == f.level:
        return f
    drop = f.level - level
    if f.mode == EXACT:
        sums = widen_numerators(f.data, drop).reshape(1 << drop, 1 << level).sum(axis=0)
        return StepFunction(level, sums, EXACT, f.scale + drop)
    return StepFunction(level, f.data.reshape(1 << drop, 1 << level).mean(axis=0), FLOAT)


def add(f: StepFunction, g) -> StepFunction:
    return f + g


def subtract(f: StepFunction, g) -> StepFunction:
    return f - g


def scale(f: StepFunction, c) -> StepFunction:
    """c * f; dyadic c keeps exact mode, float c switches to float mode."""
    return f * c


def multiply(f: StepFunction, g: StepFunction) -> StepFunction:
    return f * g


def absolute(f: StepFunction) -> StepFunction:
    return abs(f)


def maximum(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise maximum."""
    level, mode, a, b, s = f._aligned(g)
    if mode == EXACT and (a.dtype == object or b.dtype == object):
        a, b = a.astype(object), b.astype(object)
    return StepFunction(level, np.maximum(a, b), mode, s)


def indicator(interval: DyadicInterval, level: int, mode: str = EXACT) -> StepFunction:
    """1 on the interval, 0 elsewhere, at the given resolution."""
    if interval.rank > level:
        raise ValueError(f"Interval rank {interval.rank} exceeds level {level}")
    f = StepFunction(level, interval.mask(level).astype(np.int64), EXACT)
    return f.to_mode(mode)


def annulus(s: int, level: int, mode: str = EXACT) -> StepFunction:
    """Indicator of I_s minus I_{s+1}, the s-th piece of the complement decomposition of I_M."""
    if not 0 <= s < level:
        raise ValueError(f"Annulus {s} needs 0 <= s < level ({level})")
    return indicator(DyadicInterval(s), level, mode) - indicator(
        DyadicInterval(s + 1), level, mode
    )


def restrict(f: StepFunction, interval: DyadicInterval) -> StepFunction:
    """f on the interval, 0 elsewhere."""
    return f * indicator(interval, f.level)


def mean_on(f: StepFunction, interval: DyadicInterval):
    """Average of f over the interval (exact in exact mode)."""
    if interval.rank > f.level:
        f = refine(f, interval.rank)
    cells = f.data[interval.indices(f.level)]
    if f.mode == EXACT:
        return Fraction(exact_total(cells, f.level), len(cells) << f.scale)
    return float(cells.mean())


def random_step(
    level: int,
    seed: int,
    value_range: tuple = (-1, 1),
    mode: str = FLOAT,
    denominator_bits: int = 8,
) -> StepFunction:
    """
    Random step function, deterministic given the seed.

    Float mode draws uniformly from value_range; exact mode draws from the grid of
    multiples of 2**-denominator_bits inside value_range (whose ends must be dyadic).
    """
    logger = logging.getLogger(f"{__name__}:random_step")
    low, high = value_range
    if high < low:
        raise ValueError(f"Empty value range {value_range}")
    rng = np.random.default_rng(seed)
    if mode == FLOAT:
        values = rng.uniform(float(low), float(high), size=1 << level)
        return StepFunction(level, values, FLOAT)
    if mode != EXACT:
        raise ValueError(f"Unrecognized mode: {mode}")
    lo = Fraction(low) * (1 << denominator_bits)
    hi = Fraction(high) * (1 << denominator_bits)
    if lo.denominator != 1 or hi.denominator != 1:
        raise ValueError(
            f"Exact random values need range ends on the 2^-{denominator_bits} grid; got {value_range}"
        )
    nums = rng.integers(int(lo), int(hi), size=1 << level, endpoint=True, dtype=np.int64)
    logger.debug(f"Drew {1 << level} exact values with seed {seed}")
    return StepFunction(level, nums, EXACT, denominator_bits)
