#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Binary expansions of Walsh indices, the functionals |n|, <n>, d(n), V(n), and
index sequences with the selection rules used by the counterexample constructions
"""
from collections.abc import Callable, Sequence
from fractions import Fraction
import functools
import logging
import math

MAX_INDEX = 1 << 63
DEFAULT_RESOLUTION = 30

EXPLICIT = "explicit"
POW2_PLUS_1 = "pow2-plus-1"
POW2_PLUS_HALF = "pow2-plus-half"
ALTERNATING_BITS = "alternating-bits"
VALID_SEQUENCE_KINDS = {EXPLICIT, POW2_PLUS_1, POW2_PLUS_HALF, ALTERNATING_BITS}
FAMILY_ALIASES = {
    "pow2plus1": POW2_PLUS_1,
    "pow2plushalf": POW2_PLUS_HALF,
    "alternating": ALTERNATING_BITS,
}


class SelectionError(ValueError):
    """A selector could not produce the requested number of terms."""

    def __init__(self, message: str, achieved: "IndexSequence", requested: int):
        super().__init__(message)
        self.achieved = achieved
        self.requested = requested


def _check_index(n: int):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"Walsh index must be an int. Got {type(n)}: {n!r}")
    if not 1 <= n < MAX_INDEX:
        raise ValueError(f"Walsh index must satisfy 1 <= n < 2^63. Got {n}")


class IndexExpansion:
    """
    The binary digits n_0, n_1, ... of a positive index and the functionals built on them
    """

    def __init__(self, n: int):
        """
        order |n| is the highest set bit, low <n> the lowest one, gap d = |n| - <n>,
        and variation V(n) = n_0 + sum over k >= 1 of |n_k - n_(k-1)|, taken over the
        zero-padded digit sequence so the final 1 -> 0 drop counts.
        """
        _check_index(n)
        self.n = n
        self.order = n.bit_length() - 1
        self.low = (n & -n).bit_length() - 1
        self.gap = self.order - self.low
        # bit k of n ^ (n >> 1) is n_k xor n_(k+1), one per digit change
        self.variation = (n & 1) + (n ^ (n >> 1)).bit_count()

    @property
    def bits(self) -> tuple:
        """Digits (n_0, ..., n_|n|)."""
        return tuple((self.n >> k) & 1 for k in range(self.order + 1))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "bits": list(self.bits),
            "order": self.order,
            "low": self.low,
            "gap": self.gap,
            "variation": self.variation,
        }

    def __repr__(self):
        return (
            f"IndexExpansion(n={self.n}, order={self.order}, low={self.low}, "
            f"gap={self.gap}, variation={self.variation})"
        )


@functools.lru_cache(maxsize=4096)
def expand(n: int) -> IndexExpansion:
    """Binary expansion and functionals of n >= 1."""
    return IndexExpansion(n)


def reconstruct(bits: Sequence[int]) -> int:
    """Inverse of expand(): n = sum of n_k 2^k."""
    n = 0
    for k, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"Binary digits are 0 or 1. Got n_{k} = {b}")
        n |= b << k
    return n


def order(n: int) -> int:
    return expand(n).order


def low(n: int) -> int:
    return expand(n).low


def gap(n: int) -> int:
    return expand(n).gap


def variation(n: int) -> int:
    return expand(n).variation


def support_ratio_bounds(n: int) -> tuple:
    """
    The interval (2^(d-1), 2^(d+1)) that contains n * mu(supp D_n).

    D_n lives on I_<n> and does not vanish on I_<n> minus I_(<n>+1), while
    2^|n| <= n < 2^(|n|+1); both ends are returned as Fractions.
    """
    d = expand(n).gap
    return Fraction(1 << d, 2), Fraction(1 << (d + 1))


def _family_member(kind: str, k: int) -> int:
    if kind == POW2_PLUS_1:
        return (1 << k) + 1
    if kind == POW2_PLUS_HALF:
        return (1 << k) + (1 << (k - 1))
    # alternating-bits: k ones at even positions, 1, 101, 10101, ...
    return sum(1 << (2 * i) for i in range(k))


class IndexSequence:
    """
    A finite increasing sequence of Walsh indices, tagged with the family it comes from
    """

    def __init__(self, kind: str, values: Sequence[int]):
        """Values must be strictly increasing positive indices."""
        if kind not in VALID_SEQUENCE_KINDS:
            raise ValueError(f"Unrecognized sequence kind: {kind}")
        values = tuple(int(v) for v in values)
        for v in values:
            _check_index(v)
        for a, b in zip(values, values[1:]):
            if b <= a:
                raise ValueError(f"Index sequence must be strictly increasing: {a} then {b}")
        self.kind = kind
        self.values = values

    @classmethod
    def family(cls, kind: str, resolution: int = DEFAULT_RESOLUTION) -> "IndexSequence":
        """
        Every member of a built-in family below 2**resolution.

        pow2-plus-1 is 2^k + 1 (k >= 1), pow2-plus-half is 2^k + 2^(k-1) (k >= 1),
        alternating-bits is 1, 5, 21, 85, ... (k ones at even positions, k >= 1).
        """
        kind = FAMILY_ALIASES.get(kind, kind)
        if kind not in VALID_SEQUENCE_KINDS - {EXPLICIT}:
            raise ValueError(f"Unrecognized index family: {kind}")
        if not 1 <= resolution <= 63:
            raise ValueError(f"Resolution must be in 1..63. Got {resolution}")
        values = []
        k = 1
        while True:
            v = _family_member(kind, k)
            if v >= 1 << resolution:
                break
            values.append(v)
            k += 1
        return cls(kind, values)

    @classmethod
    def explicit(cls, values: Sequence[int]) -> "IndexSequence":
        return cls(EXPLICIT, sorted(set(values)))

    @classmethod
    def parse(cls, name: str, resolution: int = DEFAULT_RESOLUTION) -> "IndexSequence":
        """A family name (or alias) or a comma-separated list of indices."""
        name = name.strip()
        if FAMILY_ALIASES.get(name, name) in VALID_SEQUENCE_KINDS - {EXPLICIT}:
            return cls.family(name, resolution)
        try:
            values = [int(v) for v in name.split(",") if v.strip()]
        except ValueError as err:
            err.add_note(
                f"Expected one of {sorted(FAMILY_ALIASES)} or a comma-separated list of indices"
            )
            raise err
        return cls.explicit(values).bind(resolution)

    def bind(self, resolution: int) -> "IndexSequence":
        """Drop the members that do not fit below 2**resolution."""
        return IndexSequence(self.kind, [v for v in self.values if v < 1 << resolution])

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def max_order(self) -> int:
        if not self.values:
            return -1
        return expand(self.values[-1]).order

    def expansions(self) -> list:
        return [expand(v) for v in self.values]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __eq__(self, other):
        if not isinstance(other, IndexSequence):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"IndexSequence({self.kind!r}, {list(self.values)})"


def summable_term(alpha: int, p: float, phi: Callable) -> float:
    """
    The k-th term of the series a selection must keep summable:
    Phi^(p/2)(alpha) / 2^(d (1-p)/2) for p < 1, and Phi^(1/2)(alpha) / V^(1/2)(alpha) for p = 1.
    """
    e = expand(alpha)
    if p == 1:
        return math.sqrt(float(phi(alpha))) / math.sqrt(e.variation)
    return float(phi(alpha)) ** (p / 2) / 2 ** (e.gap * (1 - p) / 2)


def _check_p(p: float, upper_inclusive: bool = True):
    if not (0 < p < 1 or (upper_inclusive and p == 1)):
        raise ValueError(f"Exponent p must lie in (0, 1]. Got {p}")


def _finish(selected: list, source: IndexSequence, count: int, rule: str) -> IndexSequence:
    logger = logging.getLogger(f"{__name__}:_finish")
    achieved = IndexSequence(EXPLICIT, selected)
    if count is not None:
        if len(selected) < count:
            raise SelectionError(
                f"{rule} selection found {len(selected)} of {count} requested terms "
                f"in {source!r}",
                achieved=achieved,
                requested=count,
            )
        achieved = IndexSequence(EXPLICIT, selected[:count])
    logger.debug(f"{rule} selection: {list(achieved.values)}")
    return achieved


def select_summable(
    ms: IndexSequence,
    p: float,
    phi: Callable,
    budget: float = 1.0,
    count: int = None,  # type: ignore
    resolution: int = None,  # type: ignore
) -> IndexSequence:
    """
    Greedy subsequence with summable_term(alpha_k) <= budget * 2^-k.

    Members with d = 0 are skipped (their blocks carry no divergence) and orders
    must strictly increase so that the coefficient blocks [2^|a|, 2^(|a|+1)) are
    disjoint. The selected terms therefore sum to at most 2 * budget.
    """
    _check_p(p)
    if budget <= 0:
        raise ValueError(f"Budget must be positive. Got {budget}")
    if resolution is not None:
        ms = ms.bind(resolution)
    selected = []
    last_order = -1
    for alpha in ms:
        e = expand(alpha)
        if e.gap == 0 or e.order <= last_order:
            continue
        if summable_term(alpha, p, phi) <= budget * 2.0 ** -len(selected):
            selected.append(alpha)
            last_order = e.order
            if count is not None and len(selected) == count:
                break
    return _finish(selected, ms, count, "summable")


def select_gap_doubling(
    ms: IndexSequence,
    p: float,
    count: int = None,  # type: ignore
    resolution: int = None,  # type: ignore
) -> IndexSequence:
    """
    Subsequence with 2^(2(1/p-1) d(alpha_k)) <= 2^((1/p-1) d(alpha_(k+1))), that is
    d(alpha_(k+1)) >= 2 d(alpha_k), starting from the first member with d >= 1.
    """
    _check_p(p, upper_inclusive=False)
    if resolution is not None:
        ms = ms.bind(resolution)
    selected = []
    last_gap = None
    last_order = -1
    for alpha in ms:
        e = expand(alpha)
        if e.order <= last_order:
            continue
        if last_gap is None:
            if e.gap >= 1:
                selected.append(alpha)
                last_gap, last_order = e.gap, e.order
        elif e.gap >= 2 * last_gap:
            selected.append(alpha)
            last_gap, last_order = e.gap, e.order
        if count is not None and len(selected) == count:
            break
    return _finish(selected, ms, count, "gap-doubling")


def select_variation_squaring(
    ms: IndexSequence,
    count: int = None,  # type: ignore
    resolution: int = None,  # type: ignore
) -> IndexSequence:
    """Subsequence with V(alpha_k)^2 <= V(alpha_(k+1)), starting from the first member."""
    if resolution is not None:
        ms = ms.bind(resolution)
    selected = []
    last_variation = None
    last_order = -1
    for alpha in ms:
        e = expand(alpha)
        if e.order <= last_order:
            continue
        if last_variation is None or e.variation >= last_variation**2:
            selected.append(alpha)
            last_variation, last_order = e.variation, e.order
        if count is not None and len(selected) == count:
            break
    return _finish(selected, ms, count, "variation-squaring")
