#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Experiments: Lebesgue-constant sweeps, kernel and norm cross-checks, boundedness
sweeps, divergence and convergence runs, each returning an ExperimentReport
"""
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
import logging
import math
import numpy as np

from walsh_paley.dyadic_index import IndexSequence, expand, support_ratio_bounds
from walsh_paley.group_fn import EXACT, FLOAT, StepFunction, random_step
from walsh_paley.martingale import (
    T1B,
    T2B,
    T4B,
    T5B,
    ConstructionSpec,
    RealizedConstruction,
    as_exponent,
    block_coefficient,
    build,
    power_of_two,
    proof_probe_II,
    random_p_atom,
)
from walsh_paley.norms import (
    hp_norm,
    hp_norm_rows,
    lp_norm,
    best_approx_bounds,
    modulus_hp,
    modulus_lp,
    weak_lp_norm,
)
from walsh_paley.reports import ExperimentReport
from walsh_paley.transform import (
    dirichlet_formula,
    fwht,
    kernel_support_measure,
    lebesgue_constant,
    lebesgue_constant_closed,
    partial_sum,
    walsh,
)

MAX_EXHAUSTIVE_N = 1 << 12
MAX_SAMPLED_EXPONENT = 20
SLOPE_TOLERANCE = 0.15
FLOAT_TOLERANCE = 1e-12
DEFAULT_SEED = 0


class BoundViolationError(RuntimeError):
    """A computed quantity broke an inequality the theory guarantees."""

    def __init__(self, message: str, row: dict = None):  # type: ignore
        super().__init__(message)
        self.row = row


def bound_factor(n: int, p):
    """B(n): 2^(d(n)(1/p - 1)) for p < 1, V(n) at p = 1."""
    exponent = as_exponent(p)
    if not 0 < exponent <= 1:
        raise ValueError(f"Boundedness factors need 0 < p <= 1. Got {p}")
    e = expand(n)
    if exponent == 1:
        return e.variation
    return power_of_two(e.gap * (1 / exponent - 1))


def partial_sum_ratio(F: StepFunction, n: int, p) -> float:
    """||S_n F||_(H_p) / (B(n) ||F||_(H_p))."""
    whole = float(hp_norm(F, p))
    if whole == 0:
        raise ValueError("Partial sum ratios need a nonzero function")
    return float(hp_norm(partial_sum(F, n), p)) / (float(bound_factor(n, p)) * whole)


def _lebesgue_row(n: int) -> dict:
    e = expand(n)
    constant = lebesgue_constant(n)
    return {
        "n": n,
        "variation": e.variation,
        "gap": e.gap,
        "lebesgue": constant,
        "ratio": constant / e.variation,
        "closed_form_agrees": constant == lebesgue_constant_closed(n),
    }


def lebesgue_sweep(
    max_n: int = MAX_EXHAUSTIVE_N,
    sample_count: int = 0,
    seed: int = DEFAULT_SEED,
    max_exponent: int = MAX_SAMPLED_EXPONENT,
    workers: int = 1,
) -> ExperimentReport:
    """
    L(n) = ||D_n||_1 for every n in 1..max_n plus sample_count seeded random n below
    2^max_exponent, each checked exactly against V(n)/8 <= L(n) <= V(n).
    """
    logger = logging.getLogger(f"{__name__}:lebesgue_sweep")
    if not 1 <= max_n <= MAX_EXHAUSTIVE_N:
        raise ValueError(f"Exhaustive sweeps cover 1 <= max_n <= {MAX_EXHAUSTIVE_N}. Got {max_n}")
    if sample_count < 0:
        raise ValueError(f"Sample count must be non-negative. Got {sample_count}")
    if sample_count and not max_n < 1 << max_exponent <= 1 << MAX_SAMPLED_EXPONENT:
        raise ValueError(
            f"Sampled indices need max_n < 2^max_exponent <= 2^{MAX_SAMPLED_EXPONENT}. "
            f"Got max_exponent {max_exponent}"
        )
    ns = list(range(1, max_n + 1))
    if sample_count:
        rng = np.random.default_rng(seed)
        drawn = rng.integers(max_n + 1, 1 << max_exponent, size=sample_count)
        ns.extend(sorted({int(n) for n in drawn}))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_lebesgue_row, ns, chunksize=64))
    else:
        rows = [_lebesgue_row(n) for n in ns]
    report = ExperimentReport(
        "lebesgue",
        {"max_n": max_n, "sample_count": sample_count, "seed": seed, "max_exponent": max_exponent},
        ["n", "variation", "gap", "lebesgue", "ratio", "closed_form_agrees"],
    )
    for row in rows:
        if not Fraction(1, 8) <= row["ratio"] <= 1 or not row["closed_form_agrees"]:
            raise BoundViolationError(
                f"Lebesgue constant of {row['n']} breaks V/8 <= L <= V: {row['lebesgue']}", row
            )
        report.add_row(row)
    report.sort_rows("n")
    lowest = min(report.rows, key=lambda row: row["ratio"])
    highest = max(report.rows, key=lambda row: row["ratio"])
    report.summary = {
        "rows": len(report.rows),
        "min_ratio": lowest["ratio"],
        "min_ratio_n": lowest["n"],
        "max_ratio": highest["ratio"],
        "max_ratio_n": highest["n"],
    }
    logger.info(
        f"Checked {len(report.rows):,} Lebesgue constants; ratios in "
        f"[{float(lowest['ratio']):.4f}, {float(highest['ratio']):.4f}]")
    return report


def support_sweep(max_n: int = MAX_EXHAUSTIVE_N) -> ExperimentReport:
    """
    mu(supp D_n) between 2^(-<n>-1) and 2^(-<n>), and n mu(supp D_n) between
    2^(d(n)-1) and 2^(d(n)+1), exactly for n in 1..max_n.
    """
    logger = logging.getLogger(f"{__name__}:support_sweep")
    if max_n < 1:
        raise ValueError(f"Support sweeps need max_n >= 1. Got {max_n}")
    report = ExperimentReport(
        "support",
        {"max_n": max_n},
        ["n", "low", "gap", "measure", "scaled_measure", "lower", "upper"],
    )
    for n in range(1, max_n + 1):
        e = expand(n)
        measure = kernel_support_measure(n)
        lower, upper = support_ratio_bounds(n)
        row = {
            "n": n,
            "low": e.low,
            "gap": e.gap,
            "measure": measure,
            "scaled_measure": n * measure,
            "lower": lower,
            "upper": upper,
        }
        if not Fraction(1, 2 << e.low) <= measure <= Fraction(1, 1 << e.low):
            raise BoundViolationError(f"Support of D_{n} has measure {measure}", row)
        if not lower <= n * measure <= upper:
            raise BoundViolationError(f"n mu(supp D_n) = {n * measure} outside [{lower}, {upper}]", row)
        report.add_row(row)
    report.summary = {
        "rows": len(report.rows),
        "max_scaled_over_upper": max(row["scaled_measure"] / row["upper"] for row in report.rows),
    }
    logger.info(f"Checked kernel supports for n <= {max_n:,}")
    return report


def kernel_check(
    max_n: int = 1 << 10, level: int = 10, pairs: int = 100, seed: int = DEFAULT_SEED
) -> ExperimentReport:
    """
    The plain sum of Walsh functions against the closed kernel formula for every
    n <= max_n, and D_(j+2^m) = D_(2^m) + w_(2^m) D_j for random pairs j < 2^m.
    """
    logger = logging.getLogger(f"{__name__}:kernel_check")
    if not 1 <= max_n <= 1 << level:
        raise ValueError(f"Kernel checks need 1 <= max_n <= 2^{level}. Got {max_n}")
    if level < 2 and pairs:
        raise ValueError(f"Recursion pairs need level >= 2. Got {level}")
    report = ExperimentReport(
        "kernel",
        {"max_n": max_n, "level": level, "pairs": pairs, "seed": seed},
        ["check", "n", "j", "agrees"],
    )
    running = np.zeros(1 << level, dtype=np.int64)
    for n in range(1, max_n + 1):
        running += walsh(n - 1, level).data
        agrees = bool(np.array_equal(running, dirichlet_formula(n, level).data))
        row = {"check": "path", "n": n, "j": None, "agrees": agrees}
        if not agrees:
            raise BoundViolationError(f"Kernel formula disagrees with the direct sum at n = {n}", row)
        report.add_row(row)
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        m = int(rng.integers(1, level))
        j = int(rng.integers(1, 1 << m))
        lhs = dirichlet_formula(j + (1 << m), level)
        rhs = dirichlet_formula(1 << m, level) + walsh(1 << m, level) * dirichlet_formula(j, level)
        row = {"check": "recursion", "n": 1 << m, "j": j, "agrees": lhs == rhs}
        if not row["agrees"]:
            raise BoundViolationError(f"Kernel recursion fails for j = {j}, 2^m = {1 << m}", row)
        report.add_row(row)
    report.summary = {"rows": len(report.rows), "all_agree": True}
    logger.info(f"Kernel paths agree for n <= {max_n:,}; {pairs} recursion pairs hold")
    return report


def modulus_check(
    trials: int = 200, level: int = 8, ps: tuple = (1, 2), seed: int = DEFAULT_SEED
) -> ExperimentReport:
    """
    omega_p(2^-n, f) / 2 <= ||f - S_(2^n) f||_p <= omega_p(2^-n, f) for seeded random
    step functions; exact at p = 1.
    """
    logger = logging.getLogger(f"{__name__}:modulus_check")
    report = ExperimentReport(
        "modulus",
        {"trials": trials, "level": level, "ps": list(ps), "seed": seed},
        ["trial", "p", "n", "modulus", "error", "holds"],
    )
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        trial_seed = int(rng.integers(0, 1 << 31))
        n = int(rng.integers(0, level + 1))
        for p in ps:
            mode = EXACT if p == 1 else FLOAT
            f = random_step(level, trial_seed, mode=mode)
            omega = modulus_lp(f, n, p).value
            error = best_approx_bounds(f, n, p)[1]
            if mode == EXACT:
                holds = omega / 2 <= error <= omega
            else:
                slack = FLOAT_TOLERANCE * max(omega, 1.0)
                holds = omega / 2 - slack <= error <= omega + slack
            row = {"trial": trial, "p": p, "n": n, "modulus": omega, "error": error, "holds": holds}
            if not holds:
                raise BoundViolationError(f"Modulus sandwich fails in trial {trial} at p = {p}", row)
            report.add_row(row)
    report.summary = {"rows": len(report.rows), "all_hold": True}
    logger.info(f"Modulus sandwich holds in {trials:,} trials for p in {list(ps)}")
    return report


def oracle_check(target) -> ExperimentReport:
    """fwht(F) of a construction (spec or realized) against its closed-form block coefficients."""
    logger = logging.getLogger(f"{__name__}:oracle_check")
    rc = target if isinstance(target, RealizedConstruction) else build(target)
    spec = rc.spec
    measured = fwht(rc.F)
    oracle = rc.oracle_coeffs
    difference = measured - oracle
    exact = difference.is_exact
    if exact:
        deviation = np.abs(difference.data) != 0
    else:
        peak = float(np.abs(oracle.as_float()).max(initial=0.0))
        deviation = np.abs(difference.as_float()) > FLOAT_TOLERANCE * peak
    report = ExperimentReport(
        "oracle",
        spec.to_json_dict(),
        ["k", "alpha", "order", "predicted", "first", "last", "agrees"],
    )
    for k, alpha in enumerate(rc.alphas):
        m = expand(alpha).order
        row = {
            "k": k,
            "alpha": alpha,
            "order": m,
            "predicted": block_coefficient(spec, alpha),
            "first": measured[1 << m],
            "last": measured[(1 << (m + 1)) - 1],
            "agrees": not bool(np.any(deviation[1 << m : 1 << (m + 1)])),
        }
        report.add_row(row)
    everywhere = not bool(np.any(deviation))
    report.summary = {"exact": exact, "all_agree": everywhere, "blocks": len(rc.alphas)}
    if not everywhere:
        raise BoundViolationError(
            f"Walsh coefficients of {spec!r} differ from the closed form at "
            f"{int(np.count_nonzero(deviation)):,} indices",
            report.summary,
        )
    logger.info(f"Coefficient laws hold for {spec!r} ({'exact' if exact else 'float'})")
    return report


def _fitted_slope(ks: list, values: list) -> float:
    x = np.array(ks, dtype=np.float64)
    y = np.log2(np.array(values, dtype=np.float64))
    return float(np.polyfit(x, y, 1)[0])


def _check_growth(report: ExperimentReport):
    """Measured values from k = 2 on must not decrease."""
    tail = [float(row["measured"]) for row in report.rows[2:]]
    for k, (before, after) in enumerate(zip(tail, tail[1:]), start=3):
        if after < before * (1 - FLOAT_TOLERANCE):
            raise BoundViolationError(
                f"Measured values of {report.experiment} decrease at k = {k}", report.rows[k]
            )


def _growth_summary(report: ExperimentReport) -> dict:
    ks = [row["k"] for row in report.rows]
    measured = [float(row["measured"]) for row in report.rows]
    shapes = [float(row["shape"]) for row in report.rows]
    summary = {"terms": len(ks)}
    if all(v > 0 for v in measured) and len(set(shapes)) > 1:
        slope_measured = _fitted_slope(ks, measured)
        slope_predicted = _fitted_slope(ks, shapes)
        summary["slope_measured"] = slope_measured
        summary["slope_predicted"] = slope_predicted
        summary["slope_ratio"] = slope_measured / slope_predicted
    ratios = [float(row["ratio"]) for row in report.rows[2:]]
    summary["min_ratio"] = min(ratios) if ratios else None
    summary["reproduced"] = (
        "slope_ratio" in summary
        and abs(summary["slope_ratio"] - 1) <= SLOPE_TOLERANCE
        and bool(ratios)
        and min(ratios) > 0
    )
    return summary


def _weighted_rows(rc: RealizedConstruction, report: ExperimentReport):
    logger = logging.getLogger(f"{__name__}:_weighted_rows")
    spec = rc.spec
    p = spec.exponent
    for k, alpha in enumerate(rc.alphas):
        e = expand(alpha)
        phi = spec.phi(alpha)
        normalized = partial_sum(rc.F, alpha) / phi
        row = {"k": k, "alpha": alpha, "gap": e.gap, "variation": e.variation}
        if spec.theorem == T1B:
            row["measured"] = weak_lp_norm(normalized, spec.p).power()
            row["shape"] = 2.0 ** (e.gap * float(1 / p - 1) * float(p) / 2) / float(phi) ** (float(p) / 2)
            probe = proof_probe_II(rc, k)
            row["probe_predicted"] = probe.predicted
            row["probe_matches"] = probe.matches
            if not probe.skipped and not probe.matches:
                raise BoundViolationError(f"Tail term modulus differs from prediction at k = {k}", row)
        else:
            row["measured"] = lp_norm(normalized, 1).value
            row["shape"] = math.sqrt(e.variation) / math.sqrt(float(phi))
        row["ratio"] = float(row["measured"]) / row["shape"]
        logger.debug(f"Row {row}")
        report.add_row(row)
    _check_growth(report)
    report.summary = _growth_summary(report)


def _floor_rows(rc: RealizedConstruction, report: ExperimentReport):
    spec = rc.spec
    p = spec.exponent
    for k, alpha in enumerate(rc.alphas):
        e = expand(alpha)
        remainder = rc.F - partial_sum(rc.F, alpha)
        row = {"k": k, "alpha": alpha, "gap": e.gap, "variation": e.variation}
        if spec.theorem == T4B:
            row["measured"] = weak_lp_norm(remainder, spec.p).value
            row["floor_term"] = floor_term(alpha, p)
            row["implied_constant"] = row["measured"] + row["floor_term"]
        else:
            row["measured"] = lp_norm(remainder, 1).value
            row["floor"] = Fraction(1, 8) - Fraction(2, e.variation)
            if row["measured"] < row["floor"]:
                raise BoundViolationError(
                    f"||F - S_alpha F||_1 = {row['measured']} is below 1/8 - 2/V at k = {k}", row
                )
        row["tail_measured"] = rc.tail_measure(k)
        row["tail_bound"] = rc.tail_bound(k)
        if float(row["tail_measured"]) > float(row["tail_bound"]) * (1 + FLOAT_TOLERANCE):
            raise BoundViolationError(f"Tail of F above its atomic bound at k = {k}", row)
        report.add_row(row)
    measured = [row["measured"] for row in report.rows]
    summary = {"terms": len(measured), "min_measured": min(measured)}
    if spec.theorem == T4B:
        summary.update(_implied_floor(report.rows))
        if min(float(v) for v in measured) <= 0 or float(summary["floor"]) <= 0:
            raise BoundViolationError(
                "Weak errors along the selected indices do not stay above a positive floor", summary
            )
    else:
        summary["min_excess"] = min(row["measured"] - row["floor"] for row in report.rows)
    report.summary = summary


def floor_term(n: int, p):
    """2 / 2^((1/p - 1) d(n)), the part subtracted from the constant in c - 2/2^((1/p - 1) d(n))."""
    exponent = as_exponent(p)
    return 2 / power_of_two(expand(n).gap * (1 / exponent - 1))


def _implied_floor(rows: list) -> dict:
    """
    c_k = measured_k + floor_term_k for every row; the floor is min c_k less the last
    floor term, positive when the errors stay away from zero and the gaps grow.
    """
    constants = [row["implied_constant"] for row in rows]
    smallest = min(constants, key=float)
    return {
        "min_implied_constant": smallest,
        "floor": smallest - rows[-1]["floor_term"],
    }


def divergence_run(target) -> ExperimentReport:
    """
    Partial sums of a counterexample along its own indices alpha_k: growing normalized
    norms for t1b and t2b, errors kept off zero for t4b and t5b. Takes a
    ConstructionSpec or an already realized construction.
    """
    logger = logging.getLogger(f"{__name__}:divergence_run")
    rc = target if isinstance(target, RealizedConstruction) else build(target)
    theorem = rc.spec.theorem
    base = ["k", "alpha", "gap", "variation", "measured"]
    if theorem == T1B:
        columns = base + ["shape", "ratio", "probe_predicted", "probe_matches"]
    elif theorem == T2B:
        columns = base + ["shape", "ratio"]
    elif theorem == T4B:
        columns = base + ["floor_term", "implied_constant", "tail_measured", "tail_bound"]
    else:
        columns = base + ["floor", "tail_measured", "tail_bound"]
    report = ExperimentReport(f"diverge-{theorem}", rc.spec.to_json_dict(), columns)
    if theorem in {T1B, T2B}:
        _weighted_rows(rc, report)
    else:
        _floor_rows(rc, report)
    logger.info(f"{theorem} run over {len(report.rows)} indices: {report.summary}")
    return report


def convergence_run(
    target,
    sequence: IndexSequence,
    p,
    ratio_ceiling: float = None,  # type: ignore
    expect_decay: bool = False,
) -> ExperimentReport:
    """
    ||S_n F - F||_(H_p) against B(n) omega_(H_p)(2^-k, F), 2^k < n <= 2^(k+1), along a
    sequence. The target is a StepFunction, a ConstructionSpec or a realized construction.
    """
    logger = logging.getLogger(f"{__name__}:convergence_run")
    exponent = as_exponent(p)
    if not 0 < exponent <= 1:
        raise ValueError(f"Convergence runs need 0 < p <= 1. Got {p}")
    rc = None
    if isinstance(target, ConstructionSpec):
        target = build(target)
    if isinstance(target, RealizedConstruction):
        rc = target
        F = rc.F
    else:
        F = target
    floor_rows = rc is not None and rc.spec.theorem == T4B
    values = [n for n in sequence if n >= 2]
    if not values:
        raise ValueError(f"Convergence runs need indices n >= 2. Got {list(sequence)}")
    if values[-1] > F.size:
        raise ValueError(f"Index {values[-1]} not resolvable at level {F.level}")
    whole = float(hp_norm(F, p))
    columns = ["n", "k", "gap", "variation", "error", "modulus", "bound", "ratio", "weak_error", "partial_ratio"]
    if floor_rows:
        columns += ["floor_term", "implied_constant"]
    config = {"level": F.level, "p": str(exponent), "sequence": sequence.kind, "indices": values}
    if rc is not None:
        config["construction"] = rc.spec.to_json_dict()
    report = ExperimentReport("converge", config, columns)
    for n in values:
        e = expand(n)
        k = (n - 1).bit_length() - 1
        S = partial_sum(F, n)
        error = hp_norm(S - F, p).value
        omega = modulus_hp(F, k, p).value
        bound = float(bound_factor(n, p)) * float(omega)
        row = {
            "n": n,
            "k": k,
            "gap": e.gap,
            "variation": e.variation,
            "error": error,
            "modulus": omega,
            "bound": bound,
            "ratio": float(error) / bound if bound > 0 else 0.0,
            "weak_error": weak_lp_norm(S - F, p).value,
            "partial_ratio": float(hp_norm(S, p)) / whole if whole > 0 else 0.0,
        }
        if floor_rows:
            row["floor_term"] = floor_term(n, exponent)
            row["implied_constant"] = row["weak_error"] + row["floor_term"]
        if bound == 0 and float(error) > 0:
            raise BoundViolationError(f"Nonzero error with vanishing modulus at n = {n}", row)
        logger.debug(f"Row {row}")
        report.add_row(row)
    errors = [float(row["error"]) for row in report.rows]
    summary = {
        "initial_error": report.rows[0]["error"],
        "final_error": report.rows[-1]["error"],
        "decayed": errors[-1] < errors[0] / 4,
        "monotone": all(b <= a * (1 + FLOAT_TOLERANCE) for a, b in zip(errors, errors[1:])),
        "max_ratio": max(row["ratio"] for row in report.rows),
        "max_partial_ratio": max(row["partial_ratio"] for row in report.rows),
    }
    if floor_rows:
        summary["min_weak_error"] = min(row["weak_error"] for row in report.rows)
        summary["min_implied_constant"] = min((row["implied_constant"] for row in report.rows), key=float)
    report.summary = summary
    if ratio_ceiling is not None and summary["max_ratio"] > ratio_ceiling:
        raise BoundViolationError(
            f"Error to modulus ratio {summary['max_ratio']} above ceiling {ratio_ceiling}", summary
        )
    if expect_decay and not (summary["decayed"] and summary["monotone"]):
        raise BoundViolationError("Partial sum errors do not decay along the sequence", summary)
    logger.info(f"Convergence run over {len(values)} indices: {summary}")
    return report


def _walsh_rows(count: int, level: int) -> np.ndarray:
    ks = np.arange(count, dtype=np.int64)[:, None]
    ix = np.arange(1 << level, dtype=np.int64)[None, :]
    return 1.0 - 2.0 * (np.bitwise_count(ks & ix) & 1)


def boundedness_sweep(
    p,
    max_n: int = 1 << 10,
    atom_trials: int = 100,
    seed: int = DEFAULT_SEED,
    assert_no_growth: bool = True,
) -> ExperimentReport:
    """
    Normalized ratios ||S_n F||_(H_p) / (B(n) ||F||_(H_p)) for n in 1..max_n over random
    p-atoms (p < 1) or random step functions (p = 1); one row per n with the worst trial.
    """
    logger = logging.getLogger(f"{__name__}:boundedness_sweep")
    exponent = as_exponent(p)
    if not 0 < exponent <= 1:
        raise ValueError(f"Boundedness sweeps need 0 < p <= 1. Got {p}")
    if max_n < 2 or atom_trials < 1:
        raise ValueError(f"Boundedness sweeps need max_n >= 2 and trials >= 1. Got {max_n}, {atom_trials}")
    level = max_n.bit_length()
    factors = np.array([float(bound_factor(n, exponent)) for n in range(1, max_n + 1)])
    basis = _walsh_rows(max_n, level)
    rng = np.random.default_rng(seed)
    worst = np.zeros(max_n)
    total = np.zeros(max_n)
    for trial in range(atom_trials):
        trial_seed = int(rng.integers(0, 1 << 31))
        if exponent < 1:
            M = int(rng.integers(0, level))
            F = random_p_atom(exponent, M, level, trial_seed).f
        else:
            F = random_step(level, trial_seed)
        coefficients = fwht(F.to_mode(FLOAT)).data[:max_n]
        partials = np.cumsum(coefficients[:, None] * basis, axis=0)
        ratios = hp_norm_rows(partials, p) / (factors * float(hp_norm(F, p)))
        np.maximum(worst, ratios, out=worst)
        total += ratios
    report = ExperimentReport(
        "bounded",
        {"p": str(exponent), "max_n": max_n, "atom_trials": atom_trials, "seed": seed},
        ["n", "gap", "variation", "bound", "max_ratio", "mean_ratio"],
    )
    for n in range(1, max_n + 1):
        e = expand(n)
        report.add_row(
            {
                "n": n,
                "gap": e.gap,
                "variation": e.variation,
                "bound": bound_factor(n, exponent),
                "max_ratio": float(worst[n - 1]),
                "mean_ratio": float(total[n - 1] / atom_trials),
            }
        )
    first_half = float(worst[: max_n // 2].max())
    blocks = [
        float(worst[(1 << j) - 1 : min(1 << (j + 1), max_n + 1) - 1].max())
        for j in range(level)
        if 1 << j <= max_n
    ]
    growth = max(blocks) > 2 * first_half
    report.summary = {
        "empirical_sup": float(worst.max()),
        "first_half_max": first_half,
        "block_maxima": blocks,
        "no_growth": not growth,
    }
    if assert_no_growth and growth:
        raise BoundViolationError(
            f"Normalized ratios grow: block maximum {max(blocks)} above twice {first_half}",
            report.summary,
        )
    logger.info(f"Boundedness sweep at p = {exponent}: sup ratio {report.summary['empirical_sup']:.4f}")
    return report
