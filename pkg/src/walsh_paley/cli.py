#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Command dispatch shared by the scripts: run one command, emit its output, map the
outcome to an exit code
"""
from airtight.cli import configure_commandline
from fractions import Fraction
import json
import logging
from pathlib import Path
from slugify import slugify
import sys

from walsh_paley.dyadic_index import (
    ALTERNATING_BITS,
    POW2_PLUS_1,
    POW2_PLUS_HALF,
    IndexSequence,
    expand,
)
from walsh_paley.experiments import (
    BoundViolationError,
    boundedness_sweep,
    convergence_run,
    divergence_run,
    kernel_check,
    lebesgue_sweep,
    oracle_check,
    support_sweep,
    modulus_check,
)
from walsh_paley.group_fn import EXACT, FLOAT, StepFunction, format_dyadic
from walsh_paley.martingale import (
    AUTO,
    T1B,
    T4B,
    VALID_THEOREMS,
    ConstructionSpec,
    WeightFunction,
    as_exponent,
    build,
    random_martingale,
)
from walsh_paley.norms import (
    best_approx_bounds,
    hp_norm,
    linf_norm,
    lp_norm,
    modulus_hp,
    modulus_lp,
    weak_lp_norm,
)
from walsh_paley.reports import ExperimentReport, default_reports_path, serialize_value
from walsh_paley.transform import dirichlet, fwht

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
DEFAULT_LOG_LEVEL = logging.INFO
DEFAULT_CONSTRUCTION_LEVEL = 18
DEFAULT_DIVERGENCE_LEVEL = 20
DEFAULT_CONVERGENCE_LEVEL = 16
NORM_OPS = ("lp", "weak", "hp", "linf", "mod")
DEFAULT_NORM_OPS = "lp,weak,hp,linf"
# --out names the construction file, so their reports go to standard output
CONSTRUCTION_OUT_COMMANDS = {"construct"}

LOGGING_ARGUMENTS = [
    [
        "-l",
        "--loglevel",
        "NOTSET",
        "desired logging level ("
        + "case-insensitive string: DEBUG, INFO, WARNING, or ERROR",
        False,
    ],
    ["-v", "--verbose", True, "verbose output (logging level == INFO)", False],
    [
        "-w",
        "--veryverbose",
        False,
        "very verbose output (logging level == DEBUG)",
        False,
    ],
]


def output_arguments(default_format: str = "csv") -> list:
    """--format, --out and --save rows for a script's OPTIONAL_ARGUMENTS."""
    return [
        ["-f", "--format", default_format, "report format: csv or json", False],
        [
            "-o",
            "--out",
            "",
            "write to this file (or into this directory) instead of standard output",
            False,
        ],
        [
            "-s",
            "--save",
            False,
            "also write the report into WALSH_PALEY_REPORTS_PATH (or the user data directory)",
            False,
        ],
    ]


CONSTRUCTION_ARGUMENTS = [
    ["-t", "--theorem", T1B, f"counterexample family: {', '.join(sorted(VALID_THEOREMS))}", False],
    ["-p", "--p", "", "exponent, e.g. 1/2 (t2b and t5b work at 1)", False],
    ["-g", "--phi", "one", "weight function: one, log2 or power:<gamma>", False],
    [
        "-q",
        "--seq",
        "",
        "base sequence: pow2plus1, pow2plushalf, alternating, or comma-separated indices",
        False,
    ],
    ["-L", "--level", 0, "resolution N (0 for the command default)", False],
    ["-k", "--terms", 0, "number of terms to keep (0 for all selected)", False],
    ["-b", "--budget", 1.0, "summability budget for t1b and t2b selections", False],
    ["-m", "--mode", AUTO, "arithmetic: auto, exact or float", False],
]


def parse_commandline(
    optional_arguments: list,
    positional_arguments: list,
    default_log_level: int = DEFAULT_LOG_LEVEL,
) -> dict:
    """airtight's configure_commandline, with argparse's usage exit reported as 1."""
    try:
        return configure_commandline(optional_arguments, positional_arguments, default_log_level)
    except SystemExit as err:
        if err.code == 2:
            raise SystemExit(EXIT_USAGE) from err
        raise err


def parse_exponent(text, default=None):
    """'1/2', '0.5', '1' -> Fraction; empty -> default."""
    if text is None or str(text).strip() == "":
        return default
    try:
        return as_exponent(Fraction(str(text).strip()))
    except ZeroDivisionError as err:
        raise ValueError(f"Invalid exponent: '{text}'") from err


def _level(kwargs: dict, default: int) -> int:
    level = int(kwargs.get("level") or 0)
    return level if level > 0 else default


def _mode(kwargs: dict, f: StepFunction) -> StepFunction:
    mode = kwargs.get("mode") or AUTO
    if mode == AUTO:
        return f
    return f.to_mode(mode)


def _default_sequence(theorem: str) -> str:
    return POW2_PLUS_1 if theorem in {T1B, T4B} else ALTERNATING_BITS


def construction_spec(default_level: int = DEFAULT_CONSTRUCTION_LEVEL, **kwargs) -> ConstructionSpec:
    """A ConstructionSpec from command line values."""
    theorem = (kwargs.get("theorem") or T1B).lower()
    if theorem not in VALID_THEOREMS:
        raise ValueError(f"Unrecognized theorem family: {theorem}")
    level = _level(kwargs, default_level)
    base = IndexSequence.parse(kwargs.get("seq") or _default_sequence(theorem), level)
    return ConstructionSpec(
        theorem,
        base,
        level,
        p=parse_exponent(kwargs.get("p")),
        phi=WeightFunction.parse(kwargs.get("phi") or "one"),
        terms=int(kwargs.get("terms") or 0) or None,
        budget=float(kwargs.get("budget") or 1.0),
        mode=kwargs.get("mode") or AUTO,
    )


def run_index(**kwargs):
    """Binary expansion and functionals of one index."""
    e = expand(int(kwargs["n"]))
    if kwargs.get("format") == "csv":
        report = ExperimentReport(
            "index", {"n": e.n}, ["n", "order", "low", "gap", "variation", "bits"]
        )
        report.add_row(e.as_dict())
        return report
    return e.as_dict()


def run_kernel(**kwargs):
    """D_n tabulated at a level (default |n| + 1)."""
    n = int(kwargs["n"])
    level = _level(kwargs, expand(n).order + 1)
    kernel = _mode(kwargs, dirichlet(n, level))
    if kwargs.get("format") == "json":
        if kernel.mode == FLOAT:
            values = kernel.tolist()
        else:
            values = [int(v) if v.denominator == 1 else format_dyadic(v) for v in kernel.tolist()]
        return {"n": n, "level": level, "values": values}
    report = ExperimentReport("kernel", {"n": n, "level": level}, ["ix", "value"])
    for ix, v in enumerate(kernel.tolist()):
        report.add_row({"ix": ix, "value": v})
    report.summary = {"lebesgue": lp_norm(kernel, 1).value}
    return report


def run_check(**kwargs) -> ExperimentReport:
    """One of the exact cross-checks: support, kernel or modulus."""
    name = kwargs.get("name") or "support"
    seed = int(kwargs.get("seed") or 0)
    max_n = int(kwargs.get("max_n") or 0)
    if name == "support":
        return support_sweep(max_n or 1 << 12)
    if name == "kernel":
        level = _level(kwargs, 10)
        return kernel_check(max_n or 1 << level, level, int(kwargs.get("trials") or 100), seed)
    if name == "modulus":
        return modulus_check(int(kwargs.get("trials") or 200), _level(kwargs, 8), (1, 2), seed)
    raise ValueError(f"Unrecognized check: {name}. Use support, kernel or modulus")


def run_lebesgue(**kwargs) -> ExperimentReport:
    return lebesgue_sweep(
        int(kwargs.get("max_n") or 1 << 12),
        int(kwargs.get("sample") or 0),
        int(kwargs.get("seed") or 0),
        int(kwargs.get("max_exponent") or 20),
        int(kwargs.get("workers") or 1),
    )


def run_fwht(**kwargs) -> ExperimentReport:
    """Walsh coefficients of a step function file."""
    path = Path(kwargs["path"]).expanduser().resolve()
    f = _mode(kwargs, StepFunction.load(path))
    coefficients = fwht(f)
    report = ExperimentReport(
        "fwht", {"path": path.name, "level": f.level, "mode": f.mode}, ["k", "coefficient"]
    )
    for k, c in enumerate(coefficients.tolist()):
        report.add_row({"k": k, "coefficient": c})
    energy = coefficients.energy()
    square = lp_norm(f, 2).value ** 2
    report.summary = {
        "energy": energy,
        "parseval_agrees": energy == (f * f).integrate()
        if f.mode == EXACT
        else abs(energy - square) <= 1e-12 * max(square, 1.0),
    }
    return report


def parse_ops(text: str) -> list:
    """'lp,weak,hp,mod:3' -> [("lp", None), ("weak", None), ("hp", None), ("mod", 3)]."""
    ops = []
    for item in (text or DEFAULT_NORM_OPS).split(","):
        name, _, rank = item.strip().lower().partition(":")
        if name not in NORM_OPS:
            raise ValueError(f"Unrecognized norm operation: '{item}'. Use {', '.join(NORM_OPS)}")
        if name == "mod":
            if not rank.strip().isdigit():
                raise ValueError(f"Modulus operations need a rank, e.g. mod:3. Got '{item}'")
            ops.append((name, int(rank)))
        elif rank:
            raise ValueError(f"Only mod takes a rank. Got '{item}'")
        else:
            ops.append((name, None))
    return ops


def run_norms(**kwargs) -> ExperimentReport:
    """Selected norms and moduli of continuity of a step function file."""
    path = Path(kwargs["in"]).expanduser().resolve()
    ops = parse_ops(kwargs.get("ops"))
    f = _mode(kwargs, StepFunction.load(path))
    p = parse_exponent(kwargs.get("p"), Fraction(1))
    report = ExperimentReport(
        "norms",
        {"path": path.name, "p": p, "ops": ",".join(n if r is None else f"{n}:{r}" for n, r in ops)},
        ["name", "rank", "value"],
    )
    for name, rank in ops:
        if name == "lp":
            report.add_row({"name": "lp", "rank": None, "value": lp_norm(f, p).value})
        elif name == "weak":
            report.add_row({"name": "weak_lp", "rank": None, "value": weak_lp_norm(f, p).value})
        elif name == "hp":
            report.add_row({"name": "hp", "rank": None, "value": hp_norm(f, p).value})
        elif name == "linf":
            report.add_row({"name": "linf", "rank": None, "value": linf_norm(f)})
        else:
            report.add_row({"name": "modulus_hp", "rank": rank, "value": modulus_hp(f, rank, p).value})
            if p >= 1:
                lower, upper = best_approx_bounds(f, rank, p)
                report.add_row({"name": "modulus_lp", "rank": rank, "value": modulus_lp(f, rank, p).value})
                report.add_row({"name": "best_approx_lower", "rank": rank, "value": lower})
                report.add_row({"name": "best_approx_upper", "rank": rank, "value": upper})
    return report


def _construction_filename(spec: ConstructionSpec) -> str:
    return f"{slugify(f'{spec.theorem} p {spec.exponent} level {spec.resolution}')}.json"


def run_construct(**kwargs) -> ExperimentReport:
    """
    Realize a counterexample, save it to --out (a file, or a directory to name it in)
    and check its coefficients against the closed form.
    """
    logger = logging.getLogger(f"{__name__}:run_construct")
    rc = build(construction_spec(**kwargs))
    if kwargs.get("out"):
        path = Path(kwargs["out"]).expanduser().resolve()
        if path.is_dir():
            path = path / _construction_filename(rc.spec)
        path.parent.mkdir(parents=True, exist_ok=True)
        rc.save(path)
        logger.info(f"Wrote {rc!r} to {path}")
    return oracle_check(rc)


def run_diverge(**kwargs) -> ExperimentReport:
    return divergence_run(construction_spec(DEFAULT_DIVERGENCE_LEVEL, **kwargs))


def run_converge(**kwargs) -> ExperimentReport:
    """Partial sum errors of a random martingale (or of a t4b construction) along a sequence."""
    target = (kwargs.get("target") or "random").lower()
    level = _level(kwargs, DEFAULT_CONVERGENCE_LEVEL)
    ceiling = float(kwargs.get("ceiling") or 0) or None
    if target == "random":
        p = parse_exponent(kwargs.get("p"), Fraction(1))
        sequence = IndexSequence.parse(kwargs.get("seq") or POW2_PLUS_HALF, level)
        F = random_martingale(level, int(kwargs.get("seed") or 0), float(kwargs.get("decay") or 0.5))
        return convergence_run(
            F, sequence, p, ceiling, expect_decay=sequence.kind == POW2_PLUS_HALF
        )
    if target != T4B:
        raise ValueError(f"Unrecognized convergence target: {target}. Use random or {T4B}")
    spec_kwargs = dict(kwargs, theorem=T4B, p=kwargs.get("p") or "1/2", level=level)
    rc = build(construction_spec(**spec_kwargs))
    return convergence_run(rc, rc.alphas, rc.spec.exponent, ceiling)


def run_bounded(**kwargs) -> ExperimentReport:
    return boundedness_sweep(
        parse_exponent(kwargs.get("p"), Fraction(1)),
        int(kwargs.get("max_n") or 1 << 10),
        int(kwargs.get("trials") or 100),
        int(kwargs.get("seed") or 0),
        assert_no_growth=not kwargs.get("nogrowthcheck"),
    )


COMMANDS = {
    "index": run_index,
    "kernel": run_kernel,
    "check": run_check,
    "lebesgue": run_lebesgue,
    "fwht": run_fwht,
    "norms": run_norms,
    "construct": run_construct,
    "diverge": run_diverge,
    "converge": run_converge,
    "bounded": run_bounded,
}


def _document_filename(command: str, document: dict) -> str:
    label = " ".join(str(v) for v in (command, document.get("n")) if v is not None)
    return f"{slugify(label)}.json"


def emit(command: str, output, fmt: str = "csv", out: str = "", save: bool = False):
    """Write a report (or a plain JSON document) to a file or standard output."""
    logger = logging.getLogger(f"{__name__}:emit")
    if fmt not in {"csv", "json"}:
        raise ValueError(f"Unrecognized report format: {fmt}")
    destinations = []
    if out:
        destinations.append(Path(out).expanduser().resolve())
    if save:
        saved = default_reports_path()
        saved.mkdir(parents=True, exist_ok=True)
        destinations.append(saved)
    if isinstance(output, ExperimentReport):
        if not out:
            sys.stdout.write(output.render(fmt))
        for path in destinations:
            output.write(path, fmt)
        return
    text = json.dumps(serialize_value(output), indent=2) + "\n"
    if not out:
        sys.stdout.write(text)
    for path in destinations:
        if path.is_dir():
            path = path / _document_filename(command, output)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        del f
        logger.info(f"Wrote {command} output to {path}")


def cli_main(command: str, **kwargs) -> int:
    """
    Run a command with parsed command line values; 0 on success, 2 when a computed
    quantity breaks a bound the theory guarantees, 1 on usage errors.
    """
    logger = logging.getLogger(f"{__name__}:cli_main")
    if command not in COMMANDS:
        logger.error(f"Unrecognized command: {command}. Use one of {sorted(COMMANDS)}")
        return EXIT_USAGE
    fmt = kwargs.get("format") or "csv"
    try:
        output = COMMANDS[command](**kwargs)
        out = "" if command in CONSTRUCTION_OUT_COMMANDS else kwargs.get("out") or ""
        emit(command, output, fmt, out, bool(kwargs.get("save")))
    except BoundViolationError as err:
        logger.error(f"Bound violated: {err}")
        if err.row is not None:
            logger.error(f"Offending data: {serialize_value(err.row)}")
        return EXIT_VIOLATION
    except (ValueError, TypeError, KeyError, FileNotFoundError) as err:
        logger.error(f"{command}: {err}")
        return EXIT_USAGE
    return EXIT_OK
