#
# This file is part of walsh_paley
# Licensed under the AGPL-3.0; see LICENSE.txt file.
#

"""
Experiment reports: rows, configuration echo and summary, written as CSV or JSON
"""
import csv
from fractions import Fraction
import io
import json
import logging
from os import environ
from pathlib import Path
from platformdirs import user_data_path
from slugify import slugify

from walsh_paley.group_fn import format_dyadic, is_dyadic

CSV_SCHEMA_VERSION = 1
VALID_FORMATS = {"csv", "json"}
REPORTS_PATH_VARIABLE = "WALSH_PALEY_REPORTS_PATH"


def default_reports_path() -> Path:
    """WALSH_PALEY_REPORTS_PATH if set, else a per-user data directory."""
    configured = environ.get(REPORTS_PATH_VARIABLE, "")
    if configured:
        return Path(configured).expanduser().resolve()
    return user_data_path("walsh_paley") / "reports"


def serialize_value(v):
    """JSON/CSV-safe form: dyadic Fractions as 'a/2^b', other Fractions as 'a/b'."""
    if isinstance(v, Fraction):
        if is_dyadic(v):
            return format_dyadic(v)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, (list, tuple)):
        return [serialize_value(x) for x in v]
    if isinstance(v, dict):
        return {k: serialize_value(x) for k, x in v.items()}
    if hasattr(v, "item"):
        return serialize_value(v.item())
    return str(v)


def _csv_cell(v) -> str:
    v = serialize_value(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    return str(v)


class ExperimentReport:
    """
    Rows of one experiment run, with the configuration that produced them
    """

    def __init__(
        self,
        experiment: str,
        config: dict,
        columns: list,
        rows: list = None,  # type: ignore
        summary: dict = None,  # type: ignore
    ):
        """Every row is a dict keyed by the names in `columns`."""
        self.experiment = experiment
        self.config = dict(config)
        self.columns = list(columns)
        self.rows = []
        self.summary = dict(summary) if summary else {}
        for row in rows or []:
            self.add_row(row)

    def add_row(self, row: dict):
        missing = [c for c in self.columns if c not in row]
        if missing:
            raise ValueError(f"Report row for {self.experiment} lacks columns {missing}")
        self.rows.append(row)

    def sort_rows(self, key: str):
        self.rows.sort(key=lambda row: row[key])

    @property
    def header(self) -> str:
        return f"# walsh_paley {self.experiment} schema v{CSV_SCHEMA_VERSION}"

    def to_csv(self) -> str:
        """Header comment line, column names, one line per row."""
        out = io.StringIO()
        out.write(self.header + "\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(row[c]) for c in self.columns])
        return out.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "schema": CSV_SCHEMA_VERSION,
            "config": serialize_value(self.config),
            "columns": self.columns,
            "rows": [{c: serialize_value(row[c]) for c in self.columns} for row in self.rows],
            "summary": serialize_value(self.summary),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def render(self, fmt: str = "csv") -> str:
        if fmt not in VALID_FORMATS:
            raise ValueError(f"Unrecognized report format: {fmt}")
        return self.to_csv() if fmt == "csv" else self.to_json() + "\n"

    def report_filename(self, fmt: str = "csv") -> str:
        """Slugified experiment id and configuration, e.g. 'lebesgue-max-n-4096.csv'."""
        parts = [self.experiment]
        for k in sorted(self.config):
            v = serialize_value(self.config[k])
            if v is None or isinstance(v, (list, dict)):
                continue
            parts.append(f"{k} {v}")
        return f"{slugify(' '.join(parts))}.{fmt}"

    def write(self, path: Path, fmt: str = None):  # type: ignore
        """Write to a file; a directory gets report_filename() inside it."""
        logger = logging.getLogger(f"{__name__}:ExperimentReport.write")
        path = Path(path)
        if fmt is None:
            fmt = path.suffix.lstrip(".") if path.suffix.lstrip(".") in VALID_FORMATS else "csv"
        if path.is_dir():
            path = path / self.report_filename(fmt)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.render(fmt))
        del f
        logger.info(f"Wrote {len(self.rows):,} {self.experiment} rows to {path}")
        return path

    def __repr__(self):
        return f"ExperimentReport({self.experiment!r}, rows={len(self.rows)})"
