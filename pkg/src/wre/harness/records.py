"""Run records and their on-disk formats (CSV rows, JSON metadata)."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from wre import __version__

# schema id -> column names; documented in schemas/README.md
SCHEMAS: dict[str, tuple[str, ...]] = {
    "wre.mpd.v1": (
        "schema", "seed", "alpha", "beta", "ratio", "sigma_sq", "bin", "left", "right",
        "center", "empirical_density", "analytic_density", "analytic_bin_density",
    ),
    "wre.dominant.v1": (
        "schema", "seed", "alpha", "beta", "gamma", "trials", "mean_lambda_max",
        "std_lambda_max", "sem_lambda_max", "analytic", "lambda_plus", "rel_error",
        "in_regime", "mean_lambda0_normalized", "analytic_normalized",
    ),
    "wre.lambda0_sweep.v1": (
        "schema", "seed", "alpha", "beta", "point", "gamma_normalized", "gamma",
        "lambda0", "entropy", "analytic", "analytic_inf", "bulk_edge", "crossover",
    ),
    "wre.lambda0_curve.v1": (
        "schema", "alpha", "beta", "lambda0", "analytic", "reference",
    ),
    "wre.gap_sweep.v1": (
        "schema", "seed", "alpha", "beta", "point", "gamma_normalized", "gamma",
        "lambda0", "gap", "analytic", "analytic_inf", "bulk_edge", "crossover",
    ),
    "wre.renyi_sweep.v1": (
        "schema", "seed", "alpha", "beta", "matrix", "gamma", "degree", "lambda0",
        "renyi", "analytic", "crossover",
    ),
    "wre.qft.v1": (
        "schema", "seed", "alpha", "beta", "n_qubits", "state", "gamma", "lambda0_before",
        "entropy_before", "lambda0_after", "entropy_after", "analytic", "crossover",
    ),
    "wre.grover.v1": (
        "schema", "alpha", "beta", "ciphertext", "iteration", "checkpoint", "label",
        "lambda0", "entropy", "analytic", "success_probability", "predicted_success",
    ),
    "wre.adiabatic.v1": (
        "schema", "alpha", "beta", "n_qubits", "s", "energy", "gap", "degenerate",
        "lambda0", "entropy", "analytic",
    ),
    "wre.prime.v1": (
        "schema", "alpha", "beta", "n_qubits", "partition", "lambda0", "entropy",
        "schmidt_rank", "alpha_rank", "analytic", "residual",
    ),
}

# entropy-valued columns that get a base-2 display twin under --log2
ENTROPY_COLUMNS = {
    "entropy", "analytic", "analytic_inf", "renyi", "entropy_before", "entropy_after",
    "reference",
}


@dataclass
class Table:
    name: str
    schema: str
    rows: list[dict] = field(default_factory=list)

    @property
    def columns(self) -> tuple[str, ...]:
        return SCHEMAS[self.schema]

    def add(self, **values) -> None:
        values.setdefault("schema", self.schema)
        unknown = set(values) - set(self.columns)
        if unknown:
            raise KeyError(f"columns {sorted(unknown)} not in schema {self.schema}")
        self.rows.append(values)


@dataclass
class RunRecord:
    command: str
    config: dict
    tables: list[Table] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    deviations: list[str] = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)
    wall_clock: float = 0.0

    def table(self, name: str) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)

    def metadata(self) -> dict:
        return {
            "tool": "wre",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "config_hash": config_hash(self.config),
            "seed": self.config.get("seed"),
            "schemas": {t.name: t.schema for t in self.tables},
            "summary": self.summary,
            "thresholds": self.thresholds,
            "deviations": self.deviations,
            "wall_clock_seconds": round(self.wall_clock, 3),
        }


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def write_csv(table: Table, path: Path, log2: bool = False) -> None:
    columns = list(table.columns)
    extra = [c for c in columns if c in ENTROPY_COLUMNS] if log2 else []
    header = columns + [f"{c}_log2" for c in extra]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in table.rows:
            out = [format_value(row.get(c)) for c in columns]
            for c in extra:
                v = row.get(c)
                out.append(format_value(None if v is None else float(v) / math.log(2.0)))
            writer.writerow(out)


def read_csv(path: Path) -> tuple[list[str], list[dict]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
        return list(reader.fieldnames or []), rows


def write_record(record: RunRecord, out_dir: Path, log2: bool = False) -> list[Path]:
    """Write every table as CSV plus ``<command>.json``; returns the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for table in record.tables:
        path = out_dir / f"{table.name}.csv"
        write_csv(table, path, log2=log2)
        paths.append(path)
    meta_path = out_dir / f"{record.command}.json"
    meta_path.write_text(json.dumps(record.metadata(), indent=2, sort_keys=True, default=str) + "\n")
    paths.append(meta_path)
    return paths
