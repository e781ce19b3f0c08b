"""Minimal SVG overlays rendered from a CSV file and nothing else."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from wre.harness.records import SCHEMAS, read_csv  # noqa: E402

RC = {"svg.hashsalt": "wre", "svg.fonttype": "path", "figure.figsize": (6.0, 4.2)}


def _num(value: str) -> float:
    return float(value) if value not in ("", None) else math.nan


def _column(rows, name):
    return [_num(r[name]) for r in rows]


def _groups(rows, key):
    out: dict[str, list[dict]] = {}
    for r in rows:
        out.setdefault(r[key], []).append(r)
    return out


def _curve(ax, rows, x, y, label, **kw):
    pts = sorted((_num(r[x]), _num(r[y])) for r in rows if r[y] != "")
    if pts:
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=label, lw=1.2, **kw)


def _reference(ax, rows):
    alpha = _num(rows[0]["alpha"])
    ax.axhline(math.log(alpha) - 0.5, color="gray", ls=":", lw=1.0, label=r"$\ln\alpha - 1/2$")


def _plot_mpd(ax, rows):
    left, right = _column(rows, "left"), _column(rows, "right")
    ax.bar(left, _column(rows, "empirical_density"), width=[b - a for a, b in zip(left, right)],
           align="edge", color="#9ecae1", edgecolor="none", label="ESD")
    _curve(ax, rows, "center", "analytic_density", "Marchenko-Pastur", color="purple")
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("density")


def _plot_dominant(ax, rows):
    g = _column(rows, "gamma")
    ax.errorbar(g, _column(rows, "mean_lambda_max"), yerr=_column(rows, "sem_lambda_max"),
                fmt="o", ms=3, label=r"mean $\lambda_{max}$")
    ax.plot(g, _column(rows, "analytic"), label=r"$\alpha\gamma^2$")
    ax.axhline(_num(rows[0]["lambda_plus"]), color="gray", ls=":", label=r"$\lambda_+$")
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$\lambda_0$")


def _scatter_family(y, group, ylabel):
    def plot(ax, rows):
        for key, part in _groups(rows, group).items():
            line = ax.plot(_column(part, "lambda0"), _column(part, y), "o", ms=2.5,
                           label=f"{group}={key}")
            _curve(ax, part, "lambda0", "analytic", None, color=line[0].get_color())
        if y != "gap":
            _reference(ax, rows)
        ax.set_xlabel(r"$\lambda_0$")
        ax.set_ylabel(ylabel)

    return plot


def _plot_curve(ax, rows):
    for key, part in _groups(rows, "beta").items():
        _curve(ax, part, "lambda0", "analytic", f"beta={key}")
    _reference(ax, rows)
    ax.set_xlabel(r"$\lambda_0$")
    ax.set_ylabel("entropy")


def _plot_qft(ax, rows):
    ax.plot(_column(rows, "lambda0_before"), _column(rows, "entropy_before"), "o", mfc="none",
            label="before QFT")
    ax.plot(_column(rows, "lambda0_after"), _column(rows, "entropy_after"), "x", label="after QFT")
    for key, part in _groups(rows, "beta").items():
        _curve(ax, part, "lambda0_before", "analytic", f"closed form, beta={key}")
    _reference(ax, rows)
    ax.set_xlabel(r"$\lambda_0$")
    ax.set_ylabel("entropy")


PLOTTERS = {
    "wre.mpd.v1": _plot_mpd,
    "wre.dominant.v1": _plot_dominant,
    "wre.lambda0_sweep.v1": _scatter_family("entropy", "beta", "entropy"),
    "wre.lambda0_curve.v1": _plot_curve,
    "wre.gap_sweep.v1": _scatter_family("gap", "beta", "entanglement gap"),
    "wre.renyi_sweep.v1": _scatter_family("renyi", "degree", "Renyi entropy"),
    "wre.qft.v1": _plot_qft,
    "wre.grover.v1": _scatter_family("entropy", "label", "entropy"),
    "wre.adiabatic.v1": _scatter_family("entropy", "n_qubits", "entropy"),
    "wre.prime.v1": _scatter_family("entropy", "n_qubits", "entropy"),
}


def render_csv(csv_path: Path, svg_path: Path | None = None) -> Path | None:
    """Render ``csv_path`` to SVG; returns the path, or ``None`` for unknown schemas."""
    csv_path = Path(csv_path)
    header, rows = read_csv(csv_path)
    if not rows or "schema" not in header or rows[0]["schema"] not in SCHEMAS:
        return None
    schema = rows[0]["schema"]
    svg_path = csv_path.with_suffix(".svg") if svg_path is None else Path(svg_path)
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        PLOTTERS[schema](ax, rows)
        ax.set_title(csv_path.stem, fontsize=10)
        ax.legend(fontsize=7, loc="best")
        fig.tight_layout()
        fig.savefig(svg_path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return svg_path


def render_directory(directory: Path) -> list[Path]:
    """Re-render every known CSV in ``directory``."""
    out = []
    for path in sorted(Path(directory).glob("*.csv")):
        svg = render_csv(path)
        if svg is not None:
            out.append(svg)
    return out
