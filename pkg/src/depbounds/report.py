"""CSV and figure output for bound-vs-empirical comparison reports."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .mc import ComparisonReport  # noqa: E402

CSV_COLUMNS = (
    "t",
    "estimate",
    "ci_low",
    "ci_high",
    "bound_value",
    "bound_kind",
    "verdict",
)


def write_csv(report: ComparisonReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in report.rows:
            writer.writerow(
                [
                    f"{r.t:.10g}",
                    f"{r.estimate:.10g}",
                    f"{r.ci_low:.10g}",
                    f"{r.ci_high:.10g}",
                    f"{r.bound_value:.10g}",
                    r.bound_kind,
                    r.verdict,
                ]
            )
    return path


def write_summary(summary: dict[str, Any], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def render_figure(
    report: ComparisonReport, path: str | Path, title: str = ""
) -> Path:
    """Tail estimate (with CI band) against the bound curve, log-scale y."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    t = [r.t for r in report.rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    floor = 1e-12
    ax.fill_between(
        t,
        [max(r.ci_low, floor) for r in report.rows],
        [max(r.ci_high, floor) for r in report.rows],
        alpha=0.25,
        color="tab:blue",
        label="99% CI",
    )
    ax.plot(
        t,
        [max(r.estimate, floor) for r in report.rows],
        "o-",
        color="tab:blue",
        label="empirical tail",
    )
    ax.plot(
        t,
        [max(r.bound_value, floor) for r in report.rows],
        "s--",
        color="tab:red",
        label=report.rows[0].bound_kind if report.rows else "bound",
    )
    bad = [r for r in report.rows if r.verdict == "VIOLATION"]
    if bad:
        ax.plot(
            [r.t for r in bad],
            [max(r.bound_value, floor) for r in bad],
            "x",
            color="black",
            markersize=10,
            label="violation",
        )
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("P(mean deviation > t)")
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
