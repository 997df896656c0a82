"""Figure and delimited-report rendering for the CLI report paths.

When a command is given a figures directory it drops a PNG rendering of its
report next to a CSV with the same rows, so results can be eyeballed and
post-processed without re-running anything.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def render_search_report(report, out_dir) -> list[Path]:
    """Elimination histogram as a bar chart plus its CSV, in audit-ladder order."""
    from .gadgets import CHECK_ORDER

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tag = f"k{report.params.k}_l{report.params.l}_{report.mode}_r{report.max_internal}"
    rank = {name: i for i, name in enumerate(CHECK_ORDER)}
    items = sorted(report.histogram.items(),
                   key=lambda kv: (rank.get(kv[0], len(rank)), kv[0]))

    csv_path = out / f"search_{tag}.csv"
    write_csv(csv_path, ["check", "eliminated"], [[name, count] for name, count in items])

    fig, ax = plt.subplots(figsize=(7, 4))
    names = [name for name, _ in items]
    counts = [count for _, count in items]
    ax.bar(range(len(names)), counts, color="#4878a8")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("candidates eliminated")
    ax.set_title(f"(k,l)=({report.params.k},{report.params.l}) {report.mode} mode, "
                 f"r<={report.max_internal}: {report.enumerated} candidates, "
                 f"{len(report.survivors)} survivors")
    for i, count in enumerate(counts):
        ax.text(i, count, str(count), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    png_path = out / f"search_{tag}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [png_path, csv_path]


def render_fixture_report(rows: list[dict], out_dir) -> list[Path]:
    """Fixture-by-method agreement matrix plus its CSV.

    ``rows`` carry fixture, method, expected, got, ok.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    csv_path = out / "fixtures.csv"
    write_csv(csv_path, ["fixture", "method", "expected", "got", "ok"],
              [[r["fixture"], r["method"], r["expected"], r["got"], r["ok"]] for r in rows])

    fixtures = sorted({r["fixture"] for r in rows})
    methods = sorted({r["method"] for r in rows})
    grid = [[1.0 if next(r for r in rows
                         if r["fixture"] == f and r["method"] == m)["ok"] else 0.0
             for m in methods] for f in fixtures]

    fig, ax = plt.subplots(figsize=(4 + 0.4 * len(methods), 1 + 0.25 * len(fixtures)))
    ax.imshow(grid, cmap="RdYlGn", vmin=0.0, vmax=1.0, aspect="auto")
    ax.set_xticks(range(len(methods)))
    ax.set_xticklabels(methods, fontsize=8)
    ax.set_yticks(range(len(fixtures)))
    ax.set_yticklabels(fixtures, fontsize=7)
    ax.set_title("fixture status agreement (green = matches documented status)")
    fig.tight_layout()
    png_path = out / "fixtures.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [png_path, csv_path]
