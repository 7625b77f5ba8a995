"""Render the schedule staircase, the run-length histogram and the cost comparison.

Needs the optional ``plots`` dependency group: ``poetry install --with plots``.
"""

import argparse
import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from randchem.commands import cmd_compare, cmd_schedule, cmd_simulate  # noqa: E402
from randchem.settings_manager import SettingsManager  # noqa: E402

logger = logging.getLogger("randchem.plots")


def plot_staircase(n0: int, k: int, out_dir: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for method, marker in (("exact", "o"), ("approx", "x")):
        payload = cmd_schedule(n0, k, method).payload
        stages = [0] + [row["stage"] for row in payload["rows"]]
        sizes = [n0] + payload["sizes"]
        ax.step(stages, sizes, where="post", alpha=0.7)
        ax.plot(stages, sizes, linestyle="none", marker=marker, label=method)
    ax.set_xlabel("stage")
    ax.set_ylabel("set size")
    ax.set_yscale("log")
    ax.set_title(f"Stage sizes, n0={n0}, k={k}")
    ax.legend()
    path = out_dir / "staircase.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_histogram(n0: int, k: int, runs: int, seed: int, out_dir: Path) -> Path:
    payload = cmd_simulate(n0, k, "approx", runs=runs, seed=seed).payload
    xs = [row["x"] for row in payload["rows"]]
    frequencies = [row["count"] / payload["run_count"] for row in payload["rows"]]
    overlay = [row["negbin_pmf"] for row in payload["rows"]]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(xs, frequencies, width=1.0, alpha=0.6, label=f"{runs} simulated runs")
    ax.plot(xs, overlay, color="black", label="negative binomial")
    ax.set_xlabel("total draws")
    ax.set_ylabel("frequency")
    ax.legend()
    path = out_dir / "histogram.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_comparison(n0: int, k: int, out_dir: Path) -> Path:
    payload = cmd_compare(n0, k).payload
    fig, ax = plt.subplots(figsize=(6, 4))
    for method, summary in payload["methods"].items():
        stages = range(0, summary["stage_count"] + 1)
        ax.plot(stages, [0.0] + summary["cumulative_expected"], marker=".", label=method)
    if payload["theoretical_optimum"] is not None:
        ax.axhline(
            payload["theoretical_optimum"], color="grey", linestyle="--", label="e ln C(n0, k)"
        )
    ax.set_xlabel("stage")
    ax.set_ylabel("cumulative expected draws")
    ax.legend()
    path = out_dir / "comparison.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def main():
    parser = argparse.ArgumentParser(description="Plot randchem schedules and run lengths")
    parser.add_argument("--n0", default=100, type=int)
    parser.add_argument("--k", default=5, type=int)
    parser.add_argument("--runs", default=100_000, type=int, help="Runs behind the histogram")
    parser.add_argument("--seed", default=1, type=int)
    parser.add_argument("--out-dir", default="figures", help="Directory for the PNG files")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    SettingsManager.initialize()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in (
        plot_staircase(args.n0, args.k, out_dir),
        plot_histogram(args.n0, args.k, args.runs, args.seed, out_dir),
        plot_comparison(args.n0, args.k, out_dir),
    ):
        logger.info("wrote %s", path)


if __name__ == "__main__":
    main()
