"""Report figures: matplotlib renderers for the scenario trace tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def set_plot_defaults():
    plt.rc("figure", figsize=(7.0, 4.4), dpi=140)
    plt.rc("font", size=11)
    plt.rc("axes", linewidth=0.8, grid=True)
    plt.rc("grid", alpha=0.3, linewidth=0.5)
    plt.rc("lines", linewidth=1.4)
    plt.rc("savefig", bbox="tight")


#: per-table-kind axis cosmetics: (x label, y label, x log?, y log?)
_STYLES = {
    "involution_error": ("s", "relative error", True, True),
    "lemma1_difference": ("k", "|ln LHS - ln RHS|", False, True),
    "log_sequence": ("k", "ln a_k", False, False),
    "indicator_trace": ("s", "ln b(s)", True, False),
    "riemann_error": ("nu", "ln ||g_nu - g||", False, False),
    "spectral_mass": ("lattice size", "outside-cone mass fraction",
                      True, True),
}


def render_tables(tables: dict, figures_dir: Path):
    """One PNG per (check, table) pair; unknown kinds get a plain plot."""
    set_plot_defaults()
    figures_dir = Path(figures_dir)
    figures_dir.mkdir(parents=True, exist_ok=True)
    for check_id, traces in tables.items():
        for label, rows in traces.items():
            if not rows:
                continue
            xs = [r[0] for r in rows]
            ys = [r[1] for r in rows]
            xlab, ylab, logx, logy = _STYLES.get(
                label, ("x", label.replace("_", " "), False, False))
            fig, ax = plt.subplots()
            marker = "o-" if len(xs) <= 32 else "-"
            ax.plot(xs, ys, marker)
            if logx:
                ax.set_xscale("log")
            if logy and all(y > 0 for y in ys):
                ax.set_yscale("log")
            ax.set_xlabel(xlab)
            ax.set_ylabel(ylab)
            ax.set_title(f"{check_id}: {label.replace('_', ' ')}")
            fig.savefig(figures_dir / f"{check_id}.{label}.png")
            plt.close(fig)
