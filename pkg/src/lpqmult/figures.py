"""Render report data to figure files next to the delimited output.

Everything here consumes the already-serialized report dictionaries, so the
figures always show exactly what the JSON/CSV contain.  matplotlib is imported
lazily with the Agg backend; figure rendering is optional and never required
by any computation.
"""
from __future__ import annotations

import os


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def per_block_figure(document: dict, path: str) -> str:
    plt = _plt()
    table = document.get("per_block_table") or []
    fig, ax = plt.subplots(figsize=(7, 4))
    if table:
        ks = [row[0] for row in table]
        vs = [row[1] for row in table]
        ax.plot(ks, vs, "o-", lw=1.2, ms=4)
    ax.set_xlabel("block index k")
    ax.set_ylabel("block value")
    ax.set_title("per-block bound values")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def growth_figure(document: dict, path: str) -> str:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4))
    drew = False
    for key in (
        "lower_necessary",
        "upper_hoermander_block",
        "upper_hoermander_classic",
        "upper_lizorkin_dyadic",
        "upper_lizorkin_classic",
    ):
        entry = document.get(key)
        if not entry or not entry.get("growth"):
            continue
        scales = [r["scale"] for r in entry["growth"]]
        values = [r["value"] for r in entry["growth"]]
        if all(v <= 0 for v in values):
            continue
        mark = "s--" if entry.get("divergent") else "o-"
        ax.plot(scales, values, mark, label=f"{key}{' (divergent)' if entry.get('divergent') else ''}")
        drew = True
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("window scale")
    ax.set_ylabel("value")
    ax.set_title("growth ladders")
    if drew:
        ax.legend(fontsize=8)
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def trajectory_figure(estimate, path: str) -> str:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4))
    for restart, curve in enumerate(estimate.trajectory):
        if curve:
            ax.plot(range(len(curve)), curve, lw=0.8, alpha=0.7)
    ax.axhline(estimate.value, color="k", ls=":", lw=1, label=f"best = {estimate.value:.6g}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("ratio ||Tf||_q / ||f||_p")
    ax.set_title("operator-norm ascent trajectories")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(document: dict, outdir: str, stem: str = "report") -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    out = []
    out.append(per_block_figure(document, os.path.join(outdir, f"{stem}_blocks.png")))
    out.append(growth_figure(document, os.path.join(outdir, f"{stem}_growth.png")))
    return out
