"""Figure rendering for CLI reports.

Each report type gets one matplotlib figure written next to the delimited
output.  Rendering is strictly derived from the already-computed rows, so
figures never influence exit codes or CSV bytes.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .semigroup import series_weight_sum


def figure_path(output: str | None, command: str) -> Path:
    if output:
        return Path(output).with_suffix(".png")
    return Path(f"qheat_{command}.png")


def render(command: str, kind: str | None, rows, meta, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    if command == "spectrum":
        _spectrum(ax, rows)
    elif command == "tau":
        _tau(ax, rows)
    elif command == "verify":
        _verify(ax, rows, kind or "")
    elif command == "sharpness" and kind == "criterion":
        _criterion(ax, rows, meta)
    elif command == "sharpness":
        _scan(ax, rows, kind or "", meta)
    elif command == "series":
        _series(ax, rows)
    elif command == "algebra":
        _algebra(ax, rows)
    else:
        plt.close(fig)
        return
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _spectrum(ax, rows) -> None:
    ks = [r["k"] for r in rows]
    rates = [-r["lambda"] for r in rows]
    ax.plot(ks, rates, "o-", label="-lambda_k")
    ax.plot(ks, [r["lower"] for r in rows], "--", label="k/n")
    ax.plot(ks, [r["upper"] for r in rows], "--", label="k/(sqrt n (sqrt n - 2))")
    ax.set_xlabel("level k")
    ax.set_ylabel("decay rate")
    ax.set_title("generator spectrum with envelope")
    ax.legend()


def _tau(ax, rows) -> None:
    row = rows[0]
    ys = np.linspace(1e-4, 0.6, 400)
    ax.semilogy(ys, [series_weight_sum(y) for y in ys], label="sum (2k+1)^2 Y^k")
    ax.axhline(1.0 / ((row["p"] - 1.0) * row["D"] ** 2), color="gray", ls="--", label="target")
    ax.axvline(row["Y"], color="red", ls=":", label=f"Y = {row['Y']:.4g}")
    ax.set_xlabel("Y")
    ax.set_title(f"threshold root; tau = {row['tau']:.4g}")
    ax.legend()


def _verify(ax, rows, kind: str) -> None:
    margins = [r["margin"] for r in rows]
    colors = ["tab:blue" if r["pass"] else "tab:red" for r in rows]
    ax.bar(range(len(rows)), margins, color=colors)
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xlabel("case")
    ax.set_ylabel("margin = rhs - lhs")
    ax.set_title(f"verify {kind}: {sum(r['pass'] for r in rows)}/{len(rows)} pass")


def _criterion(ax, rows, meta) -> None:
    ts = [r["grid"] for r in rows]
    gs = [r["lhs"] for r in rows]
    ax.loglog(ts, gs, "o-", label=f"g(t) at s={meta.get('s')}")
    if rows:
        ax.axhline(rows[0]["rhs"], color="gray", ls="--", label="critical limit")
    ax.set_xlabel("t")
    ax.set_ylabel("t^s weighted level sum")
    ax.set_title("boundedness criterion")
    ax.legend()


def _scan(ax, rows, kind: str, meta) -> None:
    pts = [r["grid"] for r in rows if r["flag"] == "ok"]
    ratios = [r["ratio"] for r in rows if r["flag"] == "ok"]
    ax.semilogx(pts, ratios, "o-", base=2)
    ax.set_xlabel("family size")
    ax.set_ylabel("lhs / ||f||_p")
    ax.set_title(f"{kind} ratio scan (s={meta.get('s')}, p={meta.get('p')})")


def _series(ax, rows) -> None:
    ax.semilogy([r["y"] for r in rows], [max(r["abs_err"], 1e-18) for r in rows], "o-")
    ax.set_xlabel("Y")
    ax.set_ylabel("|series - closed form|")
    ax.set_title("series identity residual")


def _algebra(ax, rows) -> None:
    ax.bar([r["shape"] for r in rows], [max(r["defect"], 1e-18) for r in rows])
    ax.set_yscale("log")
    ax.set_ylabel("multiplication defect")
    ax.set_title("delta-form check")
