"""Figure rendering for pipeline and example reports.

Figures are written as PNG files next to the JSON report and the CSV
summary.  Matplotlib runs on the Agg backend so everything works headless.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

PLOT_STYLE = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 130,
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.bbox": "tight",
}


def _betti_rows(profile, top_dim):
    return [profile.betti(i) for i in range(top_dim + 1)]


def save_profile_figure(computed: dict, predicted, path, title: str) -> None:
    """Grouped bars of Betti numbers, computed vs predicted, with torsion
    in the annotations."""
    with plt.rc_context(PLOT_STYLE):
        profiles = dict(computed)
        if predicted is not None:
            profiles = {"predicted": predicted, **profiles}
        top = max(p.top_dim for p in profiles.values())
        dims = list(range(top + 1))
        width = 0.8 / len(profiles)

        fig, ax = plt.subplots()
        for idx, (name, prof) in enumerate(profiles.items()):
            xs = [d + (idx - (len(profiles) - 1) / 2) * width for d in dims]
            ys = _betti_rows(prof, top)
            bars = ax.bar(xs, ys, width=width, label=name)
            for d, bar in zip(dims, bars):
                tors = prof.torsion(d)
                if tors:
                    ax.annotate(
                        "+" + "+".join(f"Z/{t}" for t in tors[:3]) + ("..." if len(tors) > 3 else ""),
                        (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                        ha="center", va="bottom", fontsize=7, rotation=45)
        ax.set_xticks(dims)
        ax.set_xlabel("dimension")
        ax.set_ylabel("Betti number")
        ax.set_title(title)
        ax.legend()
        fig.savefig(path)
        plt.close(fig)


def save_shape_figure(decomp, path, title: str) -> None:
    """The reduced incidence graph of a cluster: parts on the outer circle,
    shared vertices inside, one line per containment."""
    mult = decomp.multiplicity()
    shared = sorted((v for v, m in mult.items() if m >= 2), key=str)
    k = decomp.k

    with plt.rc_context(PLOT_STYLE):
        fig, ax = plt.subplots(figsize=(5.2, 5.2))
        part_pos = {
            i: (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
            for i in range(k)
        }
        ns = max(len(shared), 1)
        radius = 0.55
        shared_pos = {
            v: (radius * math.cos(2 * math.pi * j / ns), radius * math.sin(2 * math.pi * j / ns))
            for j, v in enumerate(shared)
        }
        alpha = max(0.08, min(0.8, 60 / max(1, sum(mult[v] for v in shared))))
        for i, part in enumerate(decomp.parts):
            for v in part:
                if v in shared_pos:
                    (x1, y1), (x2, y2) = part_pos[i], shared_pos[v]
                    ax.plot([x1, x2], [y1, y2], color="steelblue", lw=0.7, alpha=alpha)
        ax.scatter(*zip(*part_pos.values()), s=14, color="firebrick", zorder=3, label="parts")
        if shared:
            ax.scatter(*zip(*shared_pos.values()), s=8, color="black", zorder=3,
                       label="shared vertices")
        small = k <= 30 and len(shared) <= 30
        if small:
            for i, (x, y) in part_pos.items():
                ax.annotate(str(i), (x * 1.08, y * 1.08), ha="center", fontsize=7)
            for v, (x, y) in shared_pos.items():
                ax.annotate(str(v), (x, y + 0.05), ha="center", fontsize=7)
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title(title)
        ax.legend(loc="lower right", fontsize=7)
        fig.savefig(path)
        plt.close(fig)


def save_examples_figure(instances: list, path, title: str) -> None:
    """One bar per instance: H1 rank with the torsion order annotated, a
    compact view of the reproduced example table."""
    with plt.rc_context(PLOT_STYLE):
        fig, ax = plt.subplots()
        names = [e["name"] for e in instances]
        colors = ["seagreen" if e["pass"] else "darkorange" for e in instances]
        values = [1 if e["homology_matches"] else 0 for e in instances]
        ax.bar(range(len(names)), values, color=colors)
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=30, ha="right", fontsize=7)
        ax.set_yticks([0, 1])
        ax.set_yticklabels(["differs", "matches"])
        ax.set_title(title)
        for i, e in enumerate(instances):
            ax.annotate(e["computed"], (i, values[i]), ha="center", va="bottom",
                        fontsize=6, rotation=20)
        fig.savefig(path)
        plt.close(fig)
