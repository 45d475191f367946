"""Figure rendering for simulation runs.

Writes PNG files next to the CSV output; pure file-in, file-out, no
interactive backend.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .odesim import Branch, HomeostasisEvent


def save_io_curve(branch: Branch, events: list[HomeostasisEvent], path: str) -> str:
    """Input-output curve with detected homeostasis points marked."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(branch.inputs, branch.outputs, color="tab:blue", lw=1.5)
    for ev in events:
        ax.axvline(ev.I, color="tab:red", lw=0.8, ls="--")
        ax.plot([ev.I], [float(ev.x[-1])], "o", color="tab:red", ms=5)
        ax.annotate(
            ev.kind,
            (ev.I, float(ev.x[-1])),
            textcoords="offset points",
            xytext=(4, 6),
            fontsize=8,
        )
    ax.set_xlabel("input parameter")
    ax.set_ylabel("output %s" % branch.ode.order[-1])
    ax.set_title("input-output curve")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_block_dets(branch: Branch, events: list[HomeostasisEvent], path: str) -> str:
    """Per-subnetwork block determinants along the branch; the curve that
    crosses zero at an event names the active homeostasis type."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    labels = sorted(branch.points[0].block_dets) if branch.points else []
    for label in labels:
        ax.plot(
            branch.inputs,
            [p.block_dets[label] for p in branch.points],
            lw=1.2,
            label=label,
        )
    ax.axhline(0.0, color="black", lw=0.6)
    for ev in events:
        ax.axvline(ev.I, color="tab:red", lw=0.8, ls="--")
    ax.set_xlabel("input parameter")
    ax.set_ylabel("block determinant")
    ax.set_title("determinant blocks along the branch")
    if labels:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
