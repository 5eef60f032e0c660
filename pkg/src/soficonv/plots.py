"""Matplotlib rendering for the CLI report paths.

Figures are always written to files (Agg backend, no display); the CLI
emits them alongside the delimited data so a plot never replaces the
numbers it was drawn from.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_profile_figure(rows, path, ylabel="log f(n) / log n"):
    """Scatter of the growth-ratio series (n, ratio)."""
    ns = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    marker = "," if len(rows) > 2000 else "."
    ax.plot(ns, ys, marker, markersize=2, color="tab:blue", linestyle="none")
    ax.set_xlabel("n")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def save_density_figure(checkpoints, path, cuts=None, title=None):
    """Checkpoint series of natural density and exponential density."""
    ns = [c.N for c in checkpoints]
    dens = [float(c.density) for c in checkpoints]
    dexp = [c.dexp for c in checkpoints]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.semilogx(ns, dens, "o-", label="natural density", color="tab:blue")
    ax.semilogx(ns, dexp, "s--", label="exponential density", color="tab:orange")
    if cuts:
        for cut in cuts:
            if cut > 1:
                ax.axvline(cut, color="gray", alpha=0.4, linewidth=0.8)
    ax.set_xlabel("horizon N")
    ax.set_ylabel("density")
    ax.set_ylim(-0.05, 1.05)
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path
