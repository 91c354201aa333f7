"""Matplotlib rendering of Debye curves and validation reports to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .formfactor import Transform

__all__ = ["plot_debye_curves", "plot_validation"]


def plot_debye_curves(curves, out_path, transform=Transform.LINEAR):
    """Render one or more Debye curves to an image file."""
    transform = Transform(transform)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for curve in curves:
        label = f"{curve.process_class.value}, H={curve.hurst:g}"
        if curve.process_class.value == "pggbm":
            label += f", beta={curve.beta:g}"
        ax.plot(curve.y_values, curve.f_values, label=label)
    ax.set_xlabel("y")
    if transform is Transform.KRATKY:
        ax.set_ylabel(r"$y^2 f(y)$")
    else:
        ax.set_ylabel("f(y)")
    if transform is Transform.LOGLOG:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def plot_validation(rows, out_path):
    """Analytic curve vs MC estimates with error bars.

    ``rows`` are dicts with keys y, analytic, estimate, std_error.
    """
    y = np.array([r["y"] for r in rows])
    analytic = np.array([r["analytic"] for r in rows])
    est = np.array([r["estimate"] for r in rows])
    se = np.array([r["std_error"] for r in rows])
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(y, analytic, "-", label="analytic")
    ax.errorbar(y, est, yerr=4 * se, fmt="o", ms=4, capsize=3, label="MC (4 s.e.)")
    ax.set_xlabel("y")
    ax.set_ylabel("S")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
