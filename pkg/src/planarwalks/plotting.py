"""Headless matplotlib figures accompanying the CLI reports."""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .algebra import Poly


def poly_eval(p: Poly, values: dict[str, float]) -> float:
    """Numeric value of a polynomial at a point (missing vars -> 0)."""
    total = 0.0
    for mono, coeff in p.terms.items():
        term = float(coeff)
        for v, e in mono:
            term *= values.get(v, 0.0) ** e
        total += term
    return total


def plot_weight_profile(series: dict[int, Poly], sample: dict[str, float],
                        path: str, title: str) -> str:
    """Line plot of the weight series R_n over n at a sample coupling point."""
    ns = sorted(series)
    ys = [poly_eval(series[n], sample) for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, ys, marker="o")
    ax.set_xlabel("n")
    ax.set_ylabel("R_n at sample couplings")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_correlator_values(values: dict[int, Poly], sample: dict[str, float],
                           path: str, title: str) -> str:
    """Bar plot of G_{2i} evaluated at a sample coupling point."""
    idx = sorted(values)
    ys = [poly_eval(values[i], sample) for i in idx]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(2 * i) for i in idx], ys)
    ax.set_xlabel("2i")
    ax.set_ylabel("G_{2i} at sample couplings")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_face_distribution(probs: dict[int, Fraction], path: str,
                           title: str) -> str:
    """Bar plot of the adjacent-face count distribution."""
    ps = sorted(probs)
    ys = [float(probs[p]) for p in ps]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(p) for p in ps], ys)
    ax.set_xlabel("adjacent faces p")
    ax.set_ylabel("probability")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
