from __future__ import annotations
import io
from typing import TYPE_CHECKING
import matplotlib
import numpy as np
from matplotlib.figure import Figure

if TYPE_CHECKING:
    from kam_atlas.measure.scaling import ScalingStudy
    from kam_atlas.portrait.regions import Portrait

# fixed salt and no date so that re-runs produce identical files
matplotlib.rcParams["svg.hashsalt"] = "kam-atlas"
matplotlib.rcParams["font.size"] = 9


def new_figure(width: float = 5.0, height: float = 3.5) -> Figure:
    return Figure(figsize=(width, height))


def svg_bytes(figure: Figure) -> bytes:
    buffer = io.BytesIO()
    figure.savefig(buffer, format="svg", metadata={"Date": None}, bbox_inches="tight")

    return buffer.getvalue()


def portrait_figure(portrait: Portrait, points: int = 400) -> Figure:
    """Level lines of p² + Ḡ(q) through every critical value and E♭."""
    form = portrait.form
    # the wells occupy |p| ≲ √(max Ḡ − min Ḡ); E♭ usually lies far outside
    bound = min(form.R + form.r / 2, 2 * np.sqrt(np.ptp(portrait.profile.values)))
    q = np.linspace(0, 2 * np.pi, points)
    p = np.linspace(-1.1 * bound, 1.1 * bound, points)
    qq, pp = np.meshgrid(q, p)
    energy = pp ** 2 + form.reference(qq)
    levels = sorted(set(portrait.profile.values) | {portrait.energy_flat})

    figure = new_figure()
    axes = figure.add_subplot(1, 1, 1)
    axes.contour(qq, pp, energy, levels=levels, colors="black", linewidths=0.8)
    axes.contourf(qq, pp, energy, levels=30, cmap="Greys", alpha=0.35)
    axes.scatter(np.mod(portrait.profile.points, 2 * np.pi), np.zeros(portrait.profile.count), s=8, color="tab:red")
    axes.set_xlabel("q")
    axes.set_ylabel("p")
    axes.set_title(f"{len(portrait.regions)} regions")

    return figure


def scaling_figure(study: ScalingStudy) -> Figure:
    epsilons = np.array([point.epsilon for point in study.points])
    values = np.array([point.estimate.value for point in study.points])
    errors = np.array([point.estimate.stderr for point in study.points])

    figure = new_figure()
    axes = figure.add_subplot(1, 1, 1)
    axes.errorbar(epsilons, values, yerr=errors, fmt="o", color="black")
    axes.plot(epsilons, 10 ** study.intercept * epsilons ** study.slope, color="tab:blue", label=f"slope {study.slope:.3f}")
    axes.set_xscale("log")
    axes.set_yscale("log")
    axes.set_xlabel("ε")
    axes.set_ylabel("meas R²")
    axes.legend()

    return figure
