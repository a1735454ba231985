from kam_atlas.fourier.potential import FourierPotential
from kam_atlas.fourier.series import OneDSeries
from kam_atlas.portrait.regions import Portrait, decompose
from kam_atlas.portrait.standard_form import StandardForm1D


def pendulum_series(scale: float = 1.0) -> OneDSeries:
    return OneDSeries.trigonometric(cos={1: scale})


def figure_series() -> OneDSeries:
    return OneDSeries.trigonometric(cos={5: 0.5}, sin={1: 1.0})


def softened_series() -> OneDSeries:
    # cos q − cos 2q / 8: negative twist near the bottom
    return OneDSeries.trigonometric(cos={1: 1.0, 2: -0.125})


def stiffened_series() -> OneDSeries:
    # cos q + cos 2q / 8: the twist changes sign inside the well
    return OneDSeries.trigonometric(cos={1: 1.0, 2: 0.125})


def pendulum_potential() -> FourierPotential:
    return FourierPotential.from_half_modes(2, 1.0, {(1, 0): 0.5})


def two_mode_potential() -> FourierPotential:
    return FourierPotential.from_half_modes(2, 1.0, {(1, 0): 0.5, (0, 1): 0.25, (1, 1): 0.125, (1, -1): 0.0625})


def portrait_of(series: OneDSeries) -> Portrait:
    return decompose(StandardForm1D.from_reference(series))
