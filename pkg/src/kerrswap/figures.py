"""Parameter presets for each figure panel.

Panels whose caption only states kappa/g = gamma/g use kappa = gamma = 1;
with equal rates the observables do not depend on the common value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import InitialState, SystemParams

PI = math.pi


@dataclass(frozen=True)
class Panel:
    caption: str
    params: SystemParams
    init: InitialState
    theta_text: str
    phi_text: str


@dataclass(frozen=True)
class ThetaPanel:
    caption: str
    curves: tuple  # (label, SystemParams)
    phi: float
    phi_text: str


_EQ = dict(kappa=1.0, gamma_a=1.0)
_PI4 = (InitialState(PI / 4, 0.0), "pi/4", "0")
_PI3 = (InitialState(PI / 3, 3 * PI / 2), "1/3 pi", "3pi/2")


def _panel(caption, params, state):
    init, tt, pt = state
    return Panel(caption, params, init, tt, pt)


_FIG4 = "concurrence vs gt, theta=pi/4, phi=0"
_FIG5 = "concurrence vs gt, theta=pi/3, phi=3pi/2"
_FIG6 = "occupation probability vs gt"

PRESETS = {
    "fig2": Panel(
        "concurrence and occupation probabilities vs gt for theta=(2n+1)pi/2 and any "
        "chi, delta, kappa, gamma (shown: delta/g=7, chi/g=0.4, kappa/g=0.1, gamma/g=0.3)",
        SystemParams(7.0, 0.4, 0.1, 0.3),
        InitialState(PI / 2, 0.0),
        "pi/2",
        "0",
    ),
    "fig3": ThetaPanel(
        "phase Theta vs theta at the maximal times, phi=pi/2, kappa=gamma",
        (
            ("delta0_chi0", SystemParams(0.0, 0.0, **_EQ)),
            ("delta0_chi0.4", SystemParams(0.0, 0.4, **_EQ)),
            ("delta7_chi0", SystemParams(7.0, 0.0, **_EQ)),
            ("delta7_chi0.4", SystemParams(7.0, 0.4, **_EQ)),
        ),
        PI / 2,
        "pi/2",
    ),
    "fig4a": _panel(f"{_FIG4}; (a) delta/g=chi/g=0, kappa/g=gamma/g", SystemParams(0.0, 0.0, **_EQ), _PI4),
    "fig4b": _panel(f"{_FIG4}; (b) delta/g=10, chi/g=0, kappa/g=gamma/g", SystemParams(10.0, 0.0, **_EQ), _PI4),
    "fig4c": _panel(f"{_FIG4}; (c) delta/g=10, chi/g=0.4, kappa/g=gamma/g", SystemParams(10.0, 0.4, **_EQ), _PI4),
    "fig4d": _panel(f"{_FIG4}; (d) delta/g=0, chi/g=0.4, kappa/g=gamma/g", SystemParams(0.0, 0.4, **_EQ), _PI4),
    "fig4e": _panel(f"{_FIG4}; (e) delta/g=0, chi/g=1, kappa/g=gamma/g", SystemParams(0.0, 1.0, **_EQ), _PI4),
    "fig4f": _panel(f"{_FIG4}; (f) delta/g=10, chi/g=0, kappa/g=0.1, gamma/g=0.3", SystemParams(10.0, 0.0, 0.1, 0.3), _PI4),
    "fig4g": _panel(f"{_FIG4}; (g) delta/g=10, chi/g=0.4, kappa/g=2, gamma/g=3", SystemParams(10.0, 0.4, 2.0, 3.0), _PI4),
    "fig5a": _panel(f"{_FIG5}; (a) delta/g=chi/g=0, kappa/g=gamma/g", SystemParams(0.0, 0.0, **_EQ), _PI3),
    "fig5b": _panel(f"{_FIG5}; (b) delta/g=10, chi/g=0, kappa/g=gamma/g", SystemParams(10.0, 0.0, **_EQ), _PI3),
    "fig5c": _panel(f"{_FIG5}; (c) delta/g=7, chi/g=0.7, kappa/g=gamma/g", SystemParams(7.0, 0.7, **_EQ), _PI3),
    "fig5d": _panel(f"{_FIG5}; (d) delta/g=0, chi/g=0.7, kappa/g=gamma/g", SystemParams(0.0, 0.7, **_EQ), _PI3),
    "fig5e": _panel(f"{_FIG5}; (e) delta/g=7, chi/g=0, kappa/g=0.1, gamma/g=0.3", SystemParams(7.0, 0.0, 0.1, 0.3), _PI3),
    "fig5f": _panel(f"{_FIG5}; (f) delta/g=7, chi/g=0.7, kappa/g=2, gamma/g=3", SystemParams(7.0, 0.7, 2.0, 3.0), _PI3),
    "fig6a": _panel(f"{_FIG6}; (a) theta=pi/4, phi=0, delta/g=10, chi/g=0, kappa/g=0.1, gamma/g=0.3", SystemParams(10.0, 0.0, 0.1, 0.3), _PI4),
    "fig6b": _panel(f"{_FIG6}; (b) theta=pi/4, phi=0, delta/g=10, chi/g=0.4, kappa/g=2, gamma/g=3", SystemParams(10.0, 0.4, 2.0, 3.0), _PI4),
    "fig6c": _panel(f"{_FIG6}; (c) theta=pi/3, phi=3pi/2, delta/g=7, chi/g=0, kappa/g=0.1, gamma/g=0.3", SystemParams(7.0, 0.0, 0.1, 0.3), _PI3),
    "fig6d": _panel(f"{_FIG6}; (d) theta=pi/3, phi=3pi/2, delta/g=7, chi/g=0.7, kappa/g=2, gamma/g=3", SystemParams(7.0, 0.7, 2.0, 3.0), _PI3),
}

FIGURE_IDS = tuple(PRESETS)
