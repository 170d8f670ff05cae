"""Entanglement swapping between two dissipative Jaynes-Cummings cavities with a Kerr medium."""

__version__ = "0.1.0"

from .conditions import (
    closed_form_times,
    find_maximal_times_numeric,
    maximal_times_closed_form,
    theta_scan,
)
from .evolution import SubsystemAmplitudes, normalized_amplitudes
from .model import DerivedFrequencies, InitialState, SystemParams, derive_frequencies
from .swap import SwapOutcome, TwoQubitDensity, concurrence_wootters, swap_outcome

__all__ = [
    "DerivedFrequencies",
    "InitialState",
    "SubsystemAmplitudes",
    "SwapOutcome",
    "SystemParams",
    "TwoQubitDensity",
    "closed_form_times",
    "concurrence_wootters",
    "derive_frequencies",
    "find_maximal_times_numeric",
    "maximal_times_closed_form",
    "normalized_amplitudes",
    "swap_outcome",
    "theta_scan",
]
