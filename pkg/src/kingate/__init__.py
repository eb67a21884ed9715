"""Exact spectra, fidelities and detuning conditions for cavity-mediated single-photon gates."""

from .core import (
    FrequencyGrid,
    GateResult,
    GridCoverageError,
    Polarization,
    PulseShape,
    PulseSpec,
    SpectralState,
    SystemParams,
    gaussian_spectrum,
    make_grid,
)

__version__ = "0.1.0"
