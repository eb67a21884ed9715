"""Domain types, unit conventions and the frequency grid.

All rates and frequencies are expressed in units of the cavity loss rate
``kappa`` and all times in units of ``1/kappa``.  Frequencies ``omega`` are
measured from the cavity resonance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc


class GridCoverageError(ValueError):
    """A frequency grid does not cover a pulse band to the required accuracy."""


class Polarization(enum.Enum):
    H = "H"
    V = "V"

    @property
    def other(self) -> "Polarization":
        return Polarization.V if self is Polarization.H else Polarization.H


class PulseShape(enum.Enum):
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class SystemParams:
    """Atom-cavity parameters.

    Parameters
    ----------
    g : float
        Atom-cavity coupling rate.
    kappa : float
        Cavity (field) loss rate.  Everything else is measured in this unit,
        so the default is 1.
    delta_h, delta_v : float
        Cavity resonance minus the atomic transition frequency for the
        H-coupled (``|1> <-> |2>``) and V-coupled (``|0> <-> |2>``) transitions.
    """

    g: float
    kappa: float = 1.0
    delta_h: float = 0.0
    delta_v: float = 0.0

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g!r}")
        if not self.kappa > 0:
            raise ValueError(f"loss rate kappa must be positive, got {self.kappa!r}")

    @classmethod
    def degenerate(cls, g: float, delta_a: float, kappa: float = 1.0) -> "SystemParams":
        """Degenerate ground states: both transitions share the detuning ``delta_a``."""
        return cls(g=g, kappa=kappa, delta_h=delta_a, delta_v=delta_a)

    def epsilon(self) -> float:
        """Ground-state splitting ``delta_h - delta_v``."""
        return self.delta_h - self.delta_v

    @property
    def is_degenerate(self) -> bool:
        return self.delta_h == self.delta_v

    def detuning(self, pol: Polarization) -> float:
        return self.delta_h if pol is Polarization.H else self.delta_v


@dataclass(frozen=True)
class PulseSpec:
    """Incident single-photon pulse.

    ``carrier_detuning`` is the pulse centre frequency minus the cavity
    resonance.  The intensity spectrum of the Gaussian shape is
    ``(T/sqrt(2 pi)) exp(-(omega - carrier)**2 T**2 / 2)``.
    """

    duration: float
    carrier_detuning: float = 0.0
    polarization: Polarization = Polarization.H
    shape: PulseShape = PulseShape.GAUSSIAN

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"pulse duration must be positive, got {self.duration!r}")
        object.__setattr__(self, "polarization", Polarization(self.polarization))
        object.__setattr__(self, "shape", PulseShape(self.shape))

    @property
    def sigma(self) -> float:
        """Standard deviation of the intensity spectrum, ``1/T``."""
        return 1.0 / self.duration

    def shifted(self, offset: float) -> "PulseSpec":
        return PulseSpec(self.duration, self.carrier_detuning + offset, self.polarization, self.shape)

    def with_polarization(self, pol: Polarization) -> "PulseSpec":
        return PulseSpec(self.duration, self.carrier_detuning, pol, self.shape)

    def mass_outside(self, lo: float, hi: float, offset: float = 0.0) -> float:
        """Fraction of the intensity spectrum (shifted by ``offset``) outside ``[lo, hi]``."""
        c = self.carrier_detuning + offset
        s = math.sqrt(2.0) * self.sigma
        return 0.5 * float(erfc((c - lo) / s)) + 0.5 * float(erfc((hi - c) / s))


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Quadrature nodes and weights for integrals over ``omega``."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = _frozen(self.points)
        wts = _frozen(self.weights)
        if pts.ndim != 1 or pts.shape != wts.shape or pts.size < 2:
            raise ValueError("grid needs matching 1-d points and weights with at least 2 nodes")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        if np.any(wts <= 0):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    def __len__(self):
        return self.points.size

    @property
    def lo(self) -> float:
        return float(self.points[0])

    @property
    def hi(self) -> float:
        return float(self.points[-1])

    def integrate(self, values) -> complex | float:
        return np.sum(self.weights * np.asarray(values))

    def same_as(self, other: "FrequencyGrid") -> bool:
        return (self is other) or (
            np.array_equal(self.points, other.points) and np.array_equal(self.weights, other.weights)
        )

    def check_covers(self, pulse: PulseSpec, offset: float = 0.0, tol: float = 1e-12) -> None:
        """Raise :class:`GridCoverageError` if more than ``tol`` of the pulse
        intensity (shifted by ``offset``) lies outside the grid."""
        lost = pulse.mass_outside(self.lo, self.hi, offset)
        if lost > tol:
            raise GridCoverageError(
                f"grid [{self.lo:.6g}, {self.hi:.6g}] misses {lost:.3g} of the pulse band "
                f"centred at {pulse.carrier_detuning + offset:.6g}"
            )


def gaussian_spectrum(pulse: PulseSpec, omega):
    """Incident spectral amplitude ``C(omega, 0)``.

    The amplitude is real and positive (zero spectral phase); its square is the
    normalized Gaussian intensity spectrum of the pulse.
    """
    if pulse.shape is not PulseShape.GAUSSIAN:
        raise ValueError(f"unsupported pulse shape {pulse.shape}")
    T = pulse.duration
    x = np.asarray(omega, dtype=float) - pulse.carrier_detuning
    return math.sqrt(T / math.sqrt(2 * math.pi)) * np.exp(-(x * T) ** 2 / 4)


def make_grid(
    pulse: PulseSpec,
    points_per_sigma: int = 10,
    halfwidth_sigmas: int = 12,
    shift: float = 0.0,
) -> FrequencyGrid:
    """Uniform trapezoidal grid centred on the pulse carrier.

    The grid spans ``carrier +/- halfwidth_sigmas / T`` with spacing
    ``1 / (points_per_sigma T)``.  A nonzero ``shift`` extends the span (same
    spacing, nodes stay on the lattice ``carrier + k*h``) so that the band
    centred at ``carrier + shift`` is covered as well.
    """
    if points_per_sigma < 1 or halfwidth_sigmas < 1:
        raise ValueError("points_per_sigma and halfwidth_sigmas must be >= 1")
    T = pulse.duration
    h = 1.0 / (points_per_sigma * T)
    n_half = int(points_per_sigma * halfwidth_sigmas)
    n_lo = n_half + int(math.ceil(max(0.0, -shift) / h - 1e-9))
    n_hi = n_half + int(math.ceil(max(0.0, shift) / h - 1e-9))
    k = np.arange(-n_lo, n_hi + 1)
    points = pulse.carrier_detuning + k * h
    weights = np.full(points.shape, h)
    weights[0] = weights[-1] = h / 2
    return FrequencyGrid(points, weights)


@dataclass(frozen=True, eq=False)
class SpectralState:
    """Single-photon state in the ``{|H, 1>, |V, 0>}`` subspace.

    ``c_h[j]`` is the amplitude for an H photon at ``grid.points[j]`` with the
    atom in ``|1>``; ``c_v[j]`` for a V photon with the atom in ``|0>``.
    """

    grid: FrequencyGrid
    c_h: np.ndarray
    c_v: np.ndarray

    def __post_init__(self):
        for name in ("c_h", "c_v"):
            a = np.array(getattr(self, name), dtype=complex)
            if a.shape != self.grid.points.shape:
                raise ValueError(f"{name} has shape {a.shape}, grid has {self.grid.points.shape}")
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def omega(self) -> np.ndarray:
        return self.grid.points

    def norm(self) -> float:
        return float(self.grid.integrate(np.abs(self.c_h) ** 2 + np.abs(self.c_v) ** 2))

    def overlap(self, other: "SpectralState") -> complex:
        """``<self|other>`` by quadrature on the shared grid."""
        if not self.grid.same_as(other.grid):
            raise ValueError("states live on different grids")
        return complex(self.grid.integrate(np.conj(self.c_h) * other.c_h + np.conj(self.c_v) * other.c_v))

    def l2_distance(self, other: "SpectralState") -> float:
        if not self.grid.same_as(other.grid):
            raise ValueError("states live on different grids")
        d = np.abs(self.c_h - other.c_h) ** 2 + np.abs(self.c_v - other.c_v) ** 2
        return math.sqrt(float(self.grid.integrate(d)))

    def __add__(self, other: "SpectralState") -> "SpectralState":
        if not self.grid.same_as(other.grid):
            raise ValueError("states live on different grids")
        return SpectralState(self.grid, self.c_h + other.c_h, self.c_v + other.c_v)

    def scaled(self, factor: complex) -> "SpectralState":
        return SpectralState(self.grid, factor * self.c_h, factor * self.c_v)


@dataclass(frozen=True)
class GateResult:
    """Gate fidelity ``F`` and phase ``Phi`` from ``F exp(2i Phi)``."""

    fidelity: float
    phase: float
    phi_target: float = math.pi / 4
    overlap: complex = field(default=complex("nan"), compare=False)

    @property
    def infidelity(self) -> float:
        return 1.0 - self.fidelity**2

    @property
    def phase_error(self) -> float:
        return self.phase - self.phi_target
