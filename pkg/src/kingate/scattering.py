"""Classical scattering algebra of a two-sided Fabry-Perot cavity.

A mode of wavenumber ``k`` incident from the left with unit amplitude produces
a reflected wave ``A``, intracavity waves ``B`` and ``C`` and a transmitted
wave ``D``.  Only the combination ``tau1 a_k + tau2 a_{-k}`` of left- and
right-incident modes couples to an atom in the cavity; the orthogonal
combination passes by untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MirrorPair:
    """Lossless mirrors with real amplitude transmissions ``t1`` (input) and ``t2``."""

    t1: float
    t2: float
    length: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("t1", "t2"):
            t = getattr(self, name)
            if not (0.0 <= t and t * t < 0.5):
                raise ValueError(f"{name} must satisfy 0 <= {name} and {name}**2 < 0.5, got {t!r}")
        if not (self.length > 0 and self.c > 0):
            raise ValueError("cavity length and speed of light must be positive")

    @property
    def r1(self) -> float:
        return math.sqrt(1.0 - self.t1 * self.t1)

    @property
    def r2(self) -> float:
        return math.sqrt(1.0 - self.t2 * self.t2)

    def swapped(self) -> "MirrorPair":
        return MirrorPair(self.t2, self.t1, self.length, self.c)


@dataclass(frozen=True)
class ScatteringAmplitudes:
    a: complex
    b: complex
    c_amp: complex
    d: complex


@dataclass(frozen=True)
class ModeSplit:
    tau1: float
    tau2: float

    def __post_init__(self):
        if abs(self.tau1**2 + self.tau2**2 - 1.0) > 1e-12:
            raise ValueError("tau1**2 + tau2**2 must equal 1")


def scattering_amplitudes(m: MirrorPair, k: float, from_right: bool = False) -> ScatteringAmplitudes:
    """Exact field amplitudes for a unit wave incident from the left (or right).

    The right-incident amplitudes ``A', B', C', D'`` follow from the same
    expressions with mirrors 1 and 2 exchanged.
    """
    if not k > 0:
        raise ValueError("wavenumber must be positive")
    if from_right:
        m = m.swapped()
    r1, r2, t1, t2 = m.r1, m.r2, m.t1, m.t2
    e = np.exp(1j * k * m.length)
    den = r1 * r2 * e * e - 1.0
    if abs(den) < 1e-15:
        raise ZeroDivisionError("cavity denominator vanishes; mirrors are not transmitting")
    a = -(r1 / e - r2 * e) / den
    b = -t1 / den
    c = t1 * r2 * e / den
    d = -t1 * t2 / den
    return ScatteringAmplitudes(complex(a), complex(b), complex(c), complex(d))


def resonant_kl(kl: float) -> float:
    """Nearest cavity resonance ``(2n+1) pi`` (n >= 0) to a given ``k * l``."""
    n = max(0, round((kl / math.pi - 1.0) / 2.0))
    return (2 * n + 1) * math.pi


def total_loss_rate(m: MirrorPair) -> float:
    return (m.t1**2 + m.t2**2) * m.c / (4.0 * m.length)


def mode_split(m: MirrorPair) -> ModeSplit:
    norm = math.hypot(m.t1, m.t2)
    if norm == 0.0:
        raise ValueError("at least one mirror must transmit")
    return ModeSplit(m.t1 / norm, m.t2 / norm)


def uncoupled_failure_probability(s: ModeSplit) -> float:
    """Probability that a left-incident photon occupies the uncoupled mode."""
    return s.tau2**2


def coupled_uncoupled(s: ModeSplit, a_left, a_right):
    """Map left/right-incident amplitudes to (coupled, uncoupled) amplitudes.

    The transform is orthogonal and its own inverse, so applying it to
    ``(coupled, uncoupled)`` recovers ``(left, right)``.
    """
    a_c = s.tau1 * a_left + s.tau2 * a_right
    a_u = s.tau2 * a_left - s.tau1 * a_right
    return a_c, a_u


def near_resonance_amplitudes(s: ModeSplit) -> tuple[float, float]:
    """Reflection ``A`` and transmission ``D`` at resonance, to lowest order in ``t``.

    For the right-incident mode ``A' = -A`` and ``D' = D``.
    """
    return s.tau1**2 - s.tau2**2, 2.0 * s.tau1 * s.tau2


def beamsplitter_network_output(
    s: ModeSplit,
    emitted_in_coupled_mode: complex = 1.0,
    amplitudes: tuple[complex, complex, complex, complex] | None = None,
) -> tuple[complex, complex]:
    """Recombine the field emitted in the coupled mode on the feeding beamsplitter.

    The beamsplitter maps the input ports ``(a', a'')`` onto the cavity ports
    as ``a_k = tau1 a' - tau2 a''`` and ``a_{-k} = tau2 a' + tau1 a''``.  On
    the return trip the same (transposed) matrix applies, so the reflection
    seen from the ``a''`` side is ``-tau2``.  Path lengths from the
    beamsplitter to both mirrors are taken equal.

    ``amplitudes`` is ``(A, D, A', D')``; the near-resonance values are used
    by default.  Returns ``(back_along_input, upward)``.
    """
    if amplitudes is None:
        a, d = near_resonance_amplitudes(s)
        a_r, d_r = -a, d
    else:
        a, d, a_r, d_r = amplitudes
    upper = s.tau1 * a + s.tau2 * d_r
    lower = s.tau1 * d + s.tau2 * a_r
    back = s.tau1 * upper + s.tau2 * lower
    upward = -s.tau2 * upper + s.tau1 * lower
    return emitted_in_coupled_mode * back, emitted_in_coupled_mode * upward
