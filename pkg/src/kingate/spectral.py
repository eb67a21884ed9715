"""Exact frequency-domain scattering of a single photon off the atom-cavity system.

For a photon of polarization ``p`` incident on an atom in the matching ground
state, each incident frequency component ``omega`` is split into

* the same polarization at the same frequency, with amplitude ``num_in/den``;
* the other polarization at ``omega + eps_p``, with amplitude ``num_out/den``,

where ``eps_p = delta_p - delta_other``.  Both factors come from the closed
form solution of the atom's integro-differential equation (see
:mod:`kingate.oracle` for an independent time-domain check).  Conservation of
flux means ``|num_in|**2 + |num_out|**2 == |den|**2`` identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    FrequencyGrid,
    GateResult,
    Polarization,
    PulseSpec,
    SpectralState,
    SystemParams,
    gaussian_spectrum,
)

SQRT_SWAP_PHASE = math.pi / 4
SWAP_PHASE = 0.0


def _split(params: SystemParams, pol: Polarization) -> tuple[float, float, float]:
    d_in = params.detuning(pol)
    d_out = params.detuning(pol.other)
    return d_in, d_out, d_in - d_out


def _require_degenerate(params: SystemParams):
    if not params.is_degenerate:
        raise ValueError("this quantity is defined for degenerate ground states (delta_h == delta_v)")


# -- scattering factors -----------------------------------------------------


def degenerate_factors(params: SystemParams, omega):
    """``(num_same, num_swap, den)`` for degenerate ground states.

    ``den = 2 g^2 (kappa + i w) - i (w + delta_a)(kappa^2 + w^2)``.
    """
    _require_degenerate(params)
    g2, k, da = params.g**2, params.kappa, params.delta_h
    w = np.asarray(omega, dtype=float)
    lor = k * k + w * w
    den = 2 * g2 * (k + 1j * w) - 1j * (w + da) * lor
    num_same = 1j * (2 * g2 * w - (w + da) * lor)
    num_swap = np.full_like(den, -2 * g2 * k)
    return num_same, num_swap, den


def nondegenerate_factors(params: SystemParams, omega, pol: Polarization = Polarization.H):
    """``(num_same, num_swap, den)`` as functions of the incident frequency.

    The swapped-polarization photon leaves at ``omega + eps`` where
    ``eps = delta_in - delta_out``.  The three factors are polynomial in
    ``omega`` apart from a unit-modulus factor carried by ``num_swap``.
    """
    g2, k = params.g**2, params.kappa
    d_in, _, eps = _split(params, Polarization(pol))
    w = np.asarray(omega, dtype=float)
    up = k + 1j * w
    down_shift = k - 1j * (w + eps)
    den = g2 * (2 * up * down_shift + 1j * eps * up) - 1j * (w + d_in) * (k * k + w * w) * down_shift
    num_same = den - 2 * g2 * k * down_shift
    num_swap = -2 * g2 * k * up * down_shift / (k + 1j * (w + eps))
    return num_same, num_swap, den


def excited_spectrum(params: SystemParams, pulse: PulseSpec, nu):
    """Fourier transform ``int C_e(t) exp(i nu t) dt`` of the excited-state amplitude.

    Normalization: incident spectra satisfy ``int |C(w, 0)|^2 dw = 1`` and the
    coupling to the continuum is ``g sqrt(kappa/pi) / (kappa - i w)``, which
    gives the prefactor ``-2i g sqrt(pi kappa)``.
    """
    g, g2, k = params.g, params.g**2, params.kappa
    d_in, d_out, eps = _split(params, pulse.polarization)
    nu = np.asarray(nu, dtype=float)
    den = g2 * (2 + 1j * eps / (k - 1j * (nu - d_out))) - 1j * nu * (k - 1j * (nu - d_in))
    if np.any(np.abs(den) < 1e-12):
        raise ArithmeticError("excited-state denominator vanishes")
    return -2j * g * math.sqrt(math.pi * k) * gaussian_spectrum(pulse, nu - d_in) / den


def _assign(pol: Polarization, grid, same, swap) -> SpectralState:
    if pol is Polarization.H:
        return SpectralState(grid, same, swap)
    return SpectralState(grid, swap, same)


def incident_state(pulse: PulseSpec, grid: FrequencyGrid) -> SpectralState:
    c = gaussian_spectrum(pulse, grid.points)
    return _assign(pulse.polarization, grid, c, np.zeros_like(c))


def outgoing_spectra_degenerate(params: SystemParams, pulse: PulseSpec, grid: FrequencyGrid) -> SpectralState:
    """Outgoing spectra for degenerate ground states; atom starts in the state
    coupled to the incident polarization."""
    _require_degenerate(params)
    grid.check_covers(pulse)
    c_in = gaussian_spectrum(pulse, grid.points)
    num_same, num_swap, den = degenerate_factors(params, grid.points)
    return _assign(pulse.polarization, grid, num_same / den * c_in, num_swap / den * c_in)


def outgoing_spectra_nondegenerate(params: SystemParams, pulse: PulseSpec, grid: FrequencyGrid) -> SpectralState:
    """Outgoing spectra for arbitrary ground-state splitting.

    The swapped photon comes out displaced by ``eps = delta_in - delta_out``, so
    the grid has to cover the incident band and the shifted band.  At exactly
    zero splitting this defers to :func:`outgoing_spectra_degenerate`.
    """
    if params.is_degenerate:
        return outgoing_spectra_degenerate(params, pulse, grid)
    pol = pulse.polarization
    _, _, eps = _split(params, pol)
    grid.check_covers(pulse)
    grid.check_covers(pulse, offset=eps)
    w = grid.points
    num_same, _, den = nondegenerate_factors(params, w, pol)
    same = num_same / den * gaussian_spectrum(pulse, w)
    _, num_swap, den_s = nondegenerate_factors(params, w - eps, pol)
    swap = num_swap / den_s * gaussian_spectrum(pulse, w - eps)
    return _assign(pol, grid, same, swap)


def outgoing_spectra(params: SystemParams, pulse: PulseSpec, grid: FrequencyGrid) -> SpectralState:
    return outgoing_spectra_nondegenerate(params, pulse, grid)


# -- adiabatic limit ----------------------------------------------------------


@dataclass(frozen=True)
class AdiabaticCoeffs:
    """Long-pulse map ``|H,1> -> alpha |H,1> + beta |V,0>``."""

    alpha: complex
    beta: complex
    epsilon: float = 0.0
    kappa: float = 1.0

    @property
    def theta(self) -> float:
        """Phase ``theta`` in ``beta = -exp(-i theta)(1+i)/2`` at the tuned
        nondegenerate point: the argument of ``(kappa + i eps/2)/(kappa - i eps/2)``."""
        return 2.0 * math.atan(self.epsilon / (2.0 * self.kappa))


def adiabatic_coeffs(params: SystemParams, carrier: float) -> AdiabaticCoeffs:
    """Scattering coefficients evaluated at the H-pulse carrier ``carrier``.

    The swapped (V) coefficient is evaluated where the V photon peaks,
    ``carrier + eps``.
    """
    g2, k, dh = params.g**2, params.kappa, params.delta_h
    eps = params.epsilon()
    D = carrier
    den = g2 * (2 + 1j * eps / (k - 1j * (D + eps))) - 1j * (D + dh) * (k - 1j * D)
    alpha = 1 - 2 * g2 * k / (k + 1j * D) / den
    beta = -(k + 1j * D) / (k + 1j * (D + eps)) * (1 - alpha)
    return AdiabaticCoeffs(complex(alpha), complex(beta), eps, k)


def _psi_parts(params: SystemParams, omega):
    g2, k, da = params.g**2, params.kappa, params.delta_h
    w = np.asarray(omega, dtype=float)
    x = (w + da) * (k * k + w * w) - 2 * g2 * w
    dx = 3 * w * w + 2 * da * w + k * k - 2 * g2
    ddx = 6 * w + 2 * da
    return 2 * g2 * k, x, dx, ddx


def psi_phase(params: SystemParams, omega):
    """Phase ``psi`` with ``exp(2i psi)`` the reflection factor of the ``|+>`` state.

    ``atan2`` is used with a positive second argument, so this is the principal
    ``arctan`` with no branch jumps.
    """
    _require_degenerate(params)
    K, x, _, _ = _psi_parts(params, omega)
    return np.arctan2(x, K)


def psi_derivatives(params: SystemParams, omega):
    """First and second derivatives of :func:`psi_phase` in ``omega``."""
    _require_degenerate(params)
    K, x, dx, ddx = _psi_parts(params, omega)
    q = K * K + x * x
    d1 = K * dx / q
    d2 = K * ddx / q - 2 * K * x * dx * dx / (q * q)
    return d1, d2


def infidelity_quadratic_term(params: SystemParams, carrier: float) -> float:
    """Coefficient ``c`` in ``1 - F^2 = c / T^2 + O(T^-4)`` for a Gaussian pulse."""
    _require_degenerate(params)
    g2, k, da = params.g**2, params.kappa, params.delta_h
    D = carrier
    num = 16 * g2 * g2 * k * k * (-2 * g2 + 2 * da * D + 3 * D * D + k * k) ** 2
    den = (4 * g2 * g2 * k * k + ((D + da) * (D * D + k * k) - 2 * g2 * D) ** 2) ** 2
    return float(num / den)


def phase_quadratic_term(params: SystemParams, carrier: float) -> float:
    """Coefficient ``c`` in ``Phi - phi = c / T^2 + O(T^-4)``, i.e. ``psi''/2``."""
    return float(psi_derivatives(params, carrier)[1]) / 2


# -- fidelity -----------------------------------------------------------------


def _gate_result(z: complex, phi_target: float) -> GateResult:
    F = abs(z)
    if F > 1 + 1e-8:
        raise ArithmeticError(f"fidelity {F!r} exceeds 1: the grid does not resolve the pulse")
    return GateResult(fidelity=F, phase=phi_target + np.angle(z) / 2, phi_target=phi_target, overlap=z)


def fidelity(
    params: SystemParams,
    pulse: PulseSpec,
    grid: FrequencyGrid,
    phi_target: float = SQRT_SWAP_PHASE,
) -> GateResult:
    """Gate fidelity ``F`` and phase ``Phi`` from ``F exp(2i Phi) = int exp(2i psi) |C|^2 dw``.

    The reported phase is the branch of ``Phi`` nearest ``phi_target``.
    """
    _require_degenerate(params)
    grid.check_covers(pulse)
    K, x, _, _ = _psi_parts(params, grid.points)
    density = gaussian_spectrum(pulse, grid.points) ** 2
    z = complex(grid.integrate((K + 1j * x) / (K - 1j * x) * density))
    return _gate_result(z * np.exp(-2j * phi_target), phi_target)


def ideal_output(
    grid: FrequencyGrid,
    h_pulse: PulseSpec,
    v_pulse: PulseSpec,
    phi: float = SQRT_SWAP_PHASE,
    theta: float = 0.0,
) -> SpectralState:
    """Ideal gate output for the input ``(|H,1> + |V,0>)/sqrt(2)``.

    The ideal map is ``|H,1> -> alpha |H,1> + beta_h |V,0>`` and
    ``|V,0> -> alpha |V,0> + beta_v |H,1>`` with ``alpha = -i exp(i phi) sin(phi)``
    and ``beta_{h,v} = -exp(i phi) cos(phi) exp(-/+ i theta)``.  A swapped
    photon keeps its spectral shape but moves to the other pulse's carrier.
    """
    split = v_pulse.carrier_detuning - h_pulse.carrier_detuning
    w = grid.points
    ch = gaussian_spectrum(h_pulse, w)
    cv = gaussian_spectrum(v_pulse, w)
    ch_moved = gaussian_spectrum(h_pulse, w - split)
    cv_moved = gaussian_spectrum(v_pulse, w + split)
    alpha = -1j * np.exp(1j * phi) * math.sin(phi)
    beta = -np.exp(1j * phi) * math.cos(phi)
    c_h = (alpha * ch + beta * np.exp(1j * theta) * cv_moved) / math.sqrt(2)
    c_v = (alpha * cv + beta * np.exp(-1j * theta) * ch_moved) / math.sqrt(2)
    return SpectralState(grid, c_h, c_v)


def plus_state_output(
    params: SystemParams, h_pulse: PulseSpec, v_pulse: PulseSpec, grid: FrequencyGrid
) -> SpectralState:
    """Actual output for the input ``(|H,1> + |V,0>)/sqrt(2)``."""
    out_h = outgoing_spectra(params, h_pulse.with_polarization(Polarization.H), grid)
    out_v = outgoing_spectra(params, v_pulse.with_polarization(Polarization.V), grid)
    return (out_h + out_v).scaled(1 / math.sqrt(2))


def fidelity_nondegenerate(
    params: SystemParams,
    pulse: PulseSpec,
    grid: FrequencyGrid,
    target: SpectralState,
    phi_target: float = SQRT_SWAP_PHASE,
    v_pulse: PulseSpec | None = None,
) -> GateResult:
    """Overlap fidelity of the actual output for ``(|H,1> + |V,0>)/sqrt(2)`` with ``target``.

    ``pulse`` is the H pulse; the V pulse defaults to the same shape displaced
    by the splitting ``eps``, so that both photons end up on matching carriers.
    With ``target`` the ideal output (an eigenstate of the ideal gate with
    eigenvalue ``-exp(2i phi)``), ``<target|actual> = F exp(2i (Phi - phi))``,
    which at zero splitting coincides with :func:`fidelity`.
    """
    if not grid.same_as(target.grid):
        raise ValueError("target lives on a different grid")
    if v_pulse is None:
        v_pulse = pulse.shifted(params.epsilon())
    actual = plus_state_output(params, pulse, v_pulse, grid)
    return _gate_result(target.overlap(actual), phi_target)


# -- cavity-induced phase -------------------------------------------------------


def appendix_phase_factor(kappa: float, omega):
    """Unit-modulus factor ``(kappa + i w)/(kappa - i w)`` picked up going in and
    out of an empty cavity."""
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    w = np.asarray(omega, dtype=float)
    return (kappa + 1j * w) / (kappa - 1j * w)


def apply_appendix_phase(state: SpectralState, kappa: float) -> SpectralState:
    f = appendix_phase_factor(kappa, state.omega)
    return SpectralState(state.grid, f * state.c_h, f * state.c_v)
