"""Detuning conditions for the SWAP-family gates.

Every solver returns carrier detunings ``Delta`` (pulse minus cavity) and atom
detunings ``delta_a`` (cavity minus atom) in units of ``kappa``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Condition(enum.Enum):
    SQRT_SWAP_ADIABATIC = "sqrt-swap"
    SQRT_SWAP_NONADIABATIC = "sqrt-swap-nonadiabatic"
    SWAP_ADIABATIC = "swap"
    SWAP_NONADIABATIC = "swap-nonadiabatic"
    NONDEGENERATE_SQRT_SWAP = "nondegenerate"


@dataclass(frozen=True)
class DetuningSolution:
    carrier_detuning: float
    atom_detuning: float
    branch: int
    condition: Condition
    g: float
    kappa: float = 1.0
    epsilon: float = 0.0

    def residuals(self) -> dict[str, float]:
        """Absolute residuals of the defining equations at this solution."""
        g2, k, D, da = self.g**2, self.kappa, self.carrier_detuning, self.atom_detuning
        c = self.condition
        out = {}
        if c in (Condition.SQRT_SWAP_ADIABATIC, Condition.SQRT_SWAP_NONADIABATIC):
            out["sqrt_swap_phase"] = sqrt_swap_residual(g2, k, D, da)
        if c is Condition.SQRT_SWAP_NONADIABATIC:
            out["quartic"] = quartic_residual(self.g, k, D)
            out["first_order"] = 2 * da * D + 3 * D * D + k * k - 2 * g2
        if c in (Condition.SWAP_ADIABATIC, Condition.SWAP_NONADIABATIC):
            out["swap_phase"] = (D + da) * (k * k + D * D) - 2 * g2 * D
        if c is Condition.SWAP_NONADIABATIC:
            out["first_order"] = 2 * da * D + 3 * D * D + k * k - 2 * g2
        if c is Condition.NONDEGENERATE_SQRT_SWAP:
            eps = self.epsilon
            out["carrier"] = D + eps / 2
            out["atom"] = da - eps / 2 - 2 * g2 / (k * (1 + eps * eps / (4 * k * k)))
        return {name: abs(v) for name, v in out.items()}

    def max_residual(self) -> float:
        return max(self.residuals().values())


def sqrt_swap_residual(g2: float, kappa: float, Delta: float, delta_a: float) -> float:
    return (Delta + delta_a) * (kappa**2 + Delta**2) - 2 * g2 * (Delta + kappa)


def quartic_coefficients(g: float, kappa: float) -> np.ndarray:
    """Coefficients (highest power first) of the quartic in ``Delta`` whose real
    roots cancel the ``1/T^2`` infidelity of a sqrt(SWAP) gate."""
    g2, k2 = g * g, kappa * kappa
    return np.array([1.0, 0.0, 2 * (g2 + k2), 4 * g2 * kappa, k2 * (k2 - 2 * g2)])


def quartic_residual(g: float, kappa: float, Delta: float) -> float:
    return float(np.polyval(quartic_coefficients(g, kappa), Delta))


def sqrt_swap_delta_a(g: float, kappa: float, Delta: float) -> float:
    """Atom detuning giving gate phase pi/4 (sqrt(SWAP)) at carrier ``Delta``."""
    return 2 * g * g * (Delta + kappa) / (kappa * kappa + Delta * Delta) - Delta


def swap_delta_a(g: float, kappa: float, Delta: float) -> float:
    """Atom detuning giving gate phase 0 (SWAP) at carrier ``Delta``."""
    return Delta * (2 * g * g / (kappa * kappa + Delta * Delta) - 1)


def nondegenerate_sqrt_swap(g: float, kappa: float, epsilon: float) -> tuple[float, float, float]:
    """H-pulse carrier, H-transition detuning and phase ``theta`` for a
    sqrt(SWAP) gate with ground-state splitting ``epsilon``.

    The solution is unique.  ``theta`` is the argument of
    ``(kappa + i eps/2)/(kappa - i eps/2)``; the swapped amplitudes carry
    ``exp(-/+ i theta)``.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    Delta_h = -epsilon / 2
    delta_h = epsilon / 2 + 2 * g * g / (kappa * (1 + epsilon**2 / (4 * kappa**2)))
    theta = 2 * math.atan(epsilon / (2 * kappa))
    return Delta_h, delta_h, theta


def nondegenerate_solution(g: float, kappa: float, epsilon: float) -> DetuningSolution:
    D, dh, _ = nondegenerate_sqrt_swap(g, kappa, epsilon)
    return DetuningSolution(D, dh, 1, Condition.NONDEGENERATE_SQRT_SWAP, g, kappa, epsilon)


def first_order_epsilon_error(g: float, kappa: float) -> float:
    """Slope ``d alpha / d eps`` when the splitting is ignored (both pulses on
    the cavity resonance, atom detunings at their tuned values)."""
    if not g > 0:
        raise ValueError("g must be positive")
    return -1 / (4 * kappa) + kappa / (8 * g * g)


def mis_overlap_penalty(epsilon: float, T: float) -> float:
    """``1 - |<a|b>|^2`` for two Gaussian pulse spectra of duration ``T``
    displaced by ``epsilon``."""
    if not T > 0:
        raise ValueError("T must be positive")
    return -math.expm1(-(epsilon * T) ** 2 / 4)


def good_cavity_threshold() -> float:
    """Smallest ``2 g^2 / kappa^2`` for which the quartic has real roots."""
    return 12 * math.sqrt(3) - 20


def polynomial_roots(coeffs) -> np.ndarray:
    """Roots of a polynomial (highest power first) as eigenvalues of its companion matrix."""
    c = np.asarray(coeffs, dtype=complex)
    c = c / c[0]
    n = c.size - 1
    comp = np.zeros((n, n), dtype=complex)
    comp[0, :] = -c[1:]
    comp[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(comp)


def _newton_polish(coeffs, x: float, tol: float = 1e-12, max_iter: int = 50) -> float:
    dcoeffs = np.polyder(coeffs)
    for _ in range(max_iter):
        f = np.polyval(coeffs, x)
        df = np.polyval(dcoeffs, x)
        if df == 0:
            break
        step = f / df
        x -= step
        if abs(step) <= tol * max(1.0, abs(x)):
            break
    return float(x)


def real_roots(coeffs, imag_tol: float = 1e-8) -> np.ndarray:
    """Sorted real roots, Newton-polished."""
    coeffs = np.asarray(coeffs, dtype=float)
    roots = polynomial_roots(coeffs)
    keep = np.abs(roots.imag) < imag_tol * np.maximum(1.0, np.abs(roots))
    out = sorted(_newton_polish(coeffs, r.real) for r in roots[keep])
    return np.array(out)


def _label(sols: list[tuple[float, float]], condition, g, kappa) -> list[DetuningSolution]:
    # branch 1 is the largest carrier detuning
    sols = sorted(sols, key=lambda s: -s[0])
    return [DetuningSolution(D, da, i + 1, condition, g, kappa) for i, (D, da) in enumerate(sols)]


def nonadiabatic_sqrt_swap(g: float, kappa: float) -> list[DetuningSolution]:
    """All ``(Delta, delta_a)`` giving sqrt(SWAP) with no ``1/T^2`` infidelity.

    Empty when the cavity is below :func:`good_cavity_threshold`.
    """
    if not (g > 0 and kappa > 0):
        raise ValueError("g and kappa must be positive")
    # At a root the phase condition and the first-order condition hold together;
    # delta_a is taken from the phase condition, which unlike the other is regular at Delta = 0.
    out = [(float(D), sqrt_swap_delta_a(g, kappa, D)) for D in real_roots(quartic_coefficients(g, kappa))]
    return _label(out, Condition.SQRT_SWAP_NONADIABATIC, g, kappa)


def swap_nonadiabatic_delta(g: float, kappa: float) -> list[DetuningSolution]:
    """Both ``(Delta, delta_a)`` giving SWAP with no ``1/T^2`` infidelity; empty
    unless ``2 g^2 > kappa^2``."""
    if not 2 * g * g > kappa * kappa:
        return []
    D2 = g * math.sqrt(g * g + 4 * kappa * kappa) - g * g - kappa * kappa
    D = math.sqrt(D2)
    sols = [(s, swap_delta_a(g, kappa, s)) for s in (D, -D)]
    return _label(sols, Condition.SWAP_NONADIABATIC, g, kappa)


def sqrt_swap_solution(g: float, kappa: float, Delta: float) -> DetuningSolution:
    return DetuningSolution(Delta, sqrt_swap_delta_a(g, kappa, Delta), 1, Condition.SQRT_SWAP_ADIABATIC, g, kappa)


def swap_solution(g: float, kappa: float, Delta: float) -> DetuningSolution:
    return DetuningSolution(Delta, swap_delta_a(g, kappa, Delta), 1, Condition.SWAP_ADIABATIC, g, kappa)


def solve(condition: Condition | str, g: float, kappa: float = 1.0, Delta: float = 0.0,
          epsilon: float = 0.0) -> list[DetuningSolution]:
    """Dispatch to the solver for ``condition``."""
    condition = Condition(condition)
    if condition is Condition.SQRT_SWAP_ADIABATIC:
        return [sqrt_swap_solution(g, kappa, Delta)]
    if condition is Condition.SWAP_ADIABATIC:
        return [swap_solution(g, kappa, Delta)]
    if condition is Condition.SQRT_SWAP_NONADIABATIC:
        return nonadiabatic_sqrt_swap(g, kappa)
    if condition is Condition.SWAP_NONADIABATIC:
        return swap_nonadiabatic_delta(g, kappa)
    return [nondegenerate_solution(g, kappa, epsilon)]
