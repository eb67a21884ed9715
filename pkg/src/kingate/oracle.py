"""Time-domain integration of the atom amplitude, independent of :mod:`kingate.spectral`.

The excited-state amplitude obeys a Volterra equation whose memory kernels are
``exp(-(kappa + i delta_p) tau)`` for the two transitions ``p``.  Each kernel is
replaced by an auxiliary amplitude ``s_p`` with ``s_p' = C_e - (kappa + i delta_p) s_p``,
and the cavity-filtered incident field by ``u`` with
``u' = -(kappa + i delta_in) u + exp(-i delta_in t) b(t)``, where ``b(t)`` is the
incident pulse obtained by quadrature over its spectrum.  Then

    C_e' = -g^2 (s_h + s_v) - i g sqrt(kappa/pi) u.

The outgoing spectra follow from time integrals of ``C_e(t) exp(i nu t)``, which
are accumulated alongside the state.  After the pulse has passed the system is
linear and source free, so the remaining tail of those integrals is added in
closed form from the final state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import RK45

from .core import (
    FrequencyGrid,
    Polarization,
    PulseSpec,
    SpectralState,
    SystemParams,
    gaussian_spectrum,
    make_grid,
)

# Coupling of the atom to the continuum of incident modes.  With spectra
# normalized as int |C(w)|^2 dw = 1 the mode sum over k becomes an integral
# over w, and the per-mode coupling g sqrt(2 c kappa / L)/(kappa -/+ i w)
# turns into g sqrt(kappa / pi)/(kappa -/+ i w).
def coupling(params: SystemParams) -> float:
    return params.g * math.sqrt(params.kappa / math.pi)


@dataclass(frozen=True)
class TimeDomainState:
    t: float
    c_e: complex
    s_h: complex
    s_v: complex


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Result of :func:`integrate`.

    ``t``, ``c_e``, ``s_h``, ``s_v`` are sampled at every accepted step.
    ``probe_frequencies`` and ``transform`` hold ``int C_e(t) exp(i nu t) dt``
    over the whole time axis (tail included when ``tail_closed``).
    """

    params: SystemParams
    pulse: PulseSpec
    t: np.ndarray
    c_e: np.ndarray
    s_h: np.ndarray
    s_v: np.ndarray
    probe_frequencies: np.ndarray
    transform: np.ndarray
    final_state: np.ndarray
    tail_closed: bool
    n_steps: int

    def __len__(self):
        return self.t.size

    def state(self, i: int) -> TimeDomainState:
        return TimeDomainState(float(self.t[i]), complex(self.c_e[i]), complex(self.s_h[i]), complex(self.s_v[i]))

    @property
    def decayed(self) -> bool:
        return abs(self.c_e[-1]) < 1e-10


def _system(params: SystemParams, pol: Polarization):
    """Generator matrix of the source-free dynamics of ``(C_e, s_in, s_out, u)``."""
    g2, k = params.g**2, params.kappa
    d_in, d_out = params.detuning(pol), params.detuning(pol.other)
    M = np.zeros((4, 4), dtype=complex)
    M[0, 1] = M[0, 2] = -g2
    M[0, 3] = -1j * coupling(params)
    M[1, 0] = M[2, 0] = 1.0
    M[1, 1] = -(k + 1j * d_in)
    M[2, 2] = -(k + 1j * d_out)
    M[3, 3] = -(k + 1j * d_in)
    return M


def _incident_field(pulse: PulseSpec, grid: FrequencyGrid, kappa: float):
    """``b(t) = int C(w) exp(-i w t) dw`` and the filtered field
    ``f(t) = int C(w) exp(-i w t)/(kappa - i w) dw``, both by quadrature."""
    w = grid.points
    wc = grid.weights * gaussian_spectrum(pulse, w)
    wf = wc / (kappa - 1j * w)

    def b(t):
        return np.dot(wc, np.exp(-1j * w * t))

    def f(t):
        return np.dot(wf, np.exp(-1j * w * t))

    return b, f


def _pulse_grid(pulse: PulseSpec) -> FrequencyGrid:
    return make_grid(pulse, points_per_sigma=10, halfwidth_sigmas=12)


def integrate(
    params: SystemParams,
    pulse: PulseSpec,
    t_span: tuple[float, float] | None = None,
    dt: float | None = None,
    probe_frequencies=None,
    rtol: float = 1e-10,
    atol: float = 1e-13,
    close_tail: bool = True,
) -> Trajectory:
    """Integrate the atom dynamics across the pulse.

    Parameters
    ----------
    t_span
        Integration window; the pulse peaks at ``t = 0``.  Defaults to
        ``(-8T, 8T)``.
    dt
        ``None`` selects the adaptive Dormand-Prince 5(4) pair with relative
        tolerance ``rtol``; a number selects fixed-step classical RK4.
    probe_frequencies
        Frequencies ``nu`` at which ``int C_e(t) exp(i nu t) dt`` is accumulated.
    close_tail
        Add the closed-form contribution of ``t > t_span[1]`` to the accumulated
        transforms.
    """
    T = pulse.duration
    t0, t1 = t_span if t_span is not None else (-8 * T, 8 * T)
    if not t1 > t0:
        raise ValueError("empty time span")
    pol = pulse.polarization
    d_in = params.detuning(pol)
    M = _system(params, pol)
    nu = np.zeros(0) if probe_frequencies is None else np.asarray(probe_frequencies, dtype=float)
    b, f = _incident_field(pulse, _pulse_grid(pulse), params.kappa)

    def rhs(t, y):
        dy = np.empty_like(y)
        dy[:4] = M @ y[:4]
        dy[3] += np.exp(-1j * d_in * t) * b(t)
        dy[4:] = y[0] * np.exp(1j * nu * t)
        return dy

    y0 = np.zeros(4 + nu.size, dtype=complex)
    y0[3] = np.exp(-1j * d_in * t0) * f(t0)

    ts, ys = [t0], [y0[:4].copy()]
    if dt is None:
        solver = RK45(rhs, t0, y0, t1, rtol=rtol, atol=atol, first_step=min(1.0, T) / 50)
        while solver.status == "running":
            solver.step()
            ts.append(solver.t)
            ys.append(solver.y[:4].copy())
        if solver.status != "finished":
            raise RuntimeError("time-domain integration failed")
        y = solver.y
    else:
        n = int(math.ceil((t1 - t0) / dt - 1e-9))
        h = (t1 - t0) / n
        y = y0
        t = t0
        for i in range(n):
            k1 = rhs(t, y)
            k2 = rhs(t + h / 2, y + h / 2 * k1)
            k3 = rhs(t + h / 2, y + h / 2 * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t = t0 + (i + 1) * h
            ts.append(t)
            ys.append(y[:4].copy())
    ys = np.array(ys)
    transform = y[4:].copy()
    if close_tail and nu.size:
        # int_{t1}^inf e1 . exp(M (t - t1)) y(t1) exp(i nu t) dt = -e1 . (M + i nu)^-1 y(t1) exp(i nu t1)
        A = M[None, :, :] + 1j * nu[:, None, None] * np.eye(4)[None]
        sol = np.linalg.solve(A, np.broadcast_to(y[:4], (nu.size, 4))[..., None])[..., 0]
        transform = transform - sol[:, 0] * np.exp(1j * nu * t1)
    s_h, s_v = (ys[:, 1], ys[:, 2]) if pol is Polarization.H else (ys[:, 2], ys[:, 1])
    return Trajectory(
        params=params,
        pulse=pulse,
        t=np.array(ts),
        c_e=ys[:, 0],
        s_h=s_h,
        s_v=s_v,
        probe_frequencies=nu,
        transform=transform,
        final_state=y[:4].copy(),
        tail_closed=close_tail,
        n_steps=len(ts) - 1,
    )


def probe_frequencies_for(params: SystemParams, pulse: PulseSpec, grid: FrequencyGrid) -> np.ndarray:
    """Frequencies needed by :func:`outgoing_spectra_timedomain` on ``grid``."""
    pol = pulse.polarization
    return np.concatenate([grid.points + params.detuning(pol), grid.points + params.detuning(pol.other)])


def outgoing_spectra_timedomain(
    trajectory: Trajectory, params: SystemParams, pulse: PulseSpec, grid: FrequencyGrid
) -> SpectralState:
    """Outgoing spectra from the accumulated transforms of ``C_e``.

    ``C_in(w, inf) = C_in(w, 0) - i g sqrt(kappa/pi)/(kappa + i w) * Ce~(w + delta_in)``
    and likewise for the other polarization with ``delta_out`` and no incident term.
    """
    need = probe_frequencies_for(params, pulse, grid)
    if trajectory.probe_frequencies.shape != need.shape or not np.allclose(
        trajectory.probe_frequencies, need, rtol=0, atol=1e-12
    ):
        raise ValueError("trajectory was not integrated with the probe frequencies for this grid")
    if not trajectory.tail_closed and not trajectory.decayed:
        raise ValueError(f"trajectory has not decayed: |C_e(t_end)| = {abs(trajectory.c_e[-1]):.3g}")
    n = grid.points.size
    w = grid.points
    resp = -1j * coupling(params) / (params.kappa + 1j * w)
    same = gaussian_spectrum(pulse, w) + resp * trajectory.transform[:n]
    swap = resp * trajectory.transform[n:]
    if pulse.polarization is Polarization.H:
        return SpectralState(grid, same, swap)
    return SpectralState(grid, swap, same)


def timedomain_spectra(
    params: SystemParams, pulse: PulseSpec, grid: FrequencyGrid, dt: float | None = None, **kwargs
) -> SpectralState:
    """Integrate and extract outgoing spectra in one call."""
    traj = integrate(params, pulse, dt=dt, probe_frequencies=probe_frequencies_for(params, pulse, grid), **kwargs)
    return outgoing_spectra_timedomain(traj, params, pulse, grid)


# -- randomized equivalence suite ---------------------------------------------

SUITE_RANGES = {"g": (0.5, 3.0), "Delta": (-2.0, 2.0), "delta_a": (-4.0, 4.0), "T": (2.0, 20.0), "epsilon": (-1.0, 1.0)}


@dataclass(frozen=True)
class SuiteCase:
    params: SystemParams
    pulse: PulseSpec

    def grid(self, points_per_sigma: int = 10, halfwidth_sigmas: int = 12) -> FrequencyGrid:
        pol = self.pulse.polarization
        eps_in = self.params.detuning(pol) - self.params.detuning(pol.other)
        return make_grid(self.pulse, points_per_sigma, halfwidth_sigmas, shift=eps_in)

    def as_dict(self) -> dict:
        p, u = self.params, self.pulse
        return {"g": p.g, "kappa": p.kappa, "delta_h": p.delta_h, "delta_v": p.delta_v,
                "T": u.duration, "Delta": u.carrier_detuning, "polarization": u.polarization.value}


def random_suite(seed: int = 0, draws: int = 30, kappa: float = 1.0) -> list[SuiteCase]:
    """Reproducible parameter draws covering the validated ranges."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(draws):
        x = {name: rng.uniform(*bounds) for name, bounds in SUITE_RANGES.items()}
        pol = Polarization.H if rng.random() < 0.5 else Polarization.V
        params = SystemParams(x["g"] * kappa, kappa, x["delta_a"] * kappa, (x["delta_a"] - x["epsilon"]) * kappa)
        cases.append(SuiteCase(params, PulseSpec(x["T"] / kappa, x["Delta"] * kappa, pol)))
    return cases


def case_discrepancy(case: SuiteCase, spectral_fn=None, dt: float | None = None) -> float:
    """L2 distance between the time-domain spectra and ``spectral_fn``'s spectra."""
    if spectral_fn is None:
        from .spectral import outgoing_spectra as spectral_fn
    grid = case.grid()
    reference = spectral_fn(case.params, case.pulse, grid)
    return reference.l2_distance(timedomain_spectra(case.params, case.pulse, grid, dt=dt))
