"""Data recipes for the infidelity and phase-error sweeps.

Each recipe returns a :class:`Table` whose rows are ordered by sweep index,
independently of how many workers evaluated them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from scipy.optimize import minimize_scalar

from . import spectral, tuning
from .core import PulseSpec, SystemParams, make_grid

FIGURES = ("fig5", "fig6", "fig7", "fig8", "fig9")


@dataclass
class Table:
    columns: list[str]
    rows: list[list[float]]
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)


def parallel_map(fn, items, workers: int = 1) -> list:
    """Ordered map, optionally over a process pool."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _log10(x: float) -> float:
    return math.log10(x) if x > 0 else float("-inf")


def gate(g: float, delta_a: float, Delta: float, T: float, kappa: float = 1.0,
         phi_target: float = spectral.SQRT_SWAP_PHASE, points_per_sigma: int = 10, halfwidth_sigmas: int = 12):
    params = SystemParams.degenerate(g, delta_a, kappa)
    pulse = PulseSpec(T, Delta)
    return spectral.fidelity(params, pulse, make_grid(pulse, points_per_sigma, halfwidth_sigmas), phi_target)


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    return float(np.polyfit(np.log10(x), np.log10(y), 1)[0])


# -- fig5: infidelity against carrier detuning ----------------------------------


def _fig5_point(Delta, g, kappa, T, grid_opts):
    da = tuning.sqrt_swap_delta_a(g, kappa, Delta)
    return gate(g, da, Delta, T, kappa, **grid_opts).infidelity


def fig5(T: float = 10.0, g2: float = 169 / 175, kappa: float = 1.0, Delta_min: float = 0.0,
         Delta_max: float = 0.4, n_points: int = 81, workers: int = 1, **grid_opts) -> Table:
    g = math.sqrt(g2)
    Ds = np.linspace(Delta_min, Delta_max, n_points)
    inf = parallel_map(partial(_fig5_point, g=g, kappa=kappa, T=T, grid_opts=grid_opts), Ds, workers)
    return Table(["Delta", "log10_infidelity"], [[D, _log10(v)] for D, v in zip(Ds, inf)],
                 {"T": T, "g2": g2, "kappa": kappa})


def fig5_minimum(T: float = 10.0, g2: float = 169 / 175, kappa: float = 1.0,
                 bracket: tuple[float, float] = (0.0, 0.4), **grid_opts) -> tuple[float, float]:
    """Location and value of the infidelity minimum of the fig5 curve."""
    g = math.sqrt(g2)
    res = minimize_scalar(lambda D: _fig5_point(D, g, kappa, T, grid_opts), bounds=bracket,
                          method="bounded", options={"xatol": 1e-7})
    return float(res.x), float(res.fun)


# -- fig6 / fig9: infidelity against pulse duration -----------------------------


def _duration_point(T, sols, kappa, phi_target, grid_opts):
    return [gate(s.g, s.atom_detuning, s.carrier_detuning, T, kappa, phi_target, **grid_opts).infidelity
            for s in sols]


def _duration_sweep(sols, kappa, phi_target, T_min, T_max, n_points, workers, grid_opts) -> Table:
    Ts = np.geomspace(T_min, T_max, n_points)
    vals = parallel_map(partial(_duration_point, sols=sols, kappa=kappa, phi_target=phi_target,
                                grid_opts=grid_opts), Ts, workers)
    cols = ["T"] + [f"log10_infidelity_branch{s.branch}" for s in sols]
    rows = [[T] + [_log10(v) for v in row] for T, row in zip(Ts, vals)]
    meta = {f"branch{s.branch}": (s.carrier_detuning, s.atom_detuning) for s in sols}
    for s in sols:
        meta[f"slope_branch{s.branch}"] = loglog_slope(Ts, [r[s.branch - 1] for r in vals])
    return Table(cols, rows, meta)


def fig6(g: float = 1.0, kappa: float = 1.0, T_min: float = 5.0, T_max: float = 40.0,
         n_points: int = 15, workers: int = 1, **grid_opts) -> Table:
    sols = tuning.nonadiabatic_sqrt_swap(g, kappa)
    return _duration_sweep(sols, kappa, spectral.SQRT_SWAP_PHASE, T_min, T_max, n_points, workers, grid_opts)


def fig9(g: float = 1.0, kappa: float = 1.0, T_min: float = 5.0, T_max: float = 40.0,
         n_points: int = 15, workers: int = 1, **grid_opts) -> Table:
    sols = tuning.swap_nonadiabatic_delta(g, kappa)
    return _duration_sweep(sols, kappa, spectral.SWAP_PHASE, T_min, T_max, n_points, workers, grid_opts)


# -- fig7 / fig8: infidelity and phase error against g/kappa --------------------


def _coupling_point(g, branch, kappa, durations, grid_opts):
    sols = {s.branch: s for s in tuning.nonadiabatic_sqrt_swap(g, kappa)}
    if branch not in sols:
        return [float("nan")] * (2 * len(durations))
    s = sols[branch]
    out = []
    for T in durations:
        res = gate(g, s.atom_detuning, s.carrier_detuning, T, kappa, **grid_opts)
        out += [_log10(res.infidelity), _log10(abs(res.phase_error))]
    return out


def coupling_sweep(branch: int, kappa: float = 1.0, g_min: float | None = None, g_max: float = 2.0,
                   n_points: int = 60, durations=(10.0, 5.0, 2.0), workers: int = 1, **grid_opts) -> Table:
    if g_min is None:
        g_min = kappa * math.sqrt(tuning.good_cavity_threshold() / 2) * (1 + 1e-9)
    gs = np.linspace(g_min, g_max, n_points)
    vals = parallel_map(partial(_coupling_point, branch=branch, kappa=kappa, durations=tuple(durations),
                                grid_opts=grid_opts), gs, workers)
    cols = ["g_over_kappa"]
    for T in durations:
        cols += [f"log10_infidelity_T{T:g}", f"log10_phase_error_T{T:g}"]
    return Table(cols, [[g / kappa] + row for g, row in zip(gs, vals)], {"branch": branch})


def fig7(**kw) -> Table:
    return coupling_sweep(1, **kw)


def fig8(**kw) -> Table:
    return coupling_sweep(2, **kw)


def figure(name: str, **kw) -> Table:
    if name not in FIGURES:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    return globals()[name](**kw)
