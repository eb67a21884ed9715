import math

import numpy as np
import pytest

from kingate import figures, tuning


def test_fig5_shape_and_dip():
    t = figures.fig5(n_points=21)
    assert t.columns == ["Delta", "log10_infidelity"]
    D, y = t.column("Delta"), t.column("log10_infidelity")
    assert D[0] == 0.0 and D[-1] == pytest.approx(0.4)
    i = int(np.argmin(y))
    assert 0.15 < D[i] < 0.25
    assert -3.7 < y[i] < -3.3


def test_fig5_minimum_location():
    D, val = figures.fig5_minimum()
    assert D == pytest.approx(0.18898, abs=2e-5)
    assert val == pytest.approx(3.369e-4, rel=1e-3)


def test_parallel_rows_are_ordered():
    serial = figures.fig5(n_points=6)
    parallel = figures.fig5(n_points=6, workers=2)
    assert serial.rows == parallel.rows


def test_duration_sweep_meta():
    t = figures.fig6(n_points=5)
    assert t.columns == ["T", "log10_infidelity_branch1", "log10_infidelity_branch2"]
    assert t.meta["branch1"][0] > t.meta["branch2"][0]
    assert -4.3 < t.meta["slope_branch1"] < -3.7


def test_coupling_sweep_starts_at_threshold():
    t = figures.fig7(n_points=4, durations=(10.0,))
    g = t.column("g_over_kappa")
    assert 2 * g[0] ** 2 == pytest.approx(tuning.good_cavity_threshold(), rel=1e-8)
    assert np.all(np.isfinite(t.column("log10_infidelity_T10")))
    t8 = figures.fig8(n_points=3, durations=(5.0,))
    assert t8.meta["branch"] == 2


def test_coupling_sweep_below_threshold_is_nan():
    t = figures.coupling_sweep(1, g_min=0.3, g_max=0.4, n_points=2, durations=(10.0,))
    assert all(math.isnan(v) for v in t.column("log10_infidelity_T10"))


def test_loglog_slope_exact():
    T = np.geomspace(1, 100, 7)
    assert figures.loglog_slope(T, 3.0 * T**-4) == pytest.approx(-4.0)


def test_unknown_figure():
    with pytest.raises(ValueError):
        figures.figure("fig1")
