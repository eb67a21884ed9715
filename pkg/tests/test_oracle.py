import numpy as np
import pytest

from kingate import Polarization, PulseSpec, SystemParams, make_grid, oracle, spectral
from kingate.core import SpectralState


@pytest.fixture(scope="module")
def case():
    params = SystemParams(1.1, 1.0, 0.9, 0.4)
    pulse = PulseSpec(4.0, 0.2)
    grid = make_grid(pulse, shift=params.epsilon())
    return params, pulse, grid


def test_matches_frequency_domain(case):
    params, pulse, grid = case
    td = oracle.timedomain_spectra(params, pulse, grid)
    fd = spectral.outgoing_spectra(params, pulse, grid)
    assert td.l2_distance(fd) < 1e-8
    assert td.norm() == pytest.approx(1.0, abs=1e-8)


def test_v_polarized_input():
    params = SystemParams(0.8, 1.0, -0.5, 0.3)
    pulse = PulseSpec(3.0, -0.4, Polarization.V)
    eps_in = params.delta_v - params.delta_h
    grid = make_grid(pulse, shift=eps_in)
    td = oracle.timedomain_spectra(params, pulse, grid)
    assert td.l2_distance(spectral.outgoing_spectra(params, pulse, grid)) < 1e-8


def test_weak_coupling_leaves_pulse_untouched():
    # atomic line kept outside the pulse band so the narrow g^2 feature is not sampled
    params = SystemParams.degenerate(1e-4, 5.0)
    pulse = PulseSpec(5.0)
    grid = make_grid(pulse)
    td = oracle.timedomain_spectra(params, pulse, grid)
    assert td.l2_distance(spectral.incident_state(pulse, grid)) < 1e-3


def test_transform_matches_excited_spectrum(case):
    params, pulse, _ = case
    nu = np.linspace(-1, 2, 9)
    traj = oracle.integrate(params, pulse, probe_frequencies=nu)
    assert np.allclose(traj.transform, spectral.excited_spectrum(params, pulse, nu), atol=1e-8)


def test_excitation_is_bounded_and_decays(case):
    params, pulse, _ = case
    traj = oracle.integrate(params, pulse, t_span=(-32.0, 120.0))
    assert np.max(np.abs(traj.c_e) ** 2) <= 1 + 1e-6
    assert np.max(np.abs(traj.c_e)) > 1e-3
    assert traj.decayed
    assert len(traj) == traj.n_steps + 1
    assert traj.state(0).t == -32.0


def test_fixed_step_converges_at_fourth_order(case):
    params, pulse, grid = case
    ref = spectral.outgoing_spectra(params, pulse, grid)
    errs = [oracle.timedomain_spectra(params, pulse, grid, dt=dt).l2_distance(ref) for dt in (0.2, 0.1)]
    assert errs[0] / errs[1] >= 4.0
    assert errs[1] < 1e-5


def test_lead_in_insensitivity(case):
    params, pulse, grid = case
    probes = oracle.probe_frequencies_for(params, pulse, grid)
    T = pulse.duration
    a = oracle.integrate(params, pulse, t_span=(-8 * T, 8 * T), probe_frequencies=probes)
    b = oracle.integrate(params, pulse, t_span=(-16 * T, 8 * T), probe_frequencies=probes)
    sa = oracle.outgoing_spectra_timedomain(a, params, pulse, grid)
    sb = oracle.outgoing_spectra_timedomain(b, params, pulse, grid)
    assert sa.l2_distance(sb) < 1e-8


def test_rejects_mismatched_or_undecayed(case):
    params, pulse, grid = case
    traj = oracle.integrate(params, pulse, t_span=(-20.0, 2.0), probe_frequencies=np.zeros(3))
    with pytest.raises(ValueError):
        oracle.outgoing_spectra_timedomain(traj, params, pulse, grid)
    probes = oracle.probe_frequencies_for(params, pulse, grid)
    traj = oracle.integrate(params, pulse, t_span=(-20.0, 2.0), probe_frequencies=probes, close_tail=False)
    with pytest.raises(ValueError):
        oracle.outgoing_spectra_timedomain(traj, params, pulse, grid)
    with pytest.raises(ValueError):
        oracle.integrate(params, pulse, t_span=(1.0, 1.0))


def test_random_suite_is_reproducible():
    a = [c.as_dict() for c in oracle.random_suite(5, 10)]
    b = [c.as_dict() for c in oracle.random_suite(5, 10)]
    assert a == b
    assert a != [c.as_dict() for c in oracle.random_suite(6, 10)]
    for d in a:
        assert 0.5 <= d["g"] <= 3 and 2 <= d["T"] <= 20 and -2 <= d["Delta"] <= 2
        assert abs(d["delta_h"] - d["delta_v"]) <= 1


def _swap_sign_flipped(params, pulse, grid):
    out = spectral.outgoing_spectra(params, pulse, grid)
    if pulse.polarization is Polarization.H:
        return SpectralState(grid, out.c_h, -out.c_v)
    return SpectralState(grid, -out.c_h, out.c_v)


def test_mutation_is_detected():
    case = oracle.random_suite(0, 1)[0]
    assert oracle.case_discrepancy(case) < 1e-6
    assert oracle.case_discrepancy(case, spectral_fn=_swap_sign_flipped) > 1e-2
