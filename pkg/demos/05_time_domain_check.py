"""
Checking the spectra in the time domain
=======================================

The closed-form outgoing spectra come from solving the dynamics in
frequency space.  Here the same dynamics is integrated in time, tracking
the atomic excitation as the pulse passes, and the two answers compared.
"""

import numpy as np

from kingate import PulseSpec, SystemParams, make_grid, oracle, spectral

params = SystemParams(1.2, 1.0, 1.5, 0.9)
pulse = PulseSpec(5.0, 0.3)
grid = make_grid(pulse, shift=params.epsilon())

traj = oracle.integrate(params, pulse, probe_frequencies=oracle.probe_frequencies_for(params, pulse, grid))
i = int(np.argmax(np.abs(traj.c_e)))
print(f"{traj.n_steps} adaptive steps, peak excitation {abs(traj.c_e[i])**2:.3f} at t = {traj.t[i]:.2f}")

td = oracle.outgoing_spectra_timedomain(traj, params, pulse, grid)
fd = spectral.outgoing_spectra(params, pulse, grid)
print(f"L2 distance between routes: {td.l2_distance(fd):.2e}")
print(f"output norm: {td.norm():.10f}")

#############################################################################
# A fixed-step RK4 run converges at fourth order towards the same answer.

for dt in (0.4, 0.2, 0.1):
    print(f"dt = {dt}: {oracle.timedomain_spectra(params, pulse, grid, dt=dt).l2_distance(fd):.2e}")

#############################################################################
# A few random draws from the suite used by ``kingate oracle-check``.

for case in oracle.random_suite(seed=1, draws=3):
    print(case.as_dict(), f"{oracle.case_discrepancy(case):.1e}")
