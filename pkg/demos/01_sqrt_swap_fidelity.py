"""
A sqrt(SWAP) gate from a single reflection
==========================================

A photon bounces off a one-sided cavity holding a three-level atom.  With
the atom detuning chosen so that the long-pulse phase is pi/4, the
photon's polarization and the atom's ground state undergo a sqrt(SWAP).
Finite pulses pay an infidelity that falls off as 1/T^2.
"""

import math

import numpy as np

from kingate import PulseSpec, SystemParams, make_grid, spectral, tuning

# Cavity loss sets the unit.  This coupling sits in the good-cavity regime.
g2 = 169 / 175
g = math.sqrt(g2)

# Pick a carrier detuning and tune the atom so the adiabatic phase is pi/4.
Delta = 0.2
delta_a = tuning.sqrt_swap_delta_a(g, 1.0, Delta)
params = SystemParams.degenerate(g, delta_a)
print(f"g = {g:.5f}, Delta = {Delta}, delta_a = {delta_a:.5f}")

#############################################################################
# Fidelity against pulse duration
# -------------------------------
# The overlap integral is done on a uniform grid spanning 12 spectral widths.

for T in (5.0, 10.0, 20.0, 40.0):
    pulse = PulseSpec(T, Delta)
    r = spectral.fidelity(params, pulse, make_grid(pulse))
    print(f"T = {T:5.1f}   1 - F^2 = {r.infidelity:.3e}   Phi - pi/4 = {r.phase_error:+.3e}")

#############################################################################
# This particular point is special: Delta = 0.2 is an exact root of the
# quartic that cancels the 1/T^2 term, so the decay is closer to 1/T^4.

print("quadratic coefficient:", spectral.infidelity_quadratic_term(params, Delta))

#############################################################################
# Scanning the carrier at T = 10
# ------------------------------

Ds = np.linspace(0.0, 0.4, 9)
for D in Ds:
    p = SystemParams.degenerate(g, tuning.sqrt_swap_delta_a(g, 1.0, D))
    pulse = PulseSpec(10.0, D)
    r = spectral.fidelity(p, pulse, make_grid(pulse))
    print(f"Delta = {D:.2f}   1 - F^2 = {r.infidelity:.3e}")
