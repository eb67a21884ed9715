"""
Why a two-sided cavity half fails
=================================

A photon coming from the left of a cavity with two transmitting mirrors
sees the atom only through the combination ``tau1 a_k + tau2 a_{-k}``.  The
orthogonal combination leaks past, which caps the success probability at
``tau1^2``.  A beamsplitter feeding both sides restores it.
"""

import math

from kingate import scattering as sc

for t1, t2 in [(0.1, 0.0), (0.1, 0.05), (0.1, 0.1)]:
    m = sc.MirrorPair(t1, t2)
    s = sc.mode_split(m)
    amp = sc.scattering_amplitudes(m, math.pi / m.length)
    print(f"t1={t1}, t2={t2}: A={amp.a:.4f}, D={amp.d:.4f}, "
          f"tau1={s.tau1:.4f}, tau2={s.tau2:.4f}, failure={sc.uncoupled_failure_probability(s):.3f}")

#############################################################################
# Near resonance the exact amplitudes approach simple functions of the
# mode split.  The error shrinks with the square of the mirror transmission.

for t in (0.1, 0.05, 0.025):
    m = sc.MirrorPair(t, 0.5 * t)
    ex = sc.scattering_amplitudes(m, math.pi)
    a, d = sc.near_resonance_amplitudes(sc.mode_split(m))
    print(f"t = {t:<6} |A - A0| = {abs(ex.a - a):.2e}   |D - D0| = {abs(ex.d - d):.2e}")

#############################################################################
# Feeding both mirrors from one beamsplitter
# ------------------------------------------
# Light emitted into the coupled mode recombines and leaves entirely along
# the input port; the other output stays dark.

s = sc.mode_split(sc.MirrorPair(0.1, 0.07))
back, up = sc.beamsplitter_network_output(s)
print(f"back along input: {back:.6f}, upward: {up:.1e}")
