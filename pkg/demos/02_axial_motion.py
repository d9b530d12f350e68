"""
Axial motion and the phase portrait
===================================

A massless particle on the axis of a rotating balanced configuration moves
in one dimension.  Its energy fixes the motion type; periodic orbits are
closed level curves of the energy in the (z, v) plane.
"""

import math

import numpy as np

from sitnikov import AxialState, classify, e_min, integrate_axial, make_rhombus_cc, turning_point
from sitnikov.dynamics import integrate_full, rotation_rate, speed_at

cfg = make_rhombus_cc(1.0, 0.5)
emin = e_min(cfg)
print("E_min =", emin)

for E in (emin, 0.5 * emin, 0.0, 0.4):
    print(f"E = {E:+.4f}: {classify(cfg, E).value}")

# A closed level curve crosses the v-axis at +-sqrt(2E + 2 sum m_i/s_i).
E = 0.5 * emin
zE = turning_point(cfg, E)
zs = np.linspace(-zE, zE, 9)
print("turning point z_E =", zE)
print("v on the level curve:", np.round(np.nan_to_num(speed_at(cfg, E, zs)), 6))

# Integrate one such orbit and watch the energy.
v0 = math.sqrt(2 * (E - emin))
tr = integrate_axial(cfg, AxialState(0.0, v0), 200.0, stride=1.0)
print("max |z| over t in [0, 200]:", np.abs(tr.z).max(), " energy drift:", tr.energy_drift)

# Positive energy: the particle escapes with speed approaching sqrt(2E).
esc = integrate_axial(cfg, AxialState(0.0, math.sqrt(2 * (0.4 - emin))), 1e5, stop_on_escape=True)
print("escaped to z =", esc.z[-1], "with v =", esc.v[-1], " sqrt(2E) =", math.sqrt(0.8))

# The same orbit integrated in space among the rotating primaries stays on the axis.
full = integrate_full(cfg, [0, 0, 0.5], [0, 0, 0], 2 * math.pi / rotation_rate(cfg))
print("full-space off-axis excursion over one primary period:", full.off_axis)
