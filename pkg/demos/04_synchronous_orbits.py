"""
Synchronous orbits and the polygon boundary
===========================================

An axial orbit can share the period of the rotating primaries only if
U < (sum m_i/s_i^3)(sum m_i s_i^2).  When it does, a massless apex at a
height c above the plane completes a pyramidal central configuration.
"""

import math

from sitnikov import make_collinear_cc, make_polygon, sync_check
from sitnikov.dynamics import ode_period
from sitnikov.period import energy_of_period
from sitnikov.sync import polygon_bound, polygon_scan, polygon_sum, verify_pcc

cfg = make_collinear_cc(0.3)
rep = sync_check(cfg)
print(f"collinear(0.3): U = {rep.lhs:.6f} < {rep.rhs:.6f}: {rep.holds}, apex height c = {rep.c:.10f}")
print("apex residual:", verify_pcc(cfg, rep.c, rep.lam))

# The synchronous orbit itself.
T = 2 * math.pi / math.sqrt(rep.lam)
E = energy_of_period(cfg, T)
print(f"primary period {T:.12f}, axial period at E = {E:.10f}: {ode_period(cfg, E):.12f}")

# Equal-mass regular polygons satisfy the inequality only up to n = 472.
print("polygon sums:", polygon_sum(472), polygon_sum(473))
print("largest n:", polygon_scan(1000).boundary)
for n in (472, 473):
    r = sync_check(make_polygon(n))
    print(f"n = {n}: holds = {r.holds}")

# The analytic lower bound f(pi/n) passes 4 a little above n = 510.
print("f(pi/473) =", polygon_bound(math.pi / 473), " f(pi/842) =", polygon_bound(math.pi / 842))
