"""
A collinear configuration with an equilibrium at its center of mass
===================================================================

Masses (4 - mu, 2 + mu, 1) at 0, 1 and 1 + r form a collinear central
configuration when r solves a quintic.  For one value of mu the field on
the line vanishes at the center of mass, so a massless fourth body there
completes a central configuration that is not balanced.
"""

from sitnikov import cc_residual, is_balanced
from sitnikov.dynamics import verify_axis_invariance
from sitnikov.sync import (
    euler_equilibrium_mu,
    euler_field_numerator,
    moulton_root,
    printed_numerator_mu0,
    printed_numerator_mu1,
)

# The numerator of the field at the center of mass changes sign on [0, 1].
for mu in (0.0, 1.0):
    r = moulton_root(mu)
    C = (mu + r + 3) / 7
    print(f"mu = {mu}: r = {r:.12f}, numerator at C = {euler_field_numerator(C, mu, r):+.6f}")

# The closed forms of this numerator carry each other's label.
print("closed form labelled mu = 0, at r(1):", printed_numerator_mu0(moulton_root(1.0)))
print("closed form labelled mu = 1, at r(0):", printed_numerator_mu1(moulton_root(0.0)))

ex = euler_equilibrium_mu()
print(f"mu* = {ex.mu:.17g}, r = {ex.r:.16f}, C = {ex.C:.16f}, f(C) = {ex.field_at_C:.2e}")

cfg = ex.config
print("central:", cc_residual(cfg).is_central, " balanced:", is_balanced(cfg).balanced)

# Without balance the axis is not invariant: the field off the plane has planar parts.
print("relative planar field on the axis:", verify_axis_invariance(cfg).relative)
