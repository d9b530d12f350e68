"""
Balanced central configurations
===============================

Builds the configurations used throughout the library, checks that each is
central, and groups the bodies by distance from the origin to test balance.
"""

import numpy as np

from sitnikov import cc_residual, is_balanced, make_collinear_cc, make_polygon, make_rhombus_cc, radius_groups
from sitnikov.config import collinear_limit_x, mu_of_x
from sitnikov.sync import euler_configuration

# A regular polygon is the simplest balanced configuration.
square = make_polygon(4)
rep = cc_residual(square)
print("square: lambda =", rep.lam, " residual =", rep.max_residual_norm)

# A rhombus with unequal masses; the short diagonal is solved for.
rhombus = make_rhombus_cc(1.0, 0.5)
print("rhombus (1, 0.5) half-diagonal y =", rhombus.positions[0, 1])
print("  radius groups:", radius_groups(rhombus).groups)
print("  balanced:", is_balanced(rhombus).balanced)

# Four bodies on a line at -1, -x, x, 1 with masses (mu, 1-mu, 1-mu, mu).
for mu in (0.1, 0.5, 0.9):
    x = make_collinear_cc(mu).positions[2, 0]
    print(f"collinear mu={mu}: x = {x:.10f}, mu(x) = {mu_of_x(x):.12f}")
print("x at mu -> 0:", collinear_limit_x())

# Three collinear bodies are central but no two share a radius,
# so the configuration is not balanced.
euler = euler_configuration(0.5)
print("euler(0.5) central:", cc_residual(euler).is_central, " balanced:", is_balanced(euler).balanced)
print("  group mass-moment norms:", np.round(is_balanced(euler).norms, 4))
