"""Periods of the bounded axial oscillations.

After the substitution ``z = z_E u`` the half-period integral carries the
weight ``(1 - u^2)^{-1/2}`` and a smooth, even factor, so it is evaluated
with Gauss-Chebyshev quadrature of the first kind.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.chebyshev import chebgauss
from scipy.optimize import brentq

from .config import PlanarConfiguration
from .dynamics import _masses_radii, e_min, rotation_rate, turning_point

__all__ = [
    "PeriodResult",
    "t_min",
    "regularized_integrand",
    "period_of_energy",
    "energy_of_period",
    "periodic_solution_catalog",
    "period_curve",
    "period_curve_csv",
]

DEFAULT_NODES = 128
MAX_NODES = 2**20


@dataclass(frozen=True)
class PeriodResult:
    T0: float
    E: float
    z_E: float
    quadrature_nodes: int
    est_error: float


def t_min(config: PlanarConfiguration) -> float:
    """Infimum of the axial periods, ``2 pi (sum m_i / s_i^3)^{-1/2}``."""
    m, s = _masses_radii(config)
    return float(2 * np.pi / np.sqrt(np.sum(m / s**3)))


def regularized_integrand(config: PlanarConfiguration, z, z_E: float):
    """Smooth factor left after pulling ``(z_E^2 - z^2)^{-1/2}`` out of the period integrand."""
    m, s = _masses_radii(config)
    s2 = s**2
    z = np.asarray(z, dtype=float)[..., None]
    a = np.sqrt(s2 + z * z)
    b = np.sqrt(s2 + z_E * z_E)
    return np.sum(m / (a * b * (a + b)), axis=-1) ** -0.5


def _chebyshev_period(config, z_E, nodes):
    x, w = chebgauss(nodes)
    # the factor is even in u, so the [0, 1] integral is half the [-1, 1] one
    integral = 0.5 * np.sum(w * regularized_integrand(config, z_E * x, z_E))
    return 2**1.5 * integral


def period_of_energy(
    config: PlanarConfiguration,
    E: float,
    nodes: int | None = None,
    rtol: float = 1e-13,
) -> PeriodResult:
    """Minimal period of the axial oscillation with energy ``E``.

    Parameters
    ----------
    nodes : int, optional
        Fixed number of Chebyshev nodes.  When omitted, the rule starts at
        128 nodes and doubles until successive values agree to ``rtol`` (or
        ``2**20`` nodes are reached); large amplitudes need more nodes since
        the integrand varies on the scale ``s_i / z_E`` near ``u = 0``.

    Notes
    -----
    ``est_error`` is the change produced by doubling the node count.
    """
    emin = e_min(config)
    if not emin < E < 0:
        raise ValueError(f"periodic motion needs E_min < E < 0; got E={E!r}, E_min={emin!r}")
    z_E = turning_point(config, E)
    if z_E < 1e-8:
        return PeriodResult(t_min(config), E, z_E, 0, 0.0)

    n = DEFAULT_NODES if nodes is None else int(nodes)
    if n < 1:
        raise ValueError("nodes must be positive")
    T = _chebyshev_period(config, z_E, n)
    T2 = _chebyshev_period(config, z_E, 2 * n)
    if nodes is None:
        while abs(T2 - T) > rtol * T2 and 2 * n < MAX_NODES:
            n *= 2
            T, T2 = T2, _chebyshev_period(config, z_E, 2 * n)
        return PeriodResult(T2, E, z_E, 2 * n, abs(T2 - T))
    return PeriodResult(T, E, z_E, n, abs(T2 - T))


def energy_of_period(config: PlanarConfiguration, T0: float, rtol: float = 1e-10) -> float:
    """Energy whose axial period is ``T0``; requires ``T0 > t_min``."""
    tm = t_min(config)
    if not T0 > tm:
        raise ValueError(
            f"no periodic orbit with period {T0!r}: periods fill (T_min, inf) with T_min={tm!r}"
        )
    emin = e_min(config)
    lo = emin * (1 - 1e-12)
    hi = -abs(emin) * 1e-14

    def g(E):
        return math.log(period_of_energy(config, E).T0 / T0)

    return brentq(g, lo, hi, xtol=1e-300, rtol=min(rtol, 1e-13), maxiter=500)


def periodic_solution_catalog(config: PlanarConfiguration, ratios, T: float | None = None):
    """Axial orbits whose period is a rational multiple ``l/m`` of the primaries' period.

    Each entry is ``(l, m, E)``; the whole system is then periodic with
    period ``l T``.  Ratios with ``T l / m <= t_min`` admit no orbit and are
    skipped.
    """

    if T is None:
        T = 2 * np.pi / rotation_rate(config)
    tm = t_min(config)
    out = []
    for r in ratios:
        fr = Fraction(r).limit_denominator(10**6) if not isinstance(r, tuple) else Fraction(*r)
        target = T * fr.numerator / fr.denominator
        if target <= tm:
            continue
        out.append((fr.numerator, fr.denominator, energy_of_period(config, target)))
    return sorted(out, key=lambda e: e[0] / e[1])


def period_curve(config: PlanarConfiguration, count: int, nodes: int | None = None):
    """Periods on ``count`` energies spaced logarithmically in ``E - E_min`` across ``(E_min, 0)``."""
    emin = e_min(config)
    offsets = np.logspace(-6, math.log10(1 - 1e-3), count) * abs(emin)
    return [period_of_energy(config, emin + d, nodes) for d in offsets]


def period_curve_csv(results) -> str:
    buf = io.StringIO()
    buf.write("E,z_E,T0,est_error\n")
    for r in results:
        buf.write(f"{r.E:.17g},{r.z_E:.17g},{r.T0:.17g},{r.est_error:.17g}\n")
    return buf.getvalue()
