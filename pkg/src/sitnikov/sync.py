"""Synchronous axial orbits and the pyramidal central configurations behind them.

An axial orbit with the same period as the rigid rotation exists exactly
when ``U < (sum m_i / s_i^3)(sum m_i s_i^2)``, equivalently when
``lam < sum m_i / s_i^3``.  The module also covers the regular polygon
boundary and the collinear three-body example whose center of mass is an
equilibrium of the field.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .config import ConfigurationError, PlanarConfiguration, cc_residual, is_balanced

__all__ = [
    "SyncReport",
    "PCCResidual",
    "PolygonScan",
    "EulerExample",
    "sync_check",
    "apex_height",
    "verify_pcc",
    "polygon_sum",
    "polygon_bound",
    "polygon_scan",
    "moulton_quintic",
    "moulton_root",
    "euler_configuration",
    "euler_field",
    "euler_field_numerator",
    "printed_numerator_mu0",
    "printed_numerator_mu1",
    "euler_equilibrium_mu",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SyncReport:
    lhs: float
    rhs: float
    holds: bool
    lam: float
    stiffness: float
    c: float | None
    formulations_agree: bool


def _massive(config):
    keep = config.masses > 0
    return config.masses[keep], config.radii[keep]


def apex_height(config: PlanarConfiguration, lam: float) -> float:
    """Positive ``c`` with ``sum m_i (s_i^2 + c^2)^{-3/2} = lam``."""
    m, s = _massive(config)

    def g(c):
        return np.sum(m / (s**2 + c * c) ** 1.5) - lam

    if g(0.0) <= 0:
        raise ValueError("no apex: lam is not below sum m_i / s_i^3")
    hi = float(s.max())
    while g(hi) > 0:
        hi *= 2.0
    return brentq(g, 0.0, hi, xtol=1e-300, rtol=4 * _EPS, maxiter=500)


def sync_check(config: PlanarConfiguration) -> SyncReport:
    """Decide whether a synchronous axial orbit exists.

    ``lhs`` is the force function ``U`` and ``rhs`` the product
    ``(sum m_i / s_i^3)(sum m_i s_i^2)``.  The same verdict is computed a
    second way as ``lam < sum m_i / s_i^3`` with ``lam`` from the
    central-configuration fit.
    """
    cc = cc_residual(config)
    if not cc.is_central:
        raise ConfigurationError(
            f"not a central configuration (residual {cc.max_residual_norm:.3e}, scale {cc.scale:.3e})"
        )
    m, s = _massive(config)
    lhs = config.potential()
    stiffness = float(np.sum(m / s**3))
    rhs = stiffness * float(np.sum(m * s**2))
    holds = lhs < rhs
    agree = holds == (cc.lam < stiffness)
    c = apex_height(config, cc.lam) if holds else None
    return SyncReport(lhs, rhs, holds, cc.lam, stiffness, c, agree)


@dataclass(frozen=True)
class PCCResidual:
    axial: float
    planar: float

    @property
    def max(self) -> float:
        return max(self.axial, self.planar)


def verify_pcc(config: PlanarConfiguration, c: float, lam: float | None = None) -> PCCResidual:
    """Relative residuals of the central-configuration equations at the apex ``(0, 0, c)``.

    The apex carries no mass, so only its own equation is new: the field
    there must equal ``-lam (0, 0, c)``.  ``axial`` compares the axial
    field divided by ``-c`` with ``lam`` (its ``c -> 0`` limit at ``c = 0``);
    ``planar`` is the in-plane field relative to the sum of term sizes.
    """
    lam = cc_residual(config).lam if lam is None else lam
    q3 = np.column_stack([config.positions, np.zeros(config.n)])
    p = np.array([0.0, 0.0, c])
    d = q3 - p
    r = np.sqrt(np.sum(d * d, axis=1))
    m = config.masses
    f = (m / r**3) @ d
    if c != 0:
        axial = abs(f[2] / -c - lam) / lam
    else:
        axial = abs(float(np.sum(m / r**3)) - lam) / lam
    planar = float(np.hypot(f[0], f[1]) / np.sum(m / r**2))
    return PCCResidual(float(axial), planar)


def polygon_sum(n: int) -> float:
    """``(1/n) sum_{j=1}^{n-1} 1 / sin(j pi / n)``, compensated summation."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return math.fsum(1.0 / math.sin(j * math.pi / n) for j in range(1, n)) / n


def polygon_bound(x):
    """Lower bound ``f(x)`` of the polygon sum at ``x = pi / n``.

    ``f(x) = (log((1 + cos x) / (1 - cos x)) + x / sin x) / pi``.
    """
    x = np.asarray(x, dtype=float)
    # (1 + cos x)/(1 - cos x) = cot(x/2)^2, exact near x = 0
    out = (2 * np.log(1 / np.tan(x / 2)) + x / np.sin(x)) / np.pi
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PolygonScan:
    boundary: int
    n_max: int
    sums: dict[int, float]
    analytic_cutoff: int | None
    bound_decreasing: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,sum,holds\n")
        for n in sorted(self.sums):
            s = self.sums[n]
            buf.write(f"{n},{s:.17g},{int(s < 4)}\n")
        return buf.getvalue()


def polygon_scan(n_max: int) -> PolygonScan:
    """Largest ``n <= n_max`` whose equal-mass polygon admits a synchronous orbit.

    Direct sums are evaluated until the lower bound ``f(pi / n)`` itself
    exceeds 4; since ``f(pi / n)`` grows with ``n`` every larger polygon
    fails as well, and the scan stops there.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    ns = np.arange(2, max(n_max, 3) + 1)
    bounds = polygon_bound(np.pi / ns)
    decreasing = bool(np.all(np.diff(bounds) > 0))
    sums: dict[int, float] = {}
    boundary = 1
    cutoff = None
    for n in range(2, n_max + 1):
        if decreasing and polygon_bound(math.pi / n) > 4:
            cutoff = n
            break
        s = polygon_sum(n)
        sums[n] = s
        if s < 4:
            boundary = n
    return PolygonScan(boundary, n_max, sums, cutoff, decreasing)


def moulton_quintic(r, mu):
    """Euler quintic for masses ``(4 - mu, 2 + mu, 1)`` at ``0, 1, 1 + r``."""
    return (
        6 * r**5
        + (16 - mu) * r**4
        + (14 - 2 * mu) * r**3
        - (mu + 5) * r**2
        - (2 * mu + 7) * r
        - mu
        - 3
    )


def moulton_root(mu: float) -> float:
    if not 0 <= mu <= 1:
        raise ValueError("mu must lie in [0, 1]")
    return brentq(moulton_quintic, 0.0, 1.0, args=(mu,), xtol=1e-16, rtol=4 * _EPS)


def euler_configuration(mu: float, test_particle_at: float | None = None, tol: float = 1e-9):
    """Collinear central configuration with masses ``(4 - mu, 2 + mu, 1)``, shifted to its center of mass.

    With ``test_particle_at`` a fourth, massless body is added at that
    coordinate of the original frame (``0, 1, 1 + r``).
    """
    r = moulton_root(mu)
    x = np.array([0.0, 1.0, 1.0 + r])
    m = np.array([4 - mu, 2 + mu, 1.0])
    C = (mu + r + 3) / 7
    if test_particle_at is not None:
        x = np.append(x, test_particle_at)
        m = np.append(m, 0.0)
    pos = np.column_stack([x - C, np.zeros_like(x)])
    return PlanarConfiguration(m, pos, tol)


def euler_field(x, mu: float, r: float | None = None):
    """Field on the line of the collinear example at coordinate ``x``."""
    r = moulton_root(mu) if r is None else r
    return -(4 - mu) / x**2 + (mu + 2) / (1 - x) ** 2 + 1 / (r - x + 1) ** 2


def euler_field_numerator(x, mu: float, r: float | None = None):
    """Numerator of :func:`euler_field` over ``x^2 (x - 1)^2 (r - x + 1)^2``."""
    r = moulton_root(mu) if r is None else r
    return (
        -(4 - mu) * (x - 1) ** 2 * (r - x + 1) ** 2
        + (mu + 2) * x**2 * (r - x + 1) ** 2
        + x**2 * (x - 1) ** 2
    )


def printed_numerator_mu0(r):
    """Published polynomial for the numerator at the center of mass, labelled ``mu = 0``.

    Direct expansion shows this is the numerator at ``mu = 1``.
    """
    return (r**4 + 1514 * r**3 + 2245 * r**2 + 1110 * r + 333) / 2401


def printed_numerator_mu1(r):
    """Published polynomial labelled ``mu = 1``; it is the numerator at ``mu = 0``."""
    return (-71 * r**4 + 1486 * r**3 + 401 * r**2 - 1480 * r - 592) / 2401


@dataclass(frozen=True)
class EulerExample:
    mu: float
    r: float
    C: float
    field_at_C: float
    config: PlanarConfiguration


def _center_numerator(mu):
    r = moulton_root(mu)
    return euler_field_numerator((mu + r + 3) / 7, mu, r)


def euler_equilibrium_mu(tol: float = 1e-9) -> EulerExample:
    """Mass parameter for which the center of mass is an equilibrium of the field.

    The sign of the field at the center of mass is read from its numerator
    (the denominator is positive on ``(0, 1)``); the root in ``mu`` is then
    bracketed on ``[0, 1]``.  The returned configuration carries the
    massless fourth body at the center of mass, i.e. at the origin.
    """
    mu = brentq(_center_numerator, 0.0, 1.0, xtol=1e-16, rtol=4 * _EPS, maxiter=500)
    r = moulton_root(mu)
    C = (mu + r + 3) / 7
    cfg = euler_configuration(mu, test_particle_at=C, tol=tol)
    return EulerExample(mu, r, C, float(euler_field(C, mu, r)), cfg)
