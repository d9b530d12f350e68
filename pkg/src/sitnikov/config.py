"""Planar configurations of the primaries.

Holds the configuration type, the central-configuration residual, radius
grouping and the balanced test, plus builders for the families that admit
an invariant axis: regular polygons, the collinear symmetric 4-body family
and the rhombus family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "ConfigurationError",
    "PlanarConfiguration",
    "CCReport",
    "RadiusGroups",
    "BalanceReport",
    "accelerations",
    "cc_residual",
    "radius_groups",
    "is_balanced",
    "make_polygon",
    "make_collinear_cc",
    "collinear_limit_quintic",
    "collinear_limit_x",
    "mu_of_x",
    "dmu_dx",
    "make_rhombus_cc",
    "scale_config",
    "rotate_config",
]

DEFAULT_TOL = 1e-9


class ConfigurationError(ValueError):
    """Invalid or degenerate configuration."""


@dataclass(frozen=True)
class PlanarConfiguration:
    """Masses and planar positions of the primaries.

    Zero masses are accepted for test particles (for example a massless
    body sitting at an equilibrium point); such bodies are exempt from the
    exclusion of the origin but not from pairwise collision checks.
    """

    masses: np.ndarray
    positions: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.array(self.masses, dtype=float).reshape(-1)
        q = np.array(self.positions, dtype=float)
        if q.ndim != 2 or q.shape[1] != 2:
            raise ConfigurationError("positions must be a list of 2D vectors")
        if m.size != q.shape[0]:
            raise ConfigurationError(
                f"{m.size} masses but {q.shape[0]} positions"
            )
        if m.size < 2:
            raise ConfigurationError("need at least two bodies")
        if not (np.all(np.isfinite(m)) and np.all(np.isfinite(q))):
            raise ConfigurationError("non-finite mass or position")
        if np.any(m < 0) or not np.any(m > 0):
            raise ConfigurationError("masses must be nonnegative with a positive total")
        if not self.tol >= 0:
            raise ConfigurationError("tol must be nonnegative")
        m.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "positions", q)

        radii = np.hypot(q[:, 0], q[:, 1])
        length = max(1.0, float(radii.max()))
        com = m @ q / m.sum()
        if np.hypot(*com) > self.tol * length:
            raise ConfigurationError(
                f"center of mass {com.tolist()} is not at the origin"
            )
        massive = m > 0
        if np.any(radii[massive] <= self.tol):
            raise ConfigurationError("a massive body sits at the origin")
        diff = q[:, None, :] - q[None, :, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])
        np.fill_diagonal(dist, np.inf)
        if np.any(dist <= self.tol):
            i, j = np.unravel_index(np.argmin(dist), dist.shape)
            raise ConfigurationError(f"bodies {i} and {j} collide")

    @property
    def n(self) -> int:
        return self.masses.size

    @property
    def radii(self) -> np.ndarray:
        """Distances ``s_i = |q_i|`` to the center of mass."""
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def distances(self) -> np.ndarray:
        diff = self.positions[:, None, :] - self.positions[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])

    def potential(self) -> float:
        """Force function ``U = sum_{i<j} m_i m_j / r_ij``."""
        r = self.distances()
        iu = np.triu_indices(self.n, 1)
        return float(np.sum(np.outer(self.masses, self.masses)[iu] / r[iu]))

    def moment_of_inertia(self) -> float:
        return float(self.masses @ self.radii**2)

    def with_tol(self, tol: float) -> "PlanarConfiguration":
        return PlanarConfiguration(self.masses, self.positions, tol)

    def to_dict(self) -> dict:
        return {
            "masses": self.masses.tolist(),
            "positions": self.positions.tolist(),
            "tol": self.tol,
        }

    @classmethod
    def from_dict(cls, data: dict, tol: float | None = None) -> "PlanarConfiguration":
        if tol is None:
            tol = data.get("tol", DEFAULT_TOL)
        return cls(data["masses"], data["positions"], float(tol))


@dataclass(frozen=True)
class CCReport:
    lam: float
    residuals: np.ndarray
    max_residual_norm: float
    scale: float
    is_central: bool


class RadiusGroups(NamedTuple):
    radii: list[float]
    groups: list[list[int]]

    def as_dict(self) -> dict[float, list[int]]:
        return dict(zip(self.radii, self.groups))


class BalanceReport(NamedTuple):
    balanced: bool
    norms: list[float]


def accelerations(config: PlanarConfiguration) -> np.ndarray:
    """Gravitational acceleration of every body due to the others."""
    q = config.positions
    diff = q[None, :, :] - q[:, None, :]  # diff[j, i] = q_i - q_j
    r = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(r, np.inf)
    return np.einsum("i,jik->jk", config.masses, diff / r[..., None] ** 3)


def cc_residual(config: PlanarConfiguration, tol: float | None = None) -> CCReport:
    """Residuals of ``grad_j U + lam m_j q_j = 0`` with a least-squares ``lam``.

    For a massless body the residual is that of a test body carrying the
    mean positive mass, i.e. the acceleration form ``a_j + lam q_j`` scaled
    by that mass.  The acceptance scale is the largest pairwise force term
    ``m_i m_j / r_ij^2``.
    """
    tol = config.tol if tol is None else tol
    m = config.masses
    q = config.positions
    massive = m > 0
    m_eff = np.where(massive, m, m[massive].mean())
    grad = m_eff[:, None] * accelerations(config)
    mq = m_eff[:, None] * q

    num = np.sum(grad[massive] * mq[massive])
    den = np.sum(mq[massive] ** 2)
    lam = -num / den
    res = grad + lam * mq
    norms = np.hypot(res[:, 0], res[:, 1])

    r = config.distances()
    np.fill_diagonal(r, np.inf)
    pair = np.outer(m_eff, m) / r**2
    scale = float(max(pair.max(), np.max(np.abs(lam) * np.hypot(mq[:, 0], mq[:, 1]))))
    worst = float(norms.max())
    return CCReport(float(lam), res, worst, scale, worst <= tol * scale)


def radius_groups(config: PlanarConfiguration) -> RadiusGroups:
    """Partition bodies by distance to the origin, ascending."""
    s = config.radii
    order = np.argsort(s, kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and s[idx] - s[groups[-1][-1]] <= config.tol * max(1.0, s[idx]):
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    radii = [float(np.mean(s[g])) for g in groups]
    return RadiusGroups(radii, [sorted(g) for g in groups])


def is_balanced(config: PlanarConfiguration) -> BalanceReport:
    """Check that every radius group has its weighted center at the origin."""
    rg = radius_groups(config)
    m, q = config.masses, config.positions
    norms = []
    ok = True
    for r, g in zip(rg.radii, rg.groups):
        norm = float(np.hypot(*(m[g] @ q[g])))
        norms.append(norm)
        if norm > config.tol * m[g].sum() * r:
            ok = False
    return BalanceReport(ok, norms)


def make_polygon(n: int, mass: float = 1.0, radius: float = 1.0, tol: float = DEFAULT_TOL):
    """Equal masses on the vertices of a regular ``n``-gon."""
    if n < 2:
        raise ConfigurationError("a polygon needs n >= 2")
    if mass <= 0 or radius <= 0:
        raise ConfigurationError("mass and radius must be positive")
    k = np.arange(n)
    ang = 2 * np.pi * k / n
    pos = radius * np.column_stack([np.cos(ang), np.sin(ang)])
    # snap the exact zeros cos/sin lose at multiples of pi/2
    pos[np.abs(pos) < 1e-15 * radius] = 0.0
    return PlanarConfiguration(np.full(n, float(mass)), pos, tol)


def mu_of_x(x):
    """Outer mass ``mu`` making ``(-1, -x, x, 1)`` with masses ``(mu, 1-mu, 1-mu, mu)`` central."""
    x = np.asarray(x, dtype=float)
    num = 8 * x**5 - x**4 + 8 * x**3 + 2 * x**2 - 1
    den = (x - 1) * (x + 1) * (x**5 - 9 * x**3 + x**2 - 1)
    if np.any(den == 0):
        raise ZeroDivisionError("mu_of_x evaluated at a pole")
    out = -num / den
    return float(out) if out.ndim == 0 else out


def dmu_dx(x):
    """Closed-form derivative of :func:`mu_of_x`."""
    x = np.asarray(x, dtype=float)
    num = x**2 * (
        16 * x**9 - 3 * x**8 + 32 * x**7 + 12 * x**6 - 304 * x**5 - 2 * x**4 + 44 * x**2 - 51
    )
    den = (x - 1) ** 2 * (x + 1) ** 2 * (x**5 - 9 * x**3 + x**2 - 1) ** 2
    out = num / den
    return float(out) if out.ndim == 0 else out


def collinear_limit_quintic(x):
    return 8 * x**5 - x**4 + 8 * x**3 + 2 * x**2 - 1


def collinear_limit_x() -> float:
    """Inner position of the collinear family as the outer masses vanish."""
    return brentq(collinear_limit_quintic, 0.0, 1.0, xtol=1e-16, rtol=4 * np.finfo(float).eps)


def _collinear_x(mu: float) -> float:
    lo, hi = 1e-6, 1 - 1e-6
    return brentq(lambda x: mu_of_x(x) - mu, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def make_collinear_cc(mu: float, tol: float = DEFAULT_TOL) -> PlanarConfiguration:
    """Symmetric collinear 4-body central configuration on the first axis.

    Positions ``(-1, -x, x, 1)`` with masses ``(mu, 1-mu, 1-mu, mu)``; ``x``
    is the unique root in ``(0, 1)`` of ``mu_of_x(x) = mu``.
    """
    if not 0 < mu < 1:
        raise ConfigurationError("mu must lie in (0, 1)")
    x = _collinear_x(mu)
    pos = np.array([[-1.0, 0.0], [-x, 0.0], [x, 0.0], [1.0, 0.0]])
    return PlanarConfiguration([mu, 1 - mu, 1 - mu, mu], pos, tol)


def _rhombus_positions(y: float) -> np.ndarray:
    return np.array([[0.0, y], [1.0, 0.0], [0.0, -y], [-1.0, 0.0]])


def _rhombus_mismatch(y: float, m1: float, m2: float) -> float:
    # vertical equation at q1 and horizontal at q2, lam eliminated
    q = _rhombus_positions(y)
    m = np.array([m1, m2, m1, m2])
    diff = q[None, :, :] - q[:, None, :]
    r = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(r, np.inf)
    a = np.einsum("i,jik->jk", m, diff / r[..., None] ** 3)
    return a[0, 1] / y - a[1, 0]


def make_rhombus_cc(m1: float, m2: float, tol: float = DEFAULT_TOL) -> PlanarConfiguration:
    """Rhombus central configuration with masses ``(m1, m2, m1, m2)``.

    Bodies 1 and 3 sit at ``(0, +-y)``, bodies 2 and 4 at ``(+-1, 0)``; ``y``
    is located by a 64-point sign scan on ``(1e-6, 1 - 1e-6)`` followed by
    bracketed root refinement.
    """
    if not (m1 > 0 and m2 > 0):
        raise ConfigurationError("masses must be positive")
    if m1 <= m2:
        raise ConfigurationError("rhombus family requires m1 > m2 (m1 == m2 is the square)")
    ys = np.linspace(1e-6, 1 - 1e-6, 64)
    g = np.array([_rhombus_mismatch(y, m1, m2) for y in ys])
    sign_change = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) <= 0)[0]
    if sign_change.size == 0:
        raise ConfigurationError(f"no rhombus central configuration found for m1={m1}, m2={m2}")
    k = sign_change[0]
    y = brentq(_rhombus_mismatch, ys[k], ys[k + 1], args=(m1, m2), xtol=1e-15,
               rtol=4 * np.finfo(float).eps)
    return PlanarConfiguration([m1, m2, m1, m2], _rhombus_positions(y), tol)


def scale_config(config: PlanarConfiguration, r: float, mu: float) -> PlanarConfiguration:
    """Positions scaled by ``r`` and masses by ``mu``; ``lam`` becomes ``lam * mu / r**3``."""
    if r <= 0 or mu <= 0:
        raise ConfigurationError("scale factors must be positive")
    return PlanarConfiguration(config.masses * mu, config.positions * r, config.tol)


def rotate_config(config: PlanarConfiguration, angle: float) -> PlanarConfiguration:
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return PlanarConfiguration(config.masses, config.positions @ rot.T, config.tol)
