"""Motion of the massless particle along the axis through the center of mass.

The primaries rotate rigidly with angular velocity ``sqrt(lam)``.  For a
balanced configuration the particle obeys the autonomous equation
``z'' = -sum_i m_i z / (s_i^2 + z^2)^{3/2}``; the full space field is also
provided so the invariance of the axis can be checked directly.
"""

from __future__ import annotations

import enum
import io
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .config import PlanarConfiguration, cc_residual, is_balanced
from .integrators import DenseSolution, dopri5, leapfrog

__all__ = [
    "MotionClass",
    "AxialState",
    "EnergyLevel",
    "Trajectory",
    "FullTrajectory",
    "AxisInvariance",
    "axial_acceleration",
    "potential_energy",
    "energy",
    "e_min",
    "energy_level",
    "classify",
    "classify_state",
    "turning_point",
    "speed_at",
    "integrate_axial",
    "ode_period",
    "rotation_rate",
    "primary_positions",
    "field",
    "verify_axis_invariance",
    "integrate_full",
]


class MotionClass(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    PERIODIC = "periodic"
    EQUILIBRIUM = "equilibrium"


@dataclass(frozen=True)
class AxialState:
    z: float
    v: float
    t: float = 0.0


@dataclass(frozen=True)
class EnergyLevel:
    E: float
    E_min: float
    motion: MotionClass


def _masses_radii(config: PlanarConfiguration):
    m = config.masses
    keep = m > 0
    return m[keep], config.radii[keep]


def axial_acceleration(config: PlanarConfiguration, z):
    m, s = _masses_radii(config)
    z = np.asarray(z, dtype=float)
    a = -np.sum(m * z[..., None] / (s**2 + z[..., None] ** 2) ** 1.5, axis=-1)
    return float(a) if a.ndim == 0 else a


def potential_energy(config: PlanarConfiguration, z):
    m, s = _masses_radii(config)
    z = np.asarray(z, dtype=float)
    p = -np.sum(m / np.sqrt(s**2 + z[..., None] ** 2), axis=-1)
    return float(p) if p.ndim == 0 else p


def energy(config: PlanarConfiguration, state) -> float:
    """``E(z, v) = v^2 / 2 - sum_i m_i / sqrt(s_i^2 + z^2)``.

    ``state`` may be an :class:`AxialState` or a ``(z, v)`` pair.
    """
    z, v = (state.z, state.v) if isinstance(state, AxialState) else state
    return 0.5 * v * v + potential_energy(config, z)


def e_min(config: PlanarConfiguration) -> float:
    m, s = _masses_radii(config)
    return float(-np.sum(m / s))


def classify(config: PlanarConfiguration, E: float, tol: float = 1e-10) -> MotionClass:
    """Type of axial motion at energy ``E``.

    Energies within ``tol * |E_min|`` of 0 or of ``E_min`` are snapped to the
    parabolic and equilibrium cases.
    """
    emin = e_min(config)
    band = tol * abs(emin)
    if E < emin - band:
        raise ValueError(f"energy {E!r} is below E_min = {emin!r}")
    if abs(E - emin) <= band:
        return MotionClass.EQUILIBRIUM
    if abs(E) <= band:
        return MotionClass.PARABOLIC
    return MotionClass.HYPERBOLIC if E > 0 else MotionClass.PERIODIC


def classify_state(config: PlanarConfiguration, state, tol: float = 1e-10) -> MotionClass:
    """Classify from an initial state, comparing ``|E|`` with the energy terms."""
    z, v = (state.z, state.v) if isinstance(state, AxialState) else state
    kin = 0.5 * v * v
    pot = potential_energy(config, z)
    E = kin + pot
    if z == 0 and v == 0:
        return MotionClass.EQUILIBRIUM
    if abs(E) <= tol * (abs(kin) + abs(pot)):
        return MotionClass.PARABOLIC
    return classify(config, E, tol)


def energy_level(config: PlanarConfiguration, E: float) -> EnergyLevel:
    return EnergyLevel(E, e_min(config), classify(config, E))


def turning_point(config: PlanarConfiguration, E: float) -> float:
    """Positive height where the velocity vanishes at energy ``E``."""
    emin = e_min(config)
    if not emin < E < 0:
        raise ValueError(f"turning point needs E_min < E < 0, got E={E!r} (E_min={emin!r})")
    m, s = _masses_radii(config)

    def g(z):
        return np.sum(m / np.sqrt(s**2 + z * z)) + E

    hi = max(1.0, float(s.max()))
    while g(hi) > 0:
        hi *= 2.0
    return brentq(g, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def speed_at(config: PlanarConfiguration, E: float, z):
    """Nonnegative branch ``v(E, z)`` of the level set; NaN where it does not exist."""
    kin2 = 2.0 * (E - potential_energy(config, z))
    return np.sqrt(np.where(kin2 >= 0, kin2, np.nan))


@dataclass(frozen=True)
class Trajectory:
    """Sampled axial motion.

    ``energy_drift`` is the largest ``|E(t) - E(0)|`` over the samples and
    over every accepted integrator step.
    """

    t: np.ndarray
    z: np.ndarray
    v: np.ndarray
    E: np.ndarray
    energy_drift: float
    solution: DenseSolution | None = None

    @property
    def samples(self) -> list[AxialState]:
        return [AxialState(float(z), float(v), float(t)) for t, z, v in zip(self.t, self.z, self.v)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,z,v,E\n")
        for row in zip(self.t, self.z, self.v, self.E):
            buf.write(",".join(f"{x:.17g}" for x in row) + "\n")
        return buf.getvalue()


def _check_balanced(config):
    if not is_balanced(config).balanced:
        warnings.warn(
            "configuration is not balanced; the axis is not invariant and the "
            "axial equation does not describe the particle",
            RuntimeWarning,
            stacklevel=3,
        )


def integrate_axial(
    config: PlanarConfiguration,
    initial: AxialState,
    t_end: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    stride: float | None = None,
    method: str = "dopri5",
    dt: float | None = None,
    stop_on_escape: bool = False,
) -> Trajectory:
    """Integrate the axial equation from ``initial`` up to ``t_end``.

    Parameters
    ----------
    stride : float, optional
        Spacing of the returned samples; by default the accepted steps are
        returned.
    method : {"dopri5", "leapfrog"}
        ``leapfrog`` uses the fixed step ``dt``.
    stop_on_escape : bool
        Stop once ``|z|`` exceeds ``1e3 * max s_i``.
    """
    _check_balanced(config)
    z0, v0, t0 = float(initial.z), float(initial.v), float(initial.t)
    if not np.all(np.isfinite([z0, v0, t0, t_end])):
        raise ValueError("initial state and t_end must be finite")
    m, s = _masses_radii(config)
    s2 = s**2
    escape = 1e3 * float(s.max())

    if method == "leapfrog":
        if not dt or dt <= 0:
            raise ValueError("leapfrog needs a positive dt")
        nsteps = int(np.ceil((t_end - t0) / dt))

        def acc(z):
            return -np.sum(m * z / (s2 + z * z) ** 1.5)

        t, z, v = leapfrog(acc, z0, v0, dt, nsteps)
        t = t + t0
        sol = None
    elif method == "dopri5":

        def rhs(_t, y):
            z = y[0]
            return np.array([y[1], -np.sum(m * z / (s2 + z * z) ** 1.5)])

        term = (lambda _t, y: abs(y[0]) > escape) if stop_on_escape else None
        sol = dopri5(rhs, t0, [z0, v0], t_end, rtol, atol, terminate=term)
        t, z, v = sol.t, sol.y[:, 0], sol.y[:, 1]
    else:
        raise ValueError(f"unknown method {method!r}")

    E_steps = 0.5 * v**2 + potential_energy(config, z)
    drift = float(np.max(np.abs(E_steps - E_steps[0])))
    if stride is not None and sol is not None:
        ts = np.arange(t0, sol.t[-1], stride)
        if ts[-1] < sol.t[-1]:
            ts = np.append(ts, sol.t[-1])
        y = sol(ts)
        t, z, v = ts, y[:, 0], y[:, 1]
    elif stride is not None:
        step = max(1, int(round(stride / dt)))
        t, z, v = t[::step], z[::step], v[::step]
    E = 0.5 * v**2 + potential_energy(config, z)
    drift = max(drift, float(np.max(np.abs(E - E_steps[0]))))
    return Trajectory(t, z, v, E, drift, sol)


def ode_period(
    config: PlanarConfiguration,
    E: float,
    n_periods: int = 2,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> float:
    """Axial period measured from upward zero crossings of an integrated orbit.

    The orbit starts at ``z = 0`` with the positive speed of energy ``E``;
    the mean spacing of the following ``n_periods`` upward crossings is
    returned.  This is the integrator-based counterpart of the quadrature
    formula.
    """
    emin = e_min(config)
    if not emin < E < 0:
        raise ValueError("a periodic orbit needs E_min < E < 0")
    v0 = float(np.sqrt(2.0 * (E - emin)))
    m, s = _masses_radii(config)
    s2 = s**2
    # coarse upper bound on the period: free fall from the turning point with
    # the weakest restoring factor along the orbit
    zE = turning_point(config, E)
    k_min = float(np.sum(m / (s2 + zE * zE) ** 1.5))
    t_guess = 2 * np.pi / np.sqrt(k_min)

    def rhs(_t, y):
        z = y[0]
        return np.array([y[1], -np.sum(m * z / (s2 + z * z) ** 1.5)])

    sol = dopri5(rhs, 0.0, [0.0, v0], (n_periods + 0.5) * t_guess, rtol, atol)
    z = sol.y[:, 0]
    up = np.nonzero((z[:-1] < 0) & (z[1:] >= 0))[0]
    crossings = []
    for k in up:
        crossings.append(
            brentq(lambda tt: sol(tt)[0], sol.t[k], sol.t[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
        )
        if len(crossings) == n_periods:
            break
    if len(crossings) < n_periods:
        raise RuntimeError("orbit did not complete the requested number of periods")
    # t = 0 is itself an upward crossing
    return crossings[-1] / n_periods


def rotation_rate(config: PlanarConfiguration) -> float:
    """Angular velocity ``sqrt(lam)`` of the rigid motion."""
    lam = cc_residual(config).lam
    if lam <= 0:
        raise ValueError("configuration has no positive rotation constant")
    return float(np.sqrt(lam))


def primary_positions(config: PlanarConfiguration, t, omega: float | None = None) -> np.ndarray:
    """3D positions ``Q(omega t) q_j`` of the primaries, shape ``(..., n, 3)``."""
    omega = rotation_rate(config) if omega is None else omega
    th = omega * np.asarray(t, dtype=float)[..., None]
    c, s = np.cos(th), np.sin(th)
    qx, qy = config.positions[:, 0], config.positions[:, 1]
    return np.stack([c * qx - s * qy, s * qx + c * qy, np.zeros_like(c * qx)], axis=-1)


def field(config: PlanarConfiguration, t, x, omega: float | None = None) -> np.ndarray:
    """Acceleration ``sum_i m_i (x_i - x) / |x_i - x|^3`` on a test particle at ``x``.

    Massless bodies exert no force and are skipped.
    """
    keep = config.masses > 0
    xi = primary_positions(config, t, omega)[..., keep, :]
    d = xi - np.asarray(x, dtype=float)[..., None, :]
    r3 = np.sum(d * d, axis=-1) ** 1.5
    return np.sum(config.masses[keep, None] * d / r3[..., None], axis=-2)


@dataclass(frozen=True)
class AxisInvariance:
    max_planar_norm: float
    field_scale: float

    @property
    def relative(self) -> float:
        return self.max_planar_norm / self.field_scale


def verify_axis_invariance(
    config: PlanarConfiguration,
    times=None,
    zs=None,
) -> AxisInvariance:
    """Largest in-plane component of the field on the axis over a ``(t, z)`` grid.

    The default grid is 16 instants over one period of the primaries and 33
    heights in ``[-5 max s_i, 5 max s_i]``; massless bodies are ignored.  ``field_scale`` is the largest
    sum of term magnitudes ``sum_i m_i / |x_i - x|^2`` on the grid.
    """
    omega = rotation_rate(config)
    if times is None:
        times = np.linspace(0.0, 2 * np.pi / omega, 16, endpoint=False)
    if zs is None:
        smax = float(config.radii.max())
        zs = np.linspace(-5 * smax, 5 * smax, 33)
    T, Z = np.meshgrid(np.asarray(times, float), np.asarray(zs, float), indexing="ij")
    pts = np.stack([np.zeros_like(Z), np.zeros_like(Z), Z], axis=-1)
    f = field(config, T, pts, omega)
    planar = np.hypot(f[..., 0], f[..., 1])
    keep = config.masses > 0
    xi = primary_positions(config, T, omega)[..., keep, :]
    d2 = np.sum((xi - pts[..., None, :]) ** 2, axis=-1)
    scale = np.sum(config.masses[keep] / d2, axis=-1)
    return AxisInvariance(float(planar.max()), float(scale.max()))


@dataclass(frozen=True)
class FullTrajectory:
    t: np.ndarray
    position: np.ndarray
    velocity: np.ndarray
    off_axis: float
    solution: DenseSolution

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,x,y,z,vx,vy,vz\n")
        for t, p, v in zip(self.t, self.position, self.velocity):
            buf.write(",".join(f"{x:.17g}" for x in (t, *p, *v)) + "\n")
        return buf.getvalue()


def integrate_full(
    config: PlanarConfiguration,
    position,
    velocity,
    t_end: float,
    rtol: float = 1e-12,
    atol: float = 1e-14,
    stride: float | None = None,
) -> FullTrajectory:
    """Integrate the particle in space among the rigidly rotating primaries.

    No use is made of the axial reduction, so the reported ``off_axis``
    excursion (largest distance from the axis) tests the invariance of the
    axis end to end.
    """
    _check_balanced(config)
    omega = rotation_rate(config)
    m = config.masses
    qx, qy = config.positions[:, 0], config.positions[:, 1]

    def rhs(t, y):
        c, s = np.cos(omega * t), np.sin(omega * t)
        dx = c * qx - s * qy - y[0]
        dy = s * qx + c * qy - y[1]
        dz = -y[2]
        w = m / (dx * dx + dy * dy + dz * dz) ** 1.5
        return np.array([y[3], y[4], y[5], w @ dx, w @ dy, dz * w.sum()])

    y0 = np.concatenate([np.asarray(position, float), np.asarray(velocity, float)])
    if y0.shape != (6,) or not np.all(np.isfinite(y0)):
        raise ValueError("position and velocity must be finite 3-vectors")
    sol = dopri5(rhs, 0.0, y0, t_end, rtol, atol)
    off = float(np.max(np.hypot(sol.y[:, 0], sol.y[:, 1])))
    if stride is not None:
        ts = np.arange(0.0, t_end, stride)
        if ts[-1] < t_end:
            ts = np.append(ts, t_end)
        y = sol(ts)
        off = max(off, float(np.max(np.hypot(y[:, 0], y[:, 1]))))
    else:
        ts, y = sol.t, sol.y
    return FullTrajectory(ts, y[:, :3], y[:, 3:], off, sol)
