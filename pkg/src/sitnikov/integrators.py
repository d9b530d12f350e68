"""Explicit integrators used by the axial and full-space simulations.

``dopri5`` is the Dormand-Prince 5(4) embedded pair with a PI step-size
controller and the Hairer continuous extension for dense output.
``leapfrog`` is a fixed-step velocity-Verlet scheme for second order
systems, kept for long-horizon energy comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["StepSizeUnderflow", "DenseSolution", "dopri5", "leapfrog"]


class StepSizeUnderflow(RuntimeError):
    """Raised when the adaptive step collapses below machine resolution."""


# Dormand-Prince tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# difference between 5th and embedded 4th order weights
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
# continuous extension coefficients (Hairer, Norsett & Wanner, DOPRI5 contd5)
_D = np.array(
    [
        -12715105075 / 11282082432,
        0.0,
        87487479700 / 32700410799,
        -10690763975 / 1880347072,
        701980252875 / 199316789632,
        -1453857185 / 822651844,
        69997945 / 29380423,
    ]
)

_SAFETY = 0.9
_BETA = 0.04
_EXPO = 0.2 - 0.75 * _BETA
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


@dataclass(frozen=True)
class DenseSolution:
    """Piecewise quartic interpolant over the accepted steps.

    ``t`` holds the step boundaries (length ``k + 1``) and ``coeffs`` the
    five Hairer coefficient vectors for each of the ``k`` steps.
    """

    t: np.ndarray
    y: np.ndarray
    coeffs: np.ndarray

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        tt = np.atleast_1d(t)
        idx = np.searchsorted(self.t, tt, side="right") - 1
        idx = np.clip(idx, 0, len(self.t) - 2)
        h = self.t[idx + 1] - self.t[idx]
        theta = ((tt - self.t[idx]) / h)[:, None]
        theta1 = 1.0 - theta
        r = self.coeffs[idx]
        out = r[:, 0] + theta * (
            r[:, 1] + theta1 * (r[:, 2] + theta * (r[:, 3] + theta1 * r[:, 4]))
        )
        return out[0] if scalar else out


def _initial_step(fun, t0, y0, f0, direction, rtol, atol):
    sc = atol + rtol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / sc) ** 2))
    d1 = np.sqrt(np.mean((f0 / sc) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + direction * h0 * f0
    f1 = fun(t0 + direction * h0, y1)
    d2 = np.sqrt(np.mean(((f1 - f0) / sc) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1)


def dopri5(
    fun: Callable[[float, np.ndarray], np.ndarray],
    t0: float,
    y0,
    t_end: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    first_step: float | None = None,
    max_steps: int = 5_000_000,
    terminate: Callable[[float, np.ndarray], bool] | None = None,
) -> DenseSolution:
    """Integrate ``y' = fun(t, y)`` from ``t0`` to ``t_end``.

    Parameters
    ----------
    fun : callable
        Right-hand side returning an array shaped like ``y0``.
    rtol, atol : float
        Mixed error tolerances applied per component.
    terminate : callable, optional
        Checked after every accepted step; integration stops early when it
        returns True.

    Returns
    -------
    DenseSolution
        Accepted step boundaries, states there, and the dense interpolant.

    Raises
    ------
    StepSizeUnderflow
        If the controller asks for a step below ``16 * eps * |t|``.
    """
    y = np.array(y0, dtype=float)
    t = float(t0)
    direction = 1.0 if t_end >= t0 else -1.0
    ts = [t]
    ys = [y.copy()]
    coeffs = []
    if t_end == t0:
        return DenseSolution(np.array(ts), np.array(ys), np.zeros((0, 5, y.size)))

    k = np.empty((7, y.size))
    k[0] = fun(t, y)
    h = abs(first_step) if first_step else _initial_step(fun, t, y, k[0], direction, rtol, atol)
    facold = 1e-4
    reject = False

    for _ in range(max_steps):
        hmin = 16 * np.finfo(float).eps * max(abs(t), 1.0)
        if h < hmin:
            raise StepSizeUnderflow(f"step size {h:.3e} underflow at t={t:.17g}")
        last = direction * (t + direction * h - t_end) >= 0
        if last:
            h = abs(t_end - t)
        hs = direction * h

        for i in range(1, 7):
            yi = y + hs * (np.asarray(_A[i]) @ k[:i])
            k[i] = fun(t + _C[i] * hs, yi)
        y_new = y + hs * (_B[:6] @ k[:6])
        err_vec = hs * (_E @ k)
        sc = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = np.sqrt(np.mean((err_vec / sc) ** 2))

        fac11 = err**_EXPO if err > 0 else 0.0
        if err <= 1.0:
            fac = fac11 / facold**_BETA
            fac = min(1 / _MIN_FACTOR, max(1 / _MAX_FACTOR, fac / _SAFETY))
            h_new = h / fac if fac > 0 else h * _MAX_FACTOR
            facold = max(err, 1e-4)

            ydiff = y_new - y
            bspl = hs * k[0] - ydiff
            coeffs.append(
                np.stack(
                    [
                        y,
                        ydiff,
                        bspl,
                        ydiff - hs * k[6] - bspl,
                        hs * (_D @ k),
                    ]
                )
            )
            t = t_end if last else t + hs
            y = y_new
            k[0] = k[6]
            ts.append(t)
            ys.append(y.copy())
            if last or (terminate is not None and terminate(t, y)):
                break
            if reject:
                h_new = min(h_new, h)
            reject = False
            h = h_new
        else:
            h = h / min(1 / _MIN_FACTOR, fac11 / _SAFETY)
            reject = True
    else:
        raise RuntimeError(f"max_steps={max_steps} exceeded before t_end")

    return DenseSolution(np.array(ts), np.array(ys), np.array(coeffs))


def leapfrog(
    accel: Callable[[np.ndarray], np.ndarray],
    x0,
    v0,
    dt: float,
    nsteps: int,
):
    """Velocity-Verlet integration of ``x'' = accel(x)`` with a fixed step.

    Returns the arrays ``(t, x, v)`` at every step, starting from ``t = 0``.
    """
    x = np.array(x0, dtype=float)
    v = np.array(v0, dtype=float)
    xs = np.empty((nsteps + 1,) + x.shape)
    vs = np.empty_like(xs)
    xs[0], vs[0] = x, v
    a = accel(x)
    for i in range(1, nsteps + 1):
        v_half = v + 0.5 * dt * a
        x = x + dt * v_half
        a = accel(x)
        v = v_half + 0.5 * dt * a
        xs[i], vs[i] = x, v
    return dt * np.arange(nsteps + 1), xs, vs
