"""Acceptance criteria, one check per criterion.

Each ``ac*`` function returns ``(ok, detail)``.  Under pytest every
criterion prints a ``[PASS]``/``[FAIL]`` line and the collected lines are
repeated in the terminal summary; ``python3 tests/test_acceptance.py``
prints the same lines without pytest.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sitnikov.config import (  # noqa: E402
    cc_residual,
    collinear_limit_quintic,
    collinear_limit_x,
    is_balanced,
    make_collinear_cc,
    make_polygon,
    make_rhombus_cc,
    scale_config,
)
from sitnikov.dynamics import (  # noqa: E402
    AxialState,
    e_min,
    integrate_axial,
    integrate_full,
    ode_period,
    rotation_rate,
    verify_axis_invariance,
)
from sitnikov.period import energy_of_period, period_of_energy, t_min  # noqa: E402
from sitnikov.sync import (  # noqa: E402
    euler_configuration,
    euler_equilibrium_mu,
    euler_field,
    moulton_quintic,
    moulton_root,
    polygon_bound,
    polygon_scan,
    polygon_sum,
    printed_numerator_mu0,
    printed_numerator_mu1,
    sync_check,
    verify_pcc,
)

from conftest import balanced_family  # noqa: E402

SEED = 20240601
RESULTS: dict[str, str] = {}


def ac1_polygon_boundary():
    t0 = time.perf_counter()
    scan = polygon_scan(1000)
    elapsed = time.perf_counter() - t0
    s472, s473 = polygon_sum(472), polygon_sum(473)
    ok = scan.boundary == 472 and s472 < 4 < s473 and elapsed < 1.0
    return ok, f"boundary={scan.boundary}, S(472)={s472:.12f}, S(473)={s473:.12f}, {elapsed:.3f}s"


def ac2_analytic_bound():
    f842 = polygon_bound(math.pi / 842)
    ns = np.arange(100, 2001)
    decreasing = bool(np.all(np.diff(polygon_bound(math.pi / ns)) > 0))  # x = pi/n falls as n grows
    ok = 4.0000 <= f842 <= 4.0012 and decreasing
    return ok, f"f(pi/842)={f842:.6f} (required in [4.0000, 4.0012]), decreasing in x: {decreasing}"


def ac3_quintic_endpoints():
    rng = np.random.default_rng(SEED)
    mus = rng.uniform(0, 1, 20)
    err0 = np.max(np.abs(moulton_quintic(0.0, mus) - (-mus - 3)))
    err1 = np.max(np.abs(moulton_quintic(1.0, mus) - (21 - 7 * mus)))
    return max(err0, err1) <= 1e-14, f"max |p(0,mu)+mu+3|={err0:.1e}, max |p(1,mu)-21+7mu|={err1:.1e}"


def ac4_euler_example():
    n0 = printed_numerator_mu0(moulton_root(0.0))
    n1 = printed_numerator_mu1(moulton_root(1.0))
    ex = euler_equilibrium_mu()
    f = abs(euler_field(ex.C, ex.mu, ex.r))
    rep = cc_residual(ex.config.with_tol(1e-10))
    ok = n0 > 0 > n1 and f <= 1e-12 and rep.is_central
    return ok, (
        f"printed Nf(mu=0)={n0:.4f}, Nf(mu=1)={n1:.4f}; mu*={ex.mu:.17g}, |f(C)|={f:.1e}, "
        f"CC residual {rep.max_residual_norm:.1e} (scale {rep.scale:.1e})"
    )


def ac5_axis_invariance():
    details, ok = [], True
    for name, cfg in [
        ("square", make_polygon(4)),
        ("rhombus", make_rhombus_cc(1.0, 0.5)),
        ("triangle", make_polygon(3)),
        ("polygon7", make_polygon(7)),
    ]:
        inv = verify_axis_invariance(cfg)
        ok &= inv.max_planar_norm <= 1e-12 * inv.field_scale
        details.append(f"{name} {inv.relative:.1e}")
    inv = verify_axis_invariance(euler_configuration(0.5))
    ok &= inv.max_planar_norm > 1e-3 * inv.field_scale
    details.append(f"euler {inv.relative:.2f}")
    return bool(ok), ", ".join(details)


def ac6_period_oracle():
    t0 = time.perf_counter()
    worst_ode, worst_lim, ok = 0.0, 0.0, True
    for cfg in balanced_family().values():
        emin = e_min(cfg)
        for frac in (0.9, 0.7, 0.5, 0.3, 0.15):
            E = frac * emin
            T = period_of_energy(cfg, E).T0
            worst_ode = max(worst_ode, abs(T / ode_period(cfg, E, n_periods=1) - 1))
        Es = emin * np.logspace(-3, math.log10(0.999), 50)[::-1]
        Ts = np.array([period_of_energy(cfg, E).T0 for E in Es])
        ok &= bool(np.all(np.diff(Ts) > 0))
        worst_lim = max(worst_lim, abs(period_of_energy(cfg, emin + 1e-6 * abs(emin)).T0 - t_min(cfg)))
    elapsed = time.perf_counter() - t0
    ok &= worst_ode <= 1e-6 and worst_lim <= 1e-4 and elapsed < 30
    return bool(ok), f"max rel quadrature/ODE gap {worst_ode:.1e}, max |T0-T_min| {worst_lim:.1e}, {elapsed:.1f}s"


def ac7_energy_conservation():
    worst = 0.0
    for cfg in (make_polygon(2), make_rhombus_cc(1.0, 0.5), make_collinear_cc(0.5)):
        E = 0.5 * e_min(cfg)
        T0 = period_of_energy(cfg, E).T0
        v0 = math.sqrt(2 * (E - e_min(cfg)))
        tr = integrate_axial(cfg, AxialState(0.0, v0), 100 * T0, rtol=1e-10)
        worst = max(worst, tr.energy_drift / abs(E))
    return worst <= 1e-8, f"max drift/|E| over 100 periods = {worst:.1e}"


def ac8_full_space():
    # growth = off-axis ratio between periods 4 and 5, i.e. the transverse amplification per period
    parts, worst_off, worst_z = [], 0.0, 0.0
    for name, cfg in [
        ("square", make_polygon(4)),
        ("rhombus", make_rhombus_cc(1.0, 0.5)),
        ("triangle", make_polygon(3)),
        ("collinear", make_collinear_cc(0.5)),
    ]:
        P = 2 * math.pi / rotation_rate(cfg)
        z0 = float(cfg.radii.max())
        full = integrate_full(cfg, [0, 0, z0], [0, 0, 0], 5 * P)
        axial = integrate_axial(cfg, AxialState(z0, 0.0), 5 * P, rtol=1e-12, atol=1e-14)
        xy = full.solution(np.array([4 * P, 5 * P]))[:, :2]
        r4, r5 = np.hypot(xy[:, 0], xy[:, 1])
        growth = r5 / r4 if r4 > 0 else float("nan")
        worst_off = max(worst_off, full.off_axis)
        worst_z = max(worst_z, float(np.max(np.abs(full.solution(axial.t)[:, 2] - axial.z))))
        parts.append(f"{name} {full.off_axis:.1e} (x{growth:.0f}/period)")
    ok = worst_off <= 1e-8 and worst_z <= 1e-8
    return ok, f"off-axis {', '.join(parts)}; z-track gap {worst_z:.1e}"


def ac9_family_sweep():
    configs = [make_collinear_cc(mu) for mu in np.linspace(0.02, 0.98, 50)]
    configs += [make_rhombus_cc(q, 1.0) for q in np.geomspace(1.02, 50, 50)]
    holds, worst_pcc, worst_T = 0, 0.0, 0.0
    for cfg in configs:
        rep = sync_check(cfg)
        if not rep.holds:
            continue
        holds += 1
        worst_pcc = max(worst_pcc, verify_pcc(cfg, rep.c, rep.lam).max)
        T = 2 * math.pi / math.sqrt(rep.lam)
        E = energy_of_period(cfg, T)
        worst_T = max(worst_T, abs(ode_period(cfg, E, n_periods=1) / T - 1))
    ok = holds == len(configs) and worst_pcc <= 1e-10 and worst_T <= 1e-6
    return ok, f"holds {holds}/{len(configs)}, max PCC residual {worst_pcc:.1e}, max period gap {worst_T:.1e}"


def ac10_scale_invariance():
    rng = np.random.default_rng(SEED)
    cfgs = dict(balanced_family())
    cfgs["euler"] = euler_configuration(0.5)
    cfgs["polygon480"] = make_polygon(480)
    bad = 0
    for cfg in cfgs.values():
        base = (sync_check(cfg).holds, is_balanced(cfg).balanced)
        for r, mu in rng.uniform(0.05, 20, size=(20, 2)):
            sc = scale_config(cfg, r, mu)
            bad += (sync_check(sc).holds, is_balanced(sc).balanced) != base
    return bad == 0, f"{len(cfgs)} configurations x 20 scalings, {bad} verdict changes"


def ac11_collinear_structure():
    mus = np.linspace(0.01, 0.99, 50)
    xs = np.array([make_collinear_cc(m).positions[2, 0] for m in mus])
    x0 = collinear_limit_x()
    ok = bool(np.all(np.diff(xs) < 0)) and abs(collinear_limit_quintic(x0)) < 1e-14 and 0 < x0 < 0.75
    return ok, f"x(mu) decreasing: {bool(np.all(np.diff(xs) < 0))}, x(0+)={x0:.10f}"


CRITERIA = [
    ("AC1", "polygon boundary 472", ac1_polygon_boundary),
    ("AC2", "analytic polygon bound", ac2_analytic_bound),
    ("AC3", "quintic endpoints", ac3_quintic_endpoints),
    ("AC4", "Euler example", ac4_euler_example),
    ("AC5", "balanced axis invariance", ac5_axis_invariance),
    ("AC6", "period oracle equivalence", ac6_period_oracle),
    ("AC7", "energy conservation", ac7_energy_conservation),
    ("AC8", "full-space consistency", ac8_full_space),
    ("AC9", "collinear/rhombus synchronous sweep", ac9_family_sweep),
    ("AC10", "scale invariance", ac10_scale_invariance),
    ("AC11", "collinear family structure", ac11_collinear_structure),
]


def run(key, title, fn):
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] {key} {title}: {detail}"
    RESULTS[key] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("key, title, fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(key, title, fn):
    ok, line = run(key, title, fn)
    assert ok, line


if __name__ == "__main__":
    failed = sum(not run(*c)[0] for c in CRITERIA)
    sys.exit(1 if failed else 0)
