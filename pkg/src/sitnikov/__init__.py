"""Restricted n+1-body problem with the massless particle on the axis of a rotating central configuration."""

from .config import (
    CCReport,
    ConfigurationError,
    PlanarConfiguration,
    cc_residual,
    is_balanced,
    make_collinear_cc,
    make_polygon,
    make_rhombus_cc,
    mu_of_x,
    radius_groups,
    scale_config,
)
from .dynamics import (
    AxialState,
    MotionClass,
    axial_acceleration,
    classify,
    e_min,
    energy,
    integrate_axial,
    integrate_full,
    turning_point,
    verify_axis_invariance,
)
from .period import energy_of_period, period_of_energy, periodic_solution_catalog, t_min
from .sync import (
    euler_equilibrium_mu,
    moulton_quintic,
    moulton_root,
    polygon_scan,
    polygon_sum,
    sync_check,
    verify_pcc,
)

__version__ = "0.1.0"
