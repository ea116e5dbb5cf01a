"""Constant mean curvature surfaces in H3 and minimal surfaces in E3 from Weierstrass data."""

from ._core import (
    SolsurfError,
    enneper_weierstrass,
    erf,
    gauge_matrix,
    hermite_h,
    integrate_reduced,
    kummer_1f1,
    kummer_crosscheck,
    ode_coefficients,
    picard_series,
    run_cli,
    sample_surface,
    sym_immersion,
    weierstrass_from_ode,
)

__all__ = [
    "SolsurfError",
    "enneper_weierstrass",
    "erf",
    "gauge_matrix",
    "hermite_h",
    "integrate_reduced",
    "kummer_1f1",
    "kummer_crosscheck",
    "ode_coefficients",
    "picard_series",
    "run_cli",
    "sample_surface",
    "sym_immersion",
    "weierstrass_from_ode",
]
