"""Radial Moser-Trudinger critical points and subcritical maximizers."""

from ._mtlab import (
    ExpansionScan,
    HierarchyReport,
    MaximizerOptions,
    MaximizerResult,
    NumericalError,
    PerturbationSpec,
    ShotOptions,
    ShotSolution,
    beta_z0,
    branch_scan,
    check_conditions,
    energy_scan,
    eta0,
    eta_below_eta0,
    integral_tables,
    make_family,
    maximize_subcritical,
    no_perturbation,
    pde_residual,
    psi0,
    residual_hierarchy,
    shoot,
    w0,
    xi,
    zeta0,
)

__all__ = [name for name in dir() if not name.startswith("_")]
