"""Pulsed two-photon ionization dynamics: STIRAP into continuum and LICS-STIRAP."""

from ._core import (
    AdiabaticityReport,
    AnalyticPopulations,
    ArgmaxResult,
    AxisScale,
    AxisSpec,
    ConfigError,
    GaussianPulse,
    ModelKind,
    ModelParams,
    NumericError,
    PerturbativeEigensystem,
    PulseSet,
    Signals,
    SweepMode,
    SweepResult,
    TildeQuantities,
    TimeWindow,
    Trajectory,
    TrajectorySample,
    TwoLevelPopulations,
    analytic_populations,
    analytic_signals,
    analytic_trajectory,
    argmax,
    check_conditions,
    elimination_p1_p2,
    exact_eigensystem,
    hamiltonian2,
    hamiltonian3,
    perturbative_eigensystem,
    propagate,
    quasi_dark_p0,
    sweep,
    tilde,
    time_window,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
