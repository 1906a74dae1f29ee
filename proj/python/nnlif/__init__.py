"""Structure-preserving finite-volume solver for the NNLIF Fokker-Planck equation."""

from ._core import (
    EntropyReport,
    Grid,
    InvalidArgument,
    ModelParams,
    NegativeDensityPolicy,
    NumericalFailure,
    ProfileFlavor,
    ScenarioConfig,
    Scheme,
    SolverState,
    StationaryProfile,
    StepConfig,
    __version__,
    cfl_ok,
    continuous_stationary,
    convergence_order,
    discrete_stationary,
    entropy_dissipation,
    explicit_step,
    find_stationary_rates,
    firing_rate,
    g_half,
    gaussian_ic,
    load_scenario,
    make_state,
    maxwellian,
    oscillation_report,
    parse_scenario,
    refractory_update,
    relative_entropy,
    run_scenario,
    semi_implicit_step,
    stationary_density,
    stationary_ic,
    step,
    total_mass,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
