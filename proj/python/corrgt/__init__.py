"""Group testing on edge-faulty graphs where defects are shared by connected components."""

from ._corrgt import (
    GenerationError,
    Graph,
    TrialError,
    ValidationError,
    __version__,
    azuma_deviation,
    binary_entropy,
    build_graph,
    component_pmf,
    entropy_lower_bound,
    exact_component_expectation,
    expected_component_size,
    grid_components_lower_bound,
    grid_connectivity_lower,
    group_length,
    normalize_config,
    p_infinity,
    partition,
    realized_component_count,
    run_campaign,
    sbm_regime,
    star_lower_bound,
    strong_error_lower_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
