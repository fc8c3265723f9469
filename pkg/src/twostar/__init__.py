"""Simulation and estimation toolkit for the two-star random graph model."""

from .asymptotics import (
    AsymptoticConstants,
    CriticalPointError,
    DomainClass,
    EdgeLaw,
    EdgeLawBranch,
    NearCriticalWarning,
    check_stability,
    classify,
    constants,
    limiting_log_partition,
    optimal_density,
    predicted_edge_law,
    solve_m,
)
from .estimation import (
    DegenerateSampleError,
    EstimateReport,
    TwoStarMomentEstimator,
    degree_concentration,
    estimate,
    ks_statistic,
    s1,
    s2,
    s3_s4,
)
from .exact import ExactModel, enumerate_exact, enumerate_uniform
from .laplace import (
    ConvergenceRow,
    LaplaceSpec,
    QuadratureError,
    asymptotic_prediction,
    b_integral,
    convergence_check,
    default_b4,
)
from .model import (
    Beta,
    Graph,
    Theta,
    degrees,
    edge_count,
    graph_from_text,
    graph_to_text,
    inverse,
    log_weight,
    log_weight_degree_form,
    reparametrize,
    two_star_count,
)
from .sampling import (
    ChainState,
    SampleRecord,
    SampleSet,
    SamplerConfig,
    TwoStarSampler,
    gibbs_sweep,
    glauber_sweep,
    log_f,
    run,
    update_phi,
    update_y,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticConstants",
    "Beta",
    "ChainState",
    "ConvergenceRow",
    "CriticalPointError",
    "DegenerateSampleError",
    "DomainClass",
    "EdgeLaw",
    "EdgeLawBranch",
    "EstimateReport",
    "ExactModel",
    "Graph",
    "LaplaceSpec",
    "NearCriticalWarning",
    "QuadratureError",
    "SampleRecord",
    "SampleSet",
    "SamplerConfig",
    "Theta",
    "TwoStarMomentEstimator",
    "TwoStarSampler",
    "asymptotic_prediction",
    "b_integral",
    "check_stability",
    "classify",
    "constants",
    "convergence_check",
    "default_b4",
    "degree_concentration",
    "degrees",
    "edge_count",
    "enumerate_exact",
    "enumerate_uniform",
    "estimate",
    "gibbs_sweep",
    "glauber_sweep",
    "graph_from_text",
    "graph_to_text",
    "inverse",
    "ks_statistic",
    "limiting_log_partition",
    "log_f",
    "log_weight",
    "log_weight_degree_form",
    "optimal_density",
    "predicted_edge_law",
    "reparametrize",
    "run",
    "s1",
    "s2",
    "s3_s4",
    "solve_m",
    "two_star_count",
    "update_phi",
    "update_y",
]
