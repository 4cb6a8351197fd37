"""Maximum likelihood estimation for Gaussian graphical models on loopless mixed graphs.

The covariance model of a mixed graph is parametrized symbolically, its score
equations are built and saturated exactly, the resulting zero-dimensional
ideal is solved numerically, and every real positive-definite critical point
is ranked and classified.
"""

from .graphs import (
    GraphError,
    MixedGraph,
    OrderingError,
    Partition,
    PartitionInfeasibleError,
    is_directed_cyclic,
    is_loopless,
    partition_lmg,
    topological_check,
)
from .groebner import GroebnerBasis, GroebnerBudgetExceeded, groebner
from .mle import (
    MLEResult,
    classify_critical_points,
    is_positive_definite,
    log_lik,
    ml_degree,
    solver_mle,
)
from .model import ModelRing, build_model_ring, covariance_parametrization, sample_covariance
from .score import ScoreSystem, gradient_and_hessian, score_equations
from .solve import PositiveDimensionalError, SolutionPoint, real_solutions, zero_dim_solve
from .symbolic import Polynomial, RationalFunction, RFMatrix, Var

__version__ = "0.1.0"

__all__ = [
    "GraphError",
    "MixedGraph",
    "OrderingError",
    "Partition",
    "PartitionInfeasibleError",
    "is_directed_cyclic",
    "is_loopless",
    "partition_lmg",
    "topological_check",
    "GroebnerBasis",
    "GroebnerBudgetExceeded",
    "groebner",
    "MLEResult",
    "classify_critical_points",
    "is_positive_definite",
    "log_lik",
    "ml_degree",
    "solver_mle",
    "ModelRing",
    "build_model_ring",
    "covariance_parametrization",
    "sample_covariance",
    "ScoreSystem",
    "gradient_and_hessian",
    "score_equations",
    "PositiveDimensionalError",
    "SolutionPoint",
    "real_solutions",
    "zero_dim_solve",
    "Polynomial",
    "RationalFunction",
    "RFMatrix",
    "Var",
]
