"""Multigraded hat link Floer homology of (n,n)-torus links via grid diagrams."""

from .deconvolution import FactorSpec, NonDivisibleError, multiply_factors, strip_factors
from .f2_homology import (
    BudgetExceededError,
    Bucket,
    GradedDimTable,
    build_buckets,
    poincare,
    tilde_homology,
)
from .grid_core import (
    GridDiagram,
    GridState,
    MultiGrading,
    alexander,
    empty_rectangles,
    enumerate_states,
    linking_matrix,
    maslov,
    torus_grid,
)
from .kernels import BACKEND
from .predictions import PredictionTable, full_table, junction_prediction, reflect, support

__version__ = "0.1.0"
