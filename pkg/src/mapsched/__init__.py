"""Capacity-bounded reducer assignment toolkit.

Models A2A and X2Y co-residence problems over different-sized inputs,
validates mapping schemas against the capacity and pair-coverage
constraints, finds minimum reducer counts exactly (iterative-deepening
branch and bound) or constructively (bin-packing based covers), and
simulates the map-to-reduce shuffle to account communication cost.
"""

from __future__ import annotations

from .core import (
    FeasibilityReport,
    Instance,
    Kind,
    PairId,
    check_feasibility,
    instance_from_doc,
    instance_to_doc,
    load_instance,
    new_instance,
    required_pairs,
    save_instance,
)
from .errors import (
    HeuristicInapplicableError,
    InfeasibleInstanceError,
    InstanceTooLargeError,
    InvalidInstanceError,
    InvalidSchemaError,
    MapschedError,
)
from .bench import Constant, GenSpec, Skewed, TradeoffCurve, UniformRange, curve_to_csv, generate, sweep
from .heuristic import BinPacking, a2a_pair_cover, ffd_pack, prune_redundant, x2y_grid_cover
from .oracle import OracleResult, oracle_min_z
from .schema import (
    MappingSchema,
    Metrics,
    ValidationReport,
    XYReducer,
    load_schema,
    metrics,
    save_schema,
    schema_from_doc,
    schema_to_doc,
    validate,
)
from .shuffle import OwnershipPlan, SimReport, plan_ownership, simulate
from .solver import SearchBudget, SolveReport, SolveStatus, lower_bound, solve_exact, solve_heuristic

__version__ = "0.1.0"
