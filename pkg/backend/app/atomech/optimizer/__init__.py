"""atomech - Optimizer"""

from atomech.optimizer.search import (
    CONSTRAINTS,
    AuditRow,
    ConstraintSet,
    Evaluation,
    Objective,
    OptimizationResult,
    SearchSpec,
    Stage,
    constraint_slacks,
    evaluate,
    grid_points,
    objective_value,
    optimize,
)

__all__ = [
    "CONSTRAINTS",
    "AuditRow",
    "ConstraintSet",
    "Evaluation",
    "Objective",
    "OptimizationResult",
    "SearchSpec",
    "Stage",
    "constraint_slacks",
    "evaluate",
    "grid_points",
    "objective_value",
    "optimize",
]
