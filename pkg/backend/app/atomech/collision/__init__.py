"""atomech - Collision Model

Time-bin simulation of the cascaded atoms -> mirror -> atoms interaction and
the Lindblad fit of its reduced dynamics.
"""

from atomech.collision.cascade import (
    CascadeConfig,
    free_hamiltonian,
    interaction_generators,
    kraus_operators,
    reduced_channel,
    run_collisions,
    step_unitary,
)
from atomech.collision.fit import (
    ConvergenceReport,
    GeneratorEstimate,
    convergence_study,
    detect_backaction,
    estimated_generator,
    extract_generator,
    target_generator,
)
from atomech.collision.verify import EliminationReport, elimination_checks, verify_elimination

__all__ = [
    "CascadeConfig",
    "ConvergenceReport",
    "EliminationReport",
    "GeneratorEstimate",
    "convergence_study",
    "detect_backaction",
    "elimination_checks",
    "estimated_generator",
    "extract_generator",
    "free_hamiltonian",
    "interaction_generators",
    "kraus_operators",
    "reduced_channel",
    "run_collisions",
    "step_unitary",
    "target_generator",
    "verify_elimination",
]
