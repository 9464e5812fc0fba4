"""Tabular Q-learning over editable gridworlds."""

from mlscope.qlearn.grid import (
    Action,
    Cell,
    GridWorld,
    RewardSpec,
    bfs_shortest_path,
    grid_from_ascii,
    grid_from_dict,
    grid_to_dict,
    step_env,
    validate_trainable,
)
from mlscope.qlearn.qtable import (
    QTable,
    RolloutOutcome,
    RolloutResult,
    evaluate_policy,
    export_qtable,
    greedy_policy,
    import_qtable,
    q_update,
    select_action,
)
from mlscope.qlearn.session import (
    Snapshot,
    SessionStatus,
    TrainingConfig,
    TrainingSession,
    run_training_step,
    train,
)
from mlscope.qlearn.levels import LEVELS, builtin_level

__all__ = [
    "Action",
    "Cell",
    "GridWorld",
    "RewardSpec",
    "QTable",
    "RolloutOutcome",
    "RolloutResult",
    "Snapshot",
    "SessionStatus",
    "TrainingConfig",
    "TrainingSession",
    "LEVELS",
    "bfs_shortest_path",
    "builtin_level",
    "evaluate_policy",
    "export_qtable",
    "greedy_policy",
    "grid_from_ascii",
    "grid_from_dict",
    "grid_to_dict",
    "import_qtable",
    "q_update",
    "run_training_step",
    "select_action",
    "step_env",
    "train",
    "validate_trainable",
]
