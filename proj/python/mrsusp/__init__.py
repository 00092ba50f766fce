"""Quarter-car semi-active suspension laboratory.

C++ core exposed through pybind11: quarter-car dynamics with a hysteretic
MR damper, a from-scratch TD3 agent, a swarm-tuned PID baseline, and the
metrics harness that compares them on the bump road task.
"""

from ._core import (
    BoucWenParams,
    BumpProfile,
    Checkpoint,
    ComparisonRow,
    ControllerMode,
    LabConfig,
    MetricsReport,
    NamedMetrics,
    ObservationMode,
    PidGains,
    PidTuneResult,
    PsoConfig,
    PsoResult,
    RoadSpec,
    SimConfig,
    SimResult,
    SuspensionParams,
    Td3Config,
    Trajectory,
    body_acceleration,
    compare,
    config_from_json,
    config_to_json,
    default_config,
    effective_coeffs,
    elevation,
    evaluate,
    load_checkpoint,
    load_config,
    pso_tune,
    read_metrics_json,
    read_trajectory_csv,
    rms,
    save_checkpoint,
    save_config,
    simulate,
    train,
    tune_pid,
    write_metrics_json,
    write_trajectory_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
