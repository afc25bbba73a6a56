"""
Симуляция кооперативной локализации роя роботов.

Основные компоненты:
- GreedyEstimator: EKF с жадной политикой коррекции (курс / полная поза)
- WorldModel: 2D мир из отрезков стен с трассировкой лучей
- TemporalPeerLink, RadiusPeerLink: каналы контакта с соседями
- ConfidenceGrid: сетка занятости с порогом уверенности
- run_trial, run_swarm_trial: цикл испытания
- ScenarioComparator: сравнение сценариев на наборе сидов
"""

__version__ = "1.0.0"

from .pose import Pose, wrap_angle
from .estimation import (
    BeliefState,
    Measurement,
    ObservationMode,
    ProcessNoise,
    kalman_update,
    predict_covariance,
    predict_state,
    select_observation_mode,
)
from .estimator import GreedyEstimator
from .kinematics import OdometryDelta, RobotGeometry, apply_slip, diff_drive_delta
from .world import GroundTruth, WorldModel, default_maze, dump_world, load_world, ray_cast, step_ground_truth
from .sensors import LidarConfig, LidarScan, RandomStream, sample_imu, sample_lidar
from .comm import (
    CommConfig,
    LocalizationPacket,
    RadiusPeerLink,
    SwarmSnapshot,
    TemporalPeerLink,
    detect_peers_radius,
    make_packet,
    peer_event_due,
)
from .mapping import ConfidenceGrid, MappingConfig, extract_occupancy, integrate_scan, should_map, write_pgm
from .controller import WanderParams, WheelCommand, wander_step
from .config import EstimatorConfig, NoiseConfig, RunConfig, ScenarioKind, load_config
from .trial import TrialRecord, run_swarm_trial, run_trial
from .metrics import error_reduction_rate, euclidean_error, map_fidelity, visited_coverage
from .export import export_csv, export_map, read_csv, write_summary
from .comparator import ScenarioComparator
from .exceptions import (
    SwarmLocalizerError,
    ConfigurationError,
    WorldFileError,
    OutOfBoundsError,
    DegenerateUpdateError,
    UndefinedMetricError,
    PeerNotFoundError,
)

__all__ = [
    "Pose",
    "wrap_angle",
    "BeliefState",
    "Measurement",
    "ObservationMode",
    "ProcessNoise",
    "kalman_update",
    "predict_covariance",
    "predict_state",
    "select_observation_mode",
    "GreedyEstimator",
    "OdometryDelta",
    "RobotGeometry",
    "apply_slip",
    "diff_drive_delta",
    "GroundTruth",
    "WorldModel",
    "default_maze",
    "dump_world",
    "load_world",
    "ray_cast",
    "step_ground_truth",
    "LidarConfig",
    "LidarScan",
    "RandomStream",
    "sample_imu",
    "sample_lidar",
    "CommConfig",
    "LocalizationPacket",
    "RadiusPeerLink",
    "SwarmSnapshot",
    "TemporalPeerLink",
    "detect_peers_radius",
    "make_packet",
    "peer_event_due",
    "ConfidenceGrid",
    "MappingConfig",
    "extract_occupancy",
    "integrate_scan",
    "should_map",
    "write_pgm",
    "WanderParams",
    "WheelCommand",
    "wander_step",
    "EstimatorConfig",
    "NoiseConfig",
    "RunConfig",
    "ScenarioKind",
    "load_config",
    "TrialRecord",
    "run_swarm_trial",
    "run_trial",
    "error_reduction_rate",
    "euclidean_error",
    "map_fidelity",
    "visited_coverage",
    "export_csv",
    "export_map",
    "read_csv",
    "write_summary",
    "ScenarioComparator",
    "SwarmLocalizerError",
    "ConfigurationError",
    "WorldFileError",
    "OutOfBoundsError",
    "DegenerateUpdateError",
    "UndefinedMetricError",
    "PeerNotFoundError",
]
