"""
Цикл испытания: управление -> физика -> датчики -> оценивание -> картирование.

Каждое испытание однопоточное и детерминированное при заданном сиде.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from .comm import BasePeerLink, RadiusPeerLink, SwarmSnapshot, TemporalPeerLink
from .config import RunConfig, ScenarioKind
from .controller import WheelCommand, wander_step
from .estimation import ObservationMode
from .estimator import GreedyEstimator
from .exceptions import ConfigurationError
from .kinematics import apply_slip
from .mapping import ConfidenceGrid, MappingConfig, integrate_scan
from .metrics import euclidean_error
from .pose import Pose, wrap_angle
from .sensors import LidarScan, RandomStream, sample_imu, sample_lidar
from .world import GroundTruth, WorldModel, step_ground_truth

logger = structlog.get_logger(__name__)


@dataclass(eq=False)
class TrialRecord:
    """Результат одного испытания одного агента."""

    scenario: ScenarioKind
    seed: int
    samples: List[Tuple[float, float]]
    final_grid: ConfidenceGrid
    heading_errors: List[float] = field(default_factory=list)
    truth_xy: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    post_update_errors: List[float] = field(default_factory=list)
    post_update_diagonals: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    update_stats: Dict = field(default_factory=dict)
    agent_id: int = 0

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    @property
    def errors(self) -> np.ndarray:
        return np.array([e for _, e in self.samples])

    @property
    def peak_error(self) -> float:
        return max(e for _, e in self.samples)

    @property
    def final_error(self) -> float:
        return self.samples[-1][1]

    @property
    def full_updates(self) -> int:
        return self.update_stats.get("full_updates", 0)

    @property
    def heading_updates(self) -> int:
        return self.update_stats.get("heading_updates", 0)


class _Agent:
    """Робот с собственными потоками шума, оценщиком, картой и каналом связи."""

    def __init__(self, agent_id: int, cfg: RunConfig, world: WorldModel, start: Pose,
                 link: BasePeerLink, mapping: MappingConfig, streams: RandomStream):
        self.agent_id = agent_id
        self.cfg = cfg
        self.world = world
        self.link = link
        self.mapping = mapping
        self.slip_rng = streams.substream("slip")
        self.imu_rng = streams.substream("imu")
        self.lidar_rng = streams.substream("lidar")
        self.sensor_rng = streams.substream("sensor")
        self.wander_rng = streams.substream("wander")

        self.truth = GroundTruth(start)
        self.estimator = GreedyEstimator(
            start,
            cfg.scenario,
            process_noise=cfg.estimator.process_noise(),
            geometry=cfg.geometry,
            sigma_imu=cfg.noise.sigma_imu,
            jacobian_prediction=cfg.estimator.jacobian_prediction,
        )
        self.grid = ConfidenceGrid.for_world(world, mapping)
        self.scan: LidarScan = sample_lidar(world, start, cfg.lidar, cfg.noise.sigma_lidar, self.lidar_rng)
        self.command: Optional[WheelCommand] = None

        self.samples: List[Tuple[float, float]] = []
        self.heading_errors: List[float] = []
        self.post_update_errors: List[float] = []
        self.truth_xy = np.empty((cfg.steps + 1, 2))
        self.truth_xy[0] = start.position
        self._pending = None
        self._imu_heading = 0.0
        self._sample(0.0)

    def move(self, k: int) -> None:
        """Управление, физика и датчики шага k."""
        cfg = self.cfg
        self.command = wander_step(self.scan, cfg.wander, self.wander_rng, self.command)
        self.truth = step_ground_truth(self.world, self.truth, self.command, cfg.dt, cfg.geometry)
        self._pending = apply_slip(self.truth.travel, cfg.noise.sigma_slip, self.slip_rng)
        self.scan = sample_lidar(self.world, self.truth.pose, cfg.lidar, cfg.noise.sigma_lidar, self.lidar_rng)
        self._imu_heading = sample_imu(self.truth.pose.theta, cfg.noise.sigma_imu, self.imu_rng)
        self.truth_xy[k] = self.truth.pose.position

    def estimate(self, k: int, t: float, snapshot: SwarmSnapshot) -> None:
        """Оценивание, картирование и выборка ошибки шага k."""
        packet = None
        if self.estimator.scenario is ScenarioKind.GREEDY_SWARM:
            packet = self.link.poll(snapshot, self.agent_id, self.sensor_rng)

        mode = self.estimator.step(self._pending, self._imu_heading, packet)
        if mode is ObservationMode.FULL_POSE:
            self.post_update_errors.append(euclidean_error(self.truth.pose, self.estimator.pose))

        integrate_scan(self.grid, self.estimator.pose, self.scan, self.mapping, self.truth.angular_velocity)

        if k % self.cfg.sample_every == 0:
            self._sample(t)

    def _sample(self, t: float) -> None:
        truth, estimate = self.truth.pose, self.estimator.pose
        self.samples.append((t, euclidean_error(truth, estimate)))
        self.heading_errors.append(abs(wrap_angle(truth.theta - estimate.theta)))

    def to_record(self) -> TrialRecord:
        return TrialRecord(
            scenario=self.estimator.scenario,
            seed=self.cfg.seed,
            samples=self.samples,
            final_grid=self.grid,
            heading_errors=self.heading_errors,
            truth_xy=self.truth_xy,
            post_update_errors=self.post_update_errors,
            post_update_diagonals=self.estimator.collapse_diagonals,
            update_stats=self.estimator.get_update_stats(),
            agent_id=self.agent_id,
        )


def _make_link(cfg: RunConfig) -> BasePeerLink:
    comm = cfg.comm_config()
    if comm.mode == "radius":
        return RadiusPeerLink(comm, cfg.noise.sigma_imu)
    return TemporalPeerLink(comm, cfg.noise.sigma_imu)


def _root_stream(cfg: RunConfig) -> RandomStream:
    # Общие подпотоки дают одинаковые траектории во всех сценариях
    label = "" if cfg.shared_streams else cfg.scenario.value
    return RandomStream(cfg.seed, label)


def _check_start(world: WorldModel, start: Pose, cfg: RunConfig) -> None:
    if not world.contains(start.x, start.y):
        raise ConfigurationError(f"Стартовая поза {start} вне границ мира")
    if world.clearance(start.x, start.y) < cfg.geometry.body_radius:
        raise ConfigurationError(f"Стартовая поза {start} пересекает стену")


def run_swarm_trial(cfg: RunConfig, agent_count: int,
                    world: Optional[WorldModel] = None) -> List[TrialRecord]:
    """
    Испытание роя из agent_count независимых роботов в одном мире.

    Агент 0 стартует из cfg.start, остальные - из случайных свободных поз.
    Роботы не сталкиваются друг с другом; снимок роя для обнаружения
    соседей делается один раз за шаг после движения всех агентов.

    Args:
        cfg: Конфигурация испытания
        agent_count: Число агентов (>= 1)
        world: Мир; по умолчанию загружается из cfg

    Returns:
        Записи испытания по агентам в порядке идентификаторов

    Raises:
        ConfigurationError: При недопустимой конфигурации
    """
    if agent_count < 1:
        raise ValueError("agent_count должен быть не меньше 1")
    cfg.validate()
    world = world or cfg.load_world()
    mapping = cfg.mapping_config()
    root = _root_stream(cfg)

    _check_start(world, cfg.start, cfg)
    placement = root.substream("placement")
    starts = [cfg.start] + [
        world.sample_free_pose(placement, clearance=cfg.geometry.body_radius + 0.3)
        for _ in range(agent_count - 1)
    ]

    agents = [
        _Agent(
            i,
            cfg,
            world,
            start,
            _make_link(cfg),
            mapping,
            root if agent_count == 1 else root.substream(f"agent{i}"),
        )
        for i, start in enumerate(starts)
    ]

    logger.info(
        "Старт испытания",
        scenario=cfg.scenario.value,
        seed=cfg.seed,
        agents=agent_count,
        steps=cfg.steps,
        comm_mode=cfg.comm.mode,
    )

    for k in range(1, cfg.steps + 1):
        t = k * cfg.dt
        for agent in agents:
            agent.move(k)
        snapshot = SwarmSnapshot(
            t=t,
            truths={agent.agent_id: agent.truth.pose for agent in agents},
            beliefs={agent.agent_id: agent.estimator.pose for agent in agents},
        )
        for agent in agents:
            agent.estimate(k, t, snapshot)

    records = [agent.to_record() for agent in agents]
    for record in records:
        logger.info(
            "Испытание завершено",
            scenario=record.scenario.value,
            seed=record.seed,
            agent=record.agent_id,
            peak_error=round(record.peak_error, 6),
            final_error=round(record.final_error, 6),
            full_updates=record.full_updates,
        )
    return records


def run_trial(cfg: RunConfig, world: Optional[WorldModel] = None) -> TrialRecord:
    """
    Одиночное испытание по сценарию cfg.scenario.

    Начальная оценка совпадает с истинной позой, P0 = 0. Шаг цикла:
    блуждание по предыдущему скану, физика, одометрия со скольжением,
    новый скан и курс IMU, шаг фильтра, картирование по оценке, выборка
    ошибки каждые sample_every шагов.

    Args:
        cfg: Конфигурация испытания
        world: Мир; по умолчанию загружается из cfg

    Returns:
        Запись испытания
    """
    return run_swarm_trial(cfg, 1, world)[0]
