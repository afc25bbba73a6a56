"""
Конфигурация испытаний: параметры шумов, оценщика и всех подсистем.

Файл конфигурации - INI-текст с секциями [run], [noise], [estimator],
[mapping], [wander], [geometry], [lidar], [comm]. Параметры шума и связи
задаются в секции [noise]: sigma_slip, sigma_imu, sigma_lidar, sigma_sensor,
t_sync, r_mask, omega_thresh, tau_conf.
"""

import configparser
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .comm.packets import CommConfig
from .controller import WanderParams
from .estimation import ProcessNoise
from .exceptions import ConfigurationError, WorldFileError
from .kinematics import RobotGeometry
from .mapping import MappingConfig
from .pose import Pose
from .sensors import LidarConfig
from .world import DEFAULT_START, WorldModel, default_maze, load_world


class ScenarioKind(Enum):
    """Сценарии сравнения."""
    BASELINE = "baseline"
    IMU_FUSED = "imu"
    GREEDY_SWARM = "greedy"


@dataclass(frozen=True)
class NoiseConfig:
    """Параметры шумов и связи (значения по умолчанию - номинальные)."""

    sigma_slip: float = 0.02
    sigma_imu: float = 0.02
    sigma_lidar: float = 0.02
    sigma_sensor: float = 0.02
    t_sync: float = 4.0
    r_mask: float = 0.55
    omega_thresh: float = 0.05
    tau_conf: int = 30

    def __post_init__(self):
        for name in ("sigma_slip", "sigma_imu", "sigma_lidar", "sigma_sensor"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} не может быть отрицательным")

    @classmethod
    def noiseless(cls) -> "NoiseConfig":
        return cls(sigma_slip=0.0, sigma_imu=0.0, sigma_lidar=0.0, sigma_sensor=0.0)


@dataclass(frozen=True)
class EstimatorConfig:
    """СКО шума процесса Q на шаг 32 мс и вариант прогноза ковариации."""

    q_xy: float = 1e-3
    q_theta: float = 2e-3
    jacobian_prediction: bool = False

    def process_noise(self) -> ProcessNoise:
        return ProcessNoise.from_std(self.q_xy, self.q_theta)


@dataclass(frozen=True)
class RunConfig:
    """Полная конфигурация одного испытания."""

    duration: float = 600.0
    dt: float = 0.032
    scenario: ScenarioKind = ScenarioKind.GREEDY_SWARM
    seed: int = 1
    world_path: Optional[str] = None
    start: Pose = DEFAULT_START
    sample_every: int = 3
    shared_streams: bool = True
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
    mapping: MappingConfig = field(default_factory=MappingConfig)
    wander: WanderParams = field(default_factory=WanderParams)
    geometry: RobotGeometry = field(default_factory=RobotGeometry)
    lidar: LidarConfig = field(default_factory=LidarConfig)
    comm: CommConfig = field(default_factory=CommConfig)

    @property
    def steps(self) -> int:
        return int(round(self.duration / self.dt))

    def mapping_config(self) -> MappingConfig:
        return replace(self.mapping, omega_thresh=self.noise.omega_thresh, tau_conf=self.noise.tau_conf)

    def comm_config(self) -> CommConfig:
        return replace(
            self.comm,
            t_sync=self.noise.t_sync,
            r_mask=self.noise.r_mask,
            sigma_sensor=self.noise.sigma_sensor,
        )

    def load_world(self) -> WorldModel:
        return load_world(self.world_path) if self.world_path else default_maze()

    def validate(self) -> None:
        """
        Проверяет согласованность конфигурации до запуска.

        Raises:
            ConfigurationError: При недопустимых значениях
        """
        if self.duration <= 0:
            raise ConfigurationError("duration должен быть положительным")
        if self.dt <= 0:
            raise ConfigurationError("dt должен быть положительным")
        if self.steps < 1:
            raise ConfigurationError("duration должен покрывать хотя бы один шаг dt")
        if self.sample_every < 1:
            raise ConfigurationError("sample_every должен быть не меньше 1")
        if self.seed < 0:
            raise ConfigurationError("seed не может быть отрицательным")
        if not isinstance(self.scenario, ScenarioKind):
            raise ConfigurationError(f"Неизвестный сценарий: {self.scenario}")
        if self.lidar.max_range <= self.wander.avoid_distance:
            raise ConfigurationError("avoid_distance должен быть меньше дальности LiDAR")
        if self.noise.t_sync < self.dt:
            raise ConfigurationError("t_sync не может быть меньше шага dt")
        self.mapping_config()
        self.comm_config()


_SECTIONS = {
    "noise": "noise",
    "estimator": "estimator",
    "mapping": "mapping",
    "wander": "wander",
    "geometry": "geometry",
    "lidar": "lidar",
    "comm": "comm",
}

# Параметры картирования из таблицы задаются в [noise]
_MAPPING_TABLE_KEYS = ("omega_thresh", "tau_conf")


def _coerce(raw: str, template: Any, key: str) -> Any:
    try:
        if isinstance(template, bool):
            state = configparser.ConfigParser.BOOLEAN_STATES.get(raw.strip().lower())
            if state is None:
                raise ValueError(raw)
            return state
        if isinstance(template, int):
            return int(raw)
        if isinstance(template, float):
            return float(raw)
        if isinstance(template, ScenarioKind):
            return ScenarioKind(raw.strip())
        return raw.strip()
    except ValueError:
        raise WorldFileError(f"Недопустимое значение '{raw}' для ключа '{key}'")


def _section_overrides(section: configparser.SectionProxy, target: Any, skip=()) -> Dict[str, Any]:
    known = {f.name: getattr(target, f.name) for f in fields(target)}
    overrides = {}
    for key, raw in section.items():
        if key not in known or key in skip:
            raise WorldFileError(f"Неизвестный ключ '{key}' в секции [{section.name}]")
        overrides[key] = _coerce(raw, known[key], key)
    return overrides


def load_config(path: Union[str, Path], base: Optional[RunConfig] = None) -> RunConfig:
    """
    Читает INI-файл конфигурации поверх base (или значений по умолчанию).

    Args:
        path: Путь к файлу
        base: Исходная конфигурация

    Returns:
        Новая конфигурация

    Raises:
        WorldFileError: При синтаксической ошибке или неизвестном ключе
        ConfigurationError: При недопустимых значениях
    """
    parser = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as e:
        raise WorldFileError(f"Ошибка разбора {path}: {e}")

    config = base or RunConfig()
    updates: Dict[str, Any] = {}

    for name in parser.sections():
        section = parser[name]
        if name == "run":
            updates.update(_run_overrides(section, config))
        elif name in _SECTIONS:
            attr = _SECTIONS[name]
            current = getattr(config, attr)
            skip = _MAPPING_TABLE_KEYS if name == "mapping" else ()
            overrides = _section_overrides(section, current, skip)
            try:
                updates[attr] = replace(current, **overrides)
            except ValueError as e:
                raise ConfigurationError(f"Секция [{name}]: {e}")
        else:
            raise WorldFileError(f"Неизвестная секция [{name}] в {path}")

    return replace(config, **updates)


def _run_overrides(section: configparser.SectionProxy, config: RunConfig) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    for key, raw in section.items():
        if key == "world":
            overrides["world_path"] = raw.strip() or None
        elif key == "start":
            parts = raw.split()
            if len(parts) != 3:
                raise WorldFileError("Ключ 'start' ожидает три числа: x y theta")
            overrides["start"] = Pose(*(_coerce(p, 0.0, key) for p in parts))
        elif key in ("duration", "dt", "seed", "scenario", "sample_every", "shared_streams"):
            overrides[key] = _coerce(raw, getattr(config, key), key)
        else:
            raise WorldFileError(f"Неизвестный ключ '{key}' в секции [run]")
    return overrides
