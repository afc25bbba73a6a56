"""
Пакеты локализации и правила контакта с соседями.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..estimation import Measurement
from ..exceptions import ConfigurationError, PeerNotFoundError
from ..pose import Pose
from ..sensors import RandomStream, sample_imu

# Допуск сравнения времени: t накапливается как k * dt
TIME_EPSILON = 1e-9

COMM_MODES = ("temporal", "radius")
PACKET_SOURCES = ("truth", "sender_belief")

# sender_id виртуального соседа во временном прокси
PROXY_SENDER_ID = -1


@dataclass(frozen=True)
class CommConfig:
    """Параметры связи: интервал синхронизации, радиус обнаружения, шум позиции."""

    t_sync: float = 4.0
    r_mask: float = 0.55
    sigma_sensor: float = 0.02
    mode: str = "temporal"
    packet_source: str = "truth"

    def __post_init__(self):
        if self.t_sync <= 0:
            raise ConfigurationError("t_sync должен быть положительным")
        if self.r_mask <= 0:
            raise ConfigurationError("r_mask должен быть положительным")
        if self.sigma_sensor < 0:
            raise ConfigurationError("sigma_sensor не может быть отрицательным")
        if self.mode not in COMM_MODES:
            raise ConfigurationError(f"Неизвестный режим связи: {self.mode}")
        if self.packet_source not in PACKET_SOURCES:
            raise ConfigurationError(f"Неизвестный источник пакета: {self.packet_source}")


@dataclass(frozen=True, eq=False)
class LocalizationPacket:
    """Пакет локализации, переданный соседом."""

    position: Tuple[float, float]
    heading: float
    noise: np.ndarray
    sender_id: int
    timestamp: float

    @property
    def pose(self) -> Pose:
        return Pose(self.position[0], self.position[1], self.heading)

    def to_measurement(self) -> Measurement:
        """Измерение полной позы (H = I) с диагональным шумом пакета."""
        return Measurement.full_pose(self.pose, self.noise)


@dataclass(frozen=True)
class SwarmSnapshot:
    """Снимок роя на момент t, сделанный до обновления агентов."""

    t: float
    truths: Dict[int, Pose]
    beliefs: Dict[int, Pose] = field(default_factory=dict)

    def positions(self) -> List[Tuple[int, Tuple[float, float]]]:
        return [(agent_id, pose.position) for agent_id, pose in self.truths.items()]


def peer_event_due(t: float, last_event: float, cfg: CommConfig) -> bool:
    """Наступил ли очередной контакт временного прокси: t - last_event >= t_sync."""
    return t - last_event >= cfg.t_sync - TIME_EPSILON


def make_packet(true_pose: Pose, cfg: CommConfig, sigma_imu: float, rng: RandomStream,
                t: float, sender_id: int = PROXY_SENDER_ID) -> LocalizationPacket:
    """
    Формирует пакет из истинной позы с синтетическим шумом.

    Args:
        true_pose: Истинная поза получателя
        cfg: Параметры связи (sigma_sensor)
        sigma_imu: СКО шума курса (рад)
        rng: Поток случайных чисел
        t: Момент времени (с)
        sender_id: Идентификатор отправителя

    Returns:
        Пакет локализации
    """
    offsets = cfg.sigma_sensor * rng.standard_normal(2)
    heading = sample_imu(true_pose.theta, sigma_imu, rng)
    return LocalizationPacket(
        position=(true_pose.x + float(offsets[0]), true_pose.y + float(offsets[1])),
        heading=heading,
        noise=np.array([cfg.sigma_sensor ** 2, cfg.sigma_sensor ** 2, sigma_imu ** 2]),
        sender_id=sender_id,
        timestamp=t,
    )


def detect_peers_radius(positions: Sequence[Tuple[int, Tuple[float, float]]], self_id: int,
                        cfg: CommConfig) -> List[int]:
    """
    Идентификаторы агентов в радиусе r_mask от self_id (включительно).

    Raises:
        PeerNotFoundError: Если self_id нет среди позиций
    """
    lookup = dict(positions)
    if self_id not in lookup:
        raise PeerNotFoundError(f"Агент {self_id} отсутствует в снимке позиций")

    sx, sy = lookup[self_id]
    return [
        agent_id for agent_id, (x, y) in positions
        if agent_id != self_id and math.hypot(x - sx, y - sy) <= cfg.r_mask
    ]
