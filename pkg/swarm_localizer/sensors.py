"""
Модели датчиков с шумом: курс IMU, скан LiDAR и детерминированные потоки
случайных чисел.
"""

import math
import zlib
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .pose import Pose, wrap_angle

MAX_RAY_COUNT = 682


class RandomStream:
    """
    Детерминированный поток случайных чисел (PCG64).

    Подпотоки выводятся из сида испытания по фиксированным меткам, поэтому
    одинаковые (seed, label) дают одинаковые последовательности на любой
    платформе.
    """

    def __init__(self, seed: int, label: str = ""):
        if seed < 0 or seed >= 2 ** 64:
            raise ValueError(f"Сид должен быть 64-битным неотрицательным целым: {seed}")
        self.seed = int(seed)
        self.label = label
        spawn_key = tuple(zlib.crc32(part.encode("utf-8")) for part in label.split("/") if part)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(sequence))

    def substream(self, label: str) -> "RandomStream":
        """Независимый подпоток с меткой label."""
        return RandomStream(self.seed, f"{self.label}/{label}" if self.label else label)

    def standard_normal(self, size=None):
        return self._generator.standard_normal(size)

    def normal(self, loc: float = 0.0, scale: float = 1.0, size=None):
        return loc + scale * self._generator.standard_normal(size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self._generator.uniform(low, high, size)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, label={self.label!r})"


@dataclass(frozen=True)
class LidarConfig:
    """Параметры лазерного дальномера Hokuyo URG-04LX."""

    fov: float = math.radians(240.0)
    max_range: float = 5.6
    ray_count: int = 240

    def __post_init__(self):
        if not 1 <= self.ray_count <= MAX_RAY_COUNT:
            raise ValueError(f"ray_count должен быть в диапазоне [1, {MAX_RAY_COUNT}]")
        if self.max_range <= 0 or self.fov <= 0:
            raise ValueError("max_range и fov должны быть положительными")

    @cached_property
    def angles(self) -> np.ndarray:
        """Углы лучей относительно курса, от -fov/2 до +fov/2."""
        if self.ray_count == 1:
            return np.zeros(1)
        return np.linspace(-self.fov / 2.0, self.fov / 2.0, self.ray_count)


@dataclass(frozen=True, eq=False)
class LidarScan:
    """
    Скан LiDAR. Отсутствующие отражения хранятся как NaN.
    """

    ranges: np.ndarray
    angles: np.ndarray
    max_range: float = 5.6

    @property
    def ray_count(self) -> int:
        return len(self.ranges)

    @property
    def present(self) -> np.ndarray:
        return ~np.isnan(self.ranges)

    def filled(self, fill: Optional[float] = None) -> np.ndarray:
        """Дальности, где отсутствующие лучи заменены на fill (по умолчанию max_range)."""
        return np.where(self.present, self.ranges, self.max_range if fill is None else fill)


def sample_imu(true_theta: float, sigma_imu: float, rng: RandomStream) -> float:
    """Курс IMU: wrap(theta + N(0, sigma_imu))."""
    if sigma_imu < 0:
        raise ValueError("sigma_imu не может быть отрицательным")
    return wrap_angle(true_theta + sigma_imu * float(rng.standard_normal()))


def sample_lidar(world, true_pose: Pose, config: LidarConfig, sigma_lidar: float,
                 rng: RandomStream) -> LidarScan:
    """
    Моделирует скан из истинной позы.

    Для каждого луча выполняется трассировка, к найденной дальности
    добавляется N(0, sigma_lidar), результат ограничивается (0, max_range].
    Шум выбирается для всех лучей, чтобы длина потока не зависела от сцены.

    Args:
        world: Модель мира (WorldModel)
        true_pose: Истинная поза датчика
        config: Параметры дальномера
        sigma_lidar: СКО шума дальности (м)
        rng: Поток случайных чисел

    Returns:
        Скан LiDAR
    """
    if sigma_lidar < 0:
        raise ValueError("sigma_lidar не может быть отрицательным")

    angles = config.angles
    ranges = world.ray_cast_many(true_pose.position, true_pose.theta + angles, config.max_range)
    noise = sigma_lidar * rng.standard_normal(config.ray_count)
    noisy = np.clip(ranges + noise, np.finfo(float).tiny, config.max_range)
    return LidarScan(noisy, angles.copy(), config.max_range)

