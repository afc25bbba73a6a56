"""
Поза робота на плоскости и нормализация углов.

Часть ядра оценивания: вектор состояния x = [x, y, theta]^T.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """
    Приводит угол к полуинтервалу (-pi, pi].

    Args:
        theta: Угол в радианах (конечное число)

    Returns:
        Эквивалентный по модулю 2*pi угол из (-pi, pi]

    Raises:
        ValueError: Если угол не является конечным числом
    """
    if not math.isfinite(theta):
        raise ValueError(f"Угол должен быть конечным числом, получено: {theta}")

    # Уже нормализованный угол возвращаем без изменений (идемпотентность)
    if -math.pi < theta <= math.pi:
        return theta

    wrapped = math.fmod(theta + math.pi, TWO_PI)
    if wrapped <= 0.0:
        wrapped += TWO_PI
    result = wrapped - math.pi
    # Округление может дать ровно -pi
    return result if result > -math.pi else math.pi


@dataclass(frozen=True)
class Pose:
    """Поза на плоскости: координаты в метрах и курс в радианах."""

    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0

    @property
    def position(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def normalized(self) -> "Pose":
        """Возвращает ту же позу с курсом, приведенным к (-pi, pi]."""
        return Pose(self.x, self.y, wrap_angle(self.theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.theta], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Pose":
        return cls(float(values[0]), float(values[1]), float(values[2]))
