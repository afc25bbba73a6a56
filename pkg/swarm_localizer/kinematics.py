"""
Кинематика дифференциального привода и модель проскальзывания энкодеров.
"""

import math
from dataclasses import dataclass

from .pose import Pose, wrap_angle


@dataclass(frozen=True)
class OdometryDelta:
    """Приращения длины дуги левого и правого колеса за один шаг (м)."""

    d_left: float = 0.0
    d_right: float = 0.0

    @property
    def distance(self) -> float:
        return (self.d_left + self.d_right) / 2.0

    def within_bounds(self, max_wheel_speed: float, dt: float) -> bool:
        limit = max_wheel_speed * dt
        return abs(self.d_left) <= limit and abs(self.d_right) <= limit


@dataclass(frozen=True)
class RobotGeometry:
    """
    Геометрия робота Pioneer 3-DX.

    Значения по умолчанию взяты из паспорта производителя.
    """

    wheel_radius: float = 0.0975
    axle_length: float = 0.33
    body_radius: float = 0.2
    max_wheel_speed: float = 1.2

    def __post_init__(self):
        for name in ("wheel_radius", "axle_length", "body_radius", "max_wheel_speed"):
            if getattr(self, name) <= 0:
                raise ValueError(f"Параметр геометрии '{name}' должен быть положительным")


def diff_drive_delta(pose: Pose, odo: OdometryDelta, geom: RobotGeometry) -> Pose:
    """
    Продвигает позу по модели дифференциального привода.

    Интегрирование по курсу в середине шага: смещение d = (dL + dR) / 2
    откладывается вдоль theta + dtheta / 2.

    Args:
        pose: Текущая поза
        odo: Приращения колес за шаг
        geom: Геометрия робота

    Returns:
        Новая поза с нормализованным курсом
    """
    d = (odo.d_left + odo.d_right) / 2.0
    d_theta = (odo.d_right - odo.d_left) / geom.axle_length
    heading = pose.theta + d_theta / 2.0
    return Pose(
        pose.x + d * math.cos(heading),
        pose.y + d * math.sin(heading),
        wrap_angle(pose.theta + d_theta),
    )


def apply_slip(true_odo: OdometryDelta, sigma_slip: float, rng) -> OdometryDelta:
    """
    Искажает показания энкодеров случайным коэффициентом проскальзывания.

    Каждое колесо умножается на независимую выборку из N(1.0, sigma_slip).

    Args:
        true_odo: Фактический пробег колес
        sigma_slip: Стандартное отклонение коэффициента (безразмерное)
        rng: Поток случайных чисел (RandomStream)

    Returns:
        Зашумленные приращения колес
    """
    if sigma_slip < 0:
        raise ValueError("sigma_slip не может быть отрицательным")

    factors = 1.0 + sigma_slip * rng.standard_normal(2)
    return OdometryDelta(true_odo.d_left * float(factors[0]), true_odo.d_right * float(factors[1]))
