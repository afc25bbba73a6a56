"""
Стохастическое блуждание: реактивный контроллер исследования по скану LiDAR.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .sensors import LidarScan, RandomStream


@dataclass(frozen=True)
class WheelCommand:
    """Скорости обода левого и правого колеса (м/с)."""

    v_left: float = 0.0
    v_right: float = 0.0


@dataclass(frozen=True)
class WanderParams:
    """Параметры блуждания."""

    cruise_speed: float = 0.3
    noise_factor: float = 0.2
    steering_bias: float = 0.05
    avoid_distance: float = 0.6
    avoid_sector: float = math.radians(30.0)
    max_wheel_speed: float = 1.2

    def __post_init__(self):
        for name in ("cruise_speed", "noise_factor", "steering_bias", "avoid_distance", "avoid_sector"):
            if getattr(self, name) < 0:
                raise ValueError(f"Параметр блуждания '{name}' не может быть отрицательным")
        if self.max_wheel_speed <= 0:
            raise ValueError("max_wheel_speed должен быть положительным")


def _clamp(value: float, limit: float) -> float:
    return min(max(value, -limit), limit)


def _side_minimum(ranges: np.ndarray, mask: np.ndarray, default: float) -> float:
    return float(np.min(ranges[mask])) if np.any(mask) else default


def _is_spin(command: Optional[WheelCommand]) -> bool:
    return command is not None and command.v_left != 0.0 and command.v_left == -command.v_right


def wander_step(scan: LidarScan, params: WanderParams, rng: RandomStream,
                previous: Optional[WheelCommand] = None) -> WheelCommand:
    """
    Одна команда блуждания.

    Если в секторе +-avoid_sector есть препятствие ближе avoid_distance,
    робот разворачивается на месте от стороны, где ближайшее препятствие
    этого сектора ближе (колесо этой стороны ускоряется). При равных
    минимумах робот уходит от половины поля зрения с меньшим средним просветом.
    Если предыдущая команда уже была разворотом на месте, направление
    сохраняется до освобождения сектора.

    Вне маневра к крейсерской скорости добавляется дифференциальная добавка
    steering_bias * v + N(0, noise_factor * v). Выборка шума делается
    на каждом шаге, чтобы поток не зависел от сцены.

    Args:
        scan: Скан LiDAR
        params: Параметры блуждания
        rng: Поток случайных чисел
        previous: Команда предыдущего шага

    Returns:
        Команда на колеса в пределах max_wheel_speed
    """
    cruise = params.cruise_speed
    jitter = float(rng.standard_normal())

    ranges = scan.filled()
    frontal = np.abs(scan.angles) <= params.avoid_sector
    front_min = _side_minimum(ranges, frontal, math.inf)

    if front_min < params.avoid_distance:
        if _is_spin(previous):
            v_left, v_right = math.copysign(cruise, previous.v_left), math.copysign(cruise, previous.v_right)
        else:
            left = scan.angles > 0
            right = scan.angles < 0
            left_min = _side_minimum(ranges, frontal & left, scan.max_range)
            right_min = _side_minimum(ranges, frontal & right, scan.max_range)
            if left_min == right_min:
                # Ничья: от половины с меньшим средним просветом
                left_min = float(np.mean(ranges[left])) if np.any(left) else scan.max_range
                right_min = float(np.mean(ranges[right])) if np.any(right) else scan.max_range
            if left_min <= right_min:
                v_left, v_right = cruise, -cruise
            else:
                v_left, v_right = -cruise, cruise
    else:
        delta = params.steering_bias * cruise + params.noise_factor * cruise * jitter
        v_left = cruise - delta / 2.0
        v_right = cruise + delta / 2.0

    limit = params.max_wheel_speed
    return WheelCommand(_clamp(v_left, limit), _clamp(v_right, limit))
