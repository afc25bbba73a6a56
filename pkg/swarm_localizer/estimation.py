"""
Ядро оценивания: состояние доверия, шаги прогноза и коррекции фильтра
Калмана и жадное переключение модели наблюдения.

Все функции чистые: принимают значения и возвращают новые значения.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .exceptions import DegenerateUpdateError
from .kinematics import OdometryDelta, RobotGeometry, diff_drive_delta
from .pose import Pose, wrap_angle

# Порог вырожденности нормированного определителя S
SINGULARITY_THRESHOLD = 1e-12
COVARIANCE_TOLERANCE = 1e-9


def is_valid_covariance(p: np.ndarray, tol: float = COVARIANCE_TOLERANCE) -> bool:
    """Проверяет симметричность и неотрицательную определенность матрицы 3x3."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3, 3) or not np.all(np.isfinite(p)):
        return False
    scale = max(1.0, float(np.max(np.abs(p))))
    if not np.allclose(p, p.T, rtol=tol, atol=tol * scale):
        return False
    return bool(np.min(np.linalg.eigvalsh((p + p.T) / 2.0)) >= -tol)


@dataclass(frozen=True, eq=False)
class BeliefState:
    """Оценка позы вместе с ковариацией P (3x3)."""

    mean: Pose
    covariance: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    @classmethod
    def exact(cls, pose: Pose) -> "BeliefState":
        """Точная начальная оценка (P0 = 0)."""
        return cls(pose.normalized(), np.zeros((3, 3)))


class ObservationMode(Enum):
    """Модель наблюдения: только курс или полная поза."""

    HEADING_ONLY = "heading_only"
    FULL_POSE = "full_pose"

    @property
    def dimension(self) -> int:
        return 1 if self is ObservationMode.HEADING_ONLY else 3

    @property
    def matrix(self) -> np.ndarray:
        return _HEADING_MATRIX if self is ObservationMode.HEADING_ONLY else _FULL_POSE_MATRIX


_HEADING_MATRIX = np.array([[0.0, 0.0, 1.0]])
_FULL_POSE_MATRIX = np.eye(3)
for _matrix in (_HEADING_MATRIX, _FULL_POSE_MATRIX):
    _matrix.setflags(write=False)


@dataclass(frozen=True, eq=False)
class Measurement:
    """Вектор измерения z и диагональная ковариация шума R."""

    mode: ObservationMode
    values: np.ndarray
    noise: np.ndarray

    def __post_init__(self):
        dim = self.mode.dimension
        values = np.asarray(self.values, dtype=float).reshape(-1)
        noise = np.asarray(self.noise, dtype=float)
        if noise.ndim == 1:
            noise = np.diag(noise)
        if values.shape != (dim,) or noise.shape != (dim, dim):
            raise ValueError(
                f"Размерность измерения не соответствует режиму {self.mode.value}: "
                f"values={values.shape}, noise={noise.shape}"
            )
        if np.any(np.diag(noise) < 0):
            raise ValueError("Диагональ шума измерения не может быть отрицательной")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "noise", noise)

    @classmethod
    def heading(cls, theta: float, sigma_imu: float) -> "Measurement":
        return cls(ObservationMode.HEADING_ONLY, np.array([theta]), np.array([[sigma_imu ** 2]]))

    @classmethod
    def full_pose(cls, pose: Pose, noise_diagonal) -> "Measurement":
        return cls(ObservationMode.FULL_POSE, pose.as_array(), np.diag(noise_diagonal))


@dataclass(frozen=True, eq=False)
class ProcessNoise:
    """Диагональная ковариация шума процесса Q на один шаг."""

    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.ndim == 1:
            q = np.diag(q)
        if q.shape != (3, 3) or np.any(np.diag(q) < 0):
            raise ValueError("Q должна быть матрицей 3x3 с неотрицательной диагональю")
        object.__setattr__(self, "q", q)

    @classmethod
    def from_std(cls, sigma_xy: float, sigma_theta: float) -> "ProcessNoise":
        return cls(np.diag([sigma_xy ** 2, sigma_xy ** 2, sigma_theta ** 2]))

    @classmethod
    def default(cls) -> "ProcessNoise":
        return cls.from_std(1e-3, 2e-3)


def predict_covariance(p: np.ndarray, q: ProcessNoise) -> np.ndarray:
    """P_{k|k-1} = P_{k-1|k-1} + Q."""
    return np.asarray(p, dtype=float) + q.q


def motion_jacobian(pose: Pose, odo: OdometryDelta, geom: RobotGeometry) -> np.ndarray:
    """Якобиан модели движения по состоянию для интегрирования в середине шага."""
    d = (odo.d_left + odo.d_right) / 2.0
    heading = pose.theta + (odo.d_right - odo.d_left) / (2.0 * geom.axle_length)
    return np.array([
        [1.0, 0.0, -d * math.sin(heading)],
        [0.0, 1.0, d * math.cos(heading)],
        [0.0, 0.0, 1.0],
    ])


def predict_state(belief: BeliefState, odo: OdometryDelta, q: ProcessNoise,
                  geom: Optional[RobotGeometry] = None,
                  jacobian: bool = False) -> BeliefState:
    """
    Шаг прогноза по одометрии.

    Args:
        belief: Текущее состояние доверия
        odo: Приращения колес (возможно, с проскальзыванием)
        q: Шум процесса
        geom: Геометрия робота
        jacobian: Распространять P через якобиан (F P F^T + Q) вместо P + Q

    Returns:
        Новое состояние доверия
    """
    geom = geom or RobotGeometry()
    mean = diff_drive_delta(belief.mean, odo, geom)
    if jacobian:
        f = motion_jacobian(belief.mean, odo, geom)
        covariance = f @ belief.covariance @ f.T + q.q
    else:
        covariance = predict_covariance(belief.covariance, q)
    return BeliefState(mean, covariance)


def _check_innovation_covariance(s: np.ndarray) -> None:
    diag = np.diag(s)
    if np.any(diag <= 0.0):
        raise DegenerateUpdateError("Ковариация невязки S вырождена (нулевая диагональ)")
    scale = 1.0 / np.sqrt(diag)
    normalized = s * np.outer(scale, scale)
    if abs(np.linalg.det(normalized)) < SINGULARITY_THRESHOLD:
        raise DegenerateUpdateError("Ковариация невязки S вырождена")


def kalman_update(belief: BeliefState, z: Measurement) -> BeliefState:
    """
    Стандартная коррекция Калмана для выбранной модели наблюдения.

    S = H P H^T + R, K = P H^T S^-1, x += K (z - H x), P = P - K H P.
    Угловая компонента невязки берется по кратчайшей дуге, P
    симметризуется.

    Raises:
        DegenerateUpdateError: Если S вырождена
    """
    if z.mode is ObservationMode.HEADING_ONLY:
        return _heading_update(belief, z)

    h = z.mode.matrix
    x = belief.mean.as_array()
    p = belief.covariance

    s = h @ p @ h.T + z.noise
    _check_innovation_covariance(s)
    gain = np.linalg.solve(s, h @ p).T

    innovation = z.values - h @ x
    # Курс - последняя компонента в обоих режимах
    innovation[-1] = wrap_angle(float(innovation[-1]))

    x_new = x + gain @ innovation
    p_new = p - gain @ h @ p
    p_new = (p_new + p_new.T) / 2.0

    return BeliefState(Pose(float(x_new[0]), float(x_new[1]), wrap_angle(float(x_new[2]))), p_new)


def _heading_update(belief: BeliefState, z: Measurement) -> BeliefState:
    """Коррекция по курсу при H = [0 0 1]: S - скаляр P[2, 2] + R."""
    p = belief.covariance
    s = float(p[2, 2] + z.noise[0, 0])
    if s <= 0.0:
        raise DegenerateUpdateError("Ковариация невязки S вырождена (нулевая диагональ)")
    gain = p[:, 2] / s
    innovation = wrap_angle(float(z.values[0]) - belief.mean.theta)

    mean = belief.mean
    p_new = p - np.outer(gain, p[2, :])
    p_new = (p_new + p_new.T) / 2.0
    return BeliefState(
        Pose(float(mean.x + gain[0] * innovation), float(mean.y + gain[1] * innovation),
             wrap_angle(float(mean.theta + gain[2] * innovation))),
        p_new,
    )


def select_observation_mode(peer_available: bool) -> ObservationMode:
    """Жадная политика: полная поза при наличии пакета от соседа, иначе только курс."""
    return ObservationMode.FULL_POSE if peer_available else ObservationMode.HEADING_ONLY
