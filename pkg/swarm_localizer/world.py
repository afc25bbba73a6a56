"""
Лабиринт 15 м x 15 м: стены-отрезки, трассировка лучей и интегрирование
истинного движения робота.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from .exceptions import OutOfBoundsError, WorldFileError
from .kinematics import OdometryDelta, RobotGeometry, diff_drive_delta
from .pose import Pose

BOUNDARY_TOLERANCE = 1e-9
_HIT_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class WorldModel:
    """
    Неизменяемая модель мира.

    Границы центрированы в начале координат: [-W/2, W/2] x [-H/2, H/2].
    Внешний контур добавляется всегда, interior хранит только внутренние
    стены в виде строк (x1, y1, x2, y2).
    """

    width: float
    height: float
    interior: np.ndarray = field(default_factory=lambda: np.zeros((0, 4)))

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("Размеры мира должны быть положительными")

        interior = np.asarray(self.interior, dtype=float).reshape(-1, 4)
        x_max, y_max = self.width / 2.0, self.height / 2.0
        if interior.size and (
            np.any(np.abs(interior[:, [0, 2]]) > x_max + BOUNDARY_TOLERANCE)
            or np.any(np.abs(interior[:, [1, 3]]) > y_max + BOUNDARY_TOLERANCE)
        ):
            raise WorldFileError("Концы стен должны лежать внутри границ мира")

        boundary = np.array([
            [-x_max, -y_max, x_max, -y_max],
            [x_max, -y_max, x_max, y_max],
            [x_max, y_max, -x_max, y_max],
            [-x_max, y_max, -x_max, -y_max],
        ])
        walls = np.vstack([boundary, interior])
        starts = walls[:, :2].copy()
        vectors = walls[:, 2:] - walls[:, :2]
        lengths_sq = np.einsum("ij,ij->i", vectors, vectors)
        if np.any(lengths_sq <= 0.0):
            raise WorldFileError("Стены нулевой длины недопустимы")

        for array in (interior, walls, starts, vectors, lengths_sq):
            array.setflags(write=False)
        object.__setattr__(self, "interior", interior)
        object.__setattr__(self, "walls", walls)
        object.__setattr__(self, "_starts", starts)
        object.__setattr__(self, "_vectors", vectors)
        object.__setattr__(self, "_lengths_sq", lengths_sq)

    @classmethod
    def from_segments(cls, width: float, height: float,
                      segments: Iterable[Tuple[float, float, float, float]]) -> "WorldModel":
        return cls(width, height, np.array(list(segments), dtype=float).reshape(-1, 4))

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        """(x_min, y_min, x_max, y_max)."""
        return (-self.width / 2.0, -self.height / 2.0, self.width / 2.0, self.height / 2.0)

    def contains(self, x: float, y: float) -> bool:
        x_min, y_min, x_max, y_max = self.bounds
        return x_min <= x <= x_max and y_min <= y <= y_max

    def ray_cast_many(self, origin: Tuple[float, float], angles: np.ndarray,
                      max_range: float) -> np.ndarray:
        """
        Векторная трассировка пучка лучей.

        Args:
            origin: Начало лучей (x, y)
            angles: Абсолютные углы лучей (рад)
            max_range: Максимальная дальность (м)

        Returns:
            Массив дальностей до ближайшей стены, NaN если пересечения нет

        Raises:
            OutOfBoundsError: Если начало лучей вне мира
        """
        ox, oy = origin
        if not self.contains(ox, oy):
            raise OutOfBoundsError(f"Точка ({ox}, {oy}) вне границ мира")

        angles = np.atleast_1d(np.asarray(angles, dtype=float))
        dx = np.cos(angles)[:, None]
        dy = np.sin(angles)[:, None]
        ex = self._vectors[:, 0]
        ey = self._vectors[:, 1]
        wx = self._starts[:, 0] - ox
        wy = self._starts[:, 1] - oy

        # o + t*d = p + u*e  ->  t = (w x e) / (d x e), u = (w x d) / (d x e)
        denom = dx * ey - dy * ex
        # Параллельные пары: t = 0 не проходит проверку t > eps
        denom[np.abs(denom) <= _HIT_EPS] = np.inf
        t = (wx * ey - wy * ex) / denom
        u = (wx * dy - wy * dx) / denom
        t[(t <= _HIT_EPS) | (t > max_range) | (u < -_HIT_EPS) | (u > 1.0 + _HIT_EPS)] = np.inf
        hits = t.min(axis=1)
        hits[np.isinf(hits)] = np.nan
        return hits

    def clearance(self, x: float, y: float) -> float:
        """Расстояние от точки до ближайшей стены."""
        return float(self.clearance_many(np.array([x]), np.array([y]))[0])

    def clearance_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Расстояния от набора точек до ближайшей стены."""
        px = np.asarray(xs, dtype=float).reshape(-1, 1) - self._starts[:, 0]
        py = np.asarray(ys, dtype=float).reshape(-1, 1) - self._starts[:, 1]
        u = (px * self._vectors[:, 0] + py * self._vectors[:, 1]) / self._lengths_sq
        np.clip(u, 0.0, 1.0, out=u)
        cx = px - u * self._vectors[:, 0]
        cy = py - u * self._vectors[:, 1]
        return np.sqrt(np.min(cx * cx + cy * cy, axis=1))

    def sample_free_pose(self, rng, clearance: float = 0.5, max_attempts: int = 10000) -> Pose:
        """
        Случайная поза со свободным пространством не менее clearance вокруг.

        Raises:
            OutOfBoundsError: Если за max_attempts попыток поза не найдена
        """
        x_min, y_min, x_max, y_max = self.bounds
        for _ in range(max_attempts):
            x = float(rng.uniform(x_min + clearance, x_max - clearance))
            y = float(rng.uniform(y_min + clearance, y_max - clearance))
            theta = float(rng.uniform(-math.pi, math.pi))
            if self.clearance(x, y) >= clearance:
                return Pose(x, y, theta).normalized()
        raise OutOfBoundsError("Не удалось найти свободную позу в мире")


@dataclass(frozen=True)
class GroundTruth:
    """
    Истинное состояние робота.

    travel хранит фактический пробег колес за последний шаг: именно его
    считывают энкодеры.
    """

    pose: Pose
    angular_velocity: float = 0.0
    linear_velocity: float = 0.0
    travel: OdometryDelta = OdometryDelta()


def ray_cast(world: WorldModel, origin: Tuple[float, float], angle: float,
             max_range: float) -> Optional[float]:
    """Дальность до ближайшей стены вдоль луча или None, если ее нет в пределах max_range."""
    hit = world.ray_cast_many(origin, np.array([angle]), max_range)[0]
    return None if np.isnan(hit) else float(hit)


def step_ground_truth(world: WorldModel, gt: GroundTruth, cmd, dt: float,
                      geom: RobotGeometry) -> GroundTruth:
    """
    Интегрирует командные скорости колес за шаг dt.

    Если новая позиция оказывается ближе body_radius к стене, позиция
    сохраняется, а курс продолжает интегрироваться (остановка без скольжения).

    Args:
        world: Модель мира
        gt: Текущее истинное состояние
        cmd: Команда на колеса (WheelCommand)
        dt: Шаг по времени (с)
        geom: Геометрия робота

    Returns:
        Новое истинное состояние
    """
    if dt <= 0:
        raise ValueError("dt должен быть положительным")

    limit = geom.max_wheel_speed
    v_left = min(max(cmd.v_left, -limit), limit)
    v_right = min(max(cmd.v_right, -limit), limit)
    commanded = OdometryDelta(v_left * dt, v_right * dt)
    candidate = diff_drive_delta(gt.pose, commanded, geom)

    if world.clearance(candidate.x, candidate.y) >= geom.body_radius:
        travel = commanded
        pose = candidate
    else:
        half = (commanded.d_right - commanded.d_left) / 2.0
        travel = OdometryDelta(-half, half)
        pose = Pose(gt.pose.x, gt.pose.y, candidate.theta)

    return GroundTruth(
        pose=pose,
        angular_velocity=(travel.d_right - travel.d_left) / geom.axle_length / dt,
        linear_velocity=travel.distance / dt,
        travel=travel,
    )


# Внутренние стены встроенного лабиринта (x1, y1, x2, y2), м
_DEFAULT_INTERIOR = (
    (-7.5, 2.5, -2.5, 2.5),
    (-2.5, 2.5, -2.5, 5.0),
    (2.5, 7.5, 2.5, 3.0),
    (-4.5, -7.5, -4.5, -2.0),
    (1.0, -4.5, 1.0, 0.5),
    (1.0, 0.5, 4.0, 0.5),
    (7.5, -2.5, 4.0, -2.5),
    (4.0, -7.5, 4.0, -5.0),
    (-5.0, 5.0, -5.0, 7.5),
)

DEFAULT_START = Pose(-6.0, 0.0, 0.0)


def default_maze() -> WorldModel:
    """Встроенный детерминированный лабиринт 15 м x 15 м."""
    return WorldModel.from_segments(15.0, 15.0, _DEFAULT_INTERIOR)


def load_world(path: Union[str, Path]) -> WorldModel:
    """
    Читает файл мира.

    Формат: первая значащая строка `bounds W H`, далее по одной стене
    `x1 y1 x2 y2` на строку; `#` начинает комментарий.

    Raises:
        WorldFileError: При нарушении формата
    """
    bounds = None
    segments = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if bounds is None:
                if parts[0] != "bounds" or len(parts) != 3:
                    raise WorldFileError(f"{path}:{line_no}: первой должна идти строка 'bounds W H'")
                try:
                    bounds = (float(parts[1]), float(parts[2]))
                except ValueError as e:
                    raise WorldFileError(f"{path}:{line_no}: неверные размеры мира: {e}")
                continue
            if len(parts) != 4:
                raise WorldFileError(f"{path}:{line_no}: ожидалось 4 числа 'x1 y1 x2 y2'")
            try:
                segments.append(tuple(float(p) for p in parts))
            except ValueError as e:
                raise WorldFileError(f"{path}:{line_no}: неверная координата: {e}")

    if bounds is None:
        raise WorldFileError(f"{path}: отсутствует строка 'bounds W H'")
    try:
        return WorldModel.from_segments(bounds[0], bounds[1], segments)
    except ValueError as e:
        raise WorldFileError(f"{path}: {e}")


def dump_world(world: WorldModel, path: Union[str, Path]) -> None:
    """Записывает мир в текстовом формате файла мира."""
    lines = [
        "# Мир swarm-localizer: внешний контур задается строкой bounds",
        f"bounds {float(world.width)!r} {float(world.height)!r}",
    ]
    for row in world.interior:
        lines.append(" ".join(repr(float(v)) for v in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
