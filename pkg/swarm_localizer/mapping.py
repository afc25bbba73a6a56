"""
Сетка занятости с накоплением уверенности, подавлением картирования при
быстром повороте и извлечением устойчивых препятствий по порогу.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from .exceptions import ConfigurationError
from .pose import Pose
from .sensors import LidarScan


@dataclass(frozen=True)
class MappingConfig:
    """Параметры картирования."""

    omega_thresh: float = 0.05
    tau_conf: int = 30
    increment: int = 1
    max_confidence: int = 100
    resolution: float = 0.05

    def __post_init__(self):
        if self.increment < 1:
            raise ConfigurationError("increment должен быть не меньше 1")
        if self.tau_conf > self.max_confidence:
            raise ConfigurationError(
                f"tau_conf ({self.tau_conf}) не может превышать max_confidence ({self.max_confidence})"
            )
        if self.omega_thresh < 0:
            raise ConfigurationError("omega_thresh не может быть отрицательным")
        if self.resolution <= 0:
            raise ConfigurationError("resolution должен быть положительным")


class ConfidenceGrid:
    """
    Матрица накопленной уверенности.

    Строки индексируют ось y, столбцы - ось x; ячейка (0, 0) начинается в
    origin. Значения целые в [0, max_confidence] и не убывают.
    """

    def __init__(self, shape: Tuple[int, int], resolution: float = 0.05,
                 origin: Tuple[float, float] = (0.0, 0.0), max_confidence: int = 100):
        if resolution <= 0:
            raise ValueError("resolution должен быть положительным")
        self.cells = np.zeros(shape, dtype=np.int32)
        self.resolution = resolution
        self.origin = origin
        self.max_confidence = max_confidence

    @classmethod
    def for_world(cls, world, config: Optional[MappingConfig] = None) -> "ConfidenceGrid":
        """Сетка, покрывающая границы мира целиком (300 x 300 для 15 м при 0.05 м)."""
        config = config or MappingConfig()
        x_min, y_min, x_max, y_max = world.bounds
        cols = int(math.ceil(round((x_max - x_min) / config.resolution, 9)))
        rows = int(math.ceil(round((y_max - y_min) / config.resolution, 9)))
        return cls((rows, cols), config.resolution, (x_min, y_min), config.max_confidence)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.cells.shape

    def cell_centers(self, rows: np.ndarray, cols: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Мировые координаты центров ячеек."""
        xs = self.origin[0] + (np.asarray(cols) + 0.5) * self.resolution
        ys = self.origin[1] + (np.asarray(rows) + 0.5) * self.resolution
        return xs, ys

    def copy(self) -> "ConfidenceGrid":
        clone = ConfidenceGrid(self.shape, self.resolution, self.origin, self.max_confidence)
        clone.cells = self.cells.copy()
        return clone


def should_map(angular_velocity: float, cfg: MappingConfig) -> bool:
    """Картирование разрешено при |omega| <= omega_thresh."""
    return abs(angular_velocity) <= cfg.omega_thresh


def _cells_of(xs: np.ndarray, ys: np.ndarray, grid: ConfidenceGrid):
    cols = np.floor((xs - grid.origin[0]) / grid.resolution).astype(np.int64)
    rows = np.floor((ys - grid.origin[1]) / grid.resolution).astype(np.int64)
    rows_total, cols_total = grid.shape
    inside = (rows >= 0) & (rows < rows_total) & (cols >= 0) & (cols < cols_total)
    return rows, cols, inside


def world_to_cell(point: Tuple[float, float], grid: ConfidenceGrid) -> Optional[Tuple[int, int]]:
    """Индекс (row, col) ячейки, содержащей точку, или None вне сетки."""
    rows, cols, inside = _cells_of(np.array([point[0]]), np.array([point[1]]), grid)
    if not inside[0]:
        return None
    return (int(rows[0]), int(cols[0]))


def integrate_scan(grid: ConfidenceGrid, est_pose: Pose, scan: LidarScan, cfg: MappingConfig,
                   angular_velocity: float) -> ConfidenceGrid:
    """
    Проецирует скан из оцененной позы и наращивает уверенность ячеек.

    Сетка изменяется на месте и возвращается. При быстром повороте вызов
    ничего не делает.

    Args:
        grid: Сетка уверенности
        est_pose: Оцененная поза робота
        scan: Скан LiDAR
        cfg: Параметры картирования
        angular_velocity: Текущая угловая скорость (рад/с)

    Returns:
        Та же сетка
    """
    if not should_map(angular_velocity, cfg):
        return grid

    present = scan.present
    if not np.any(present):
        return grid

    ranges = scan.ranges[present]
    angles = est_pose.theta + scan.angles[present]
    xs = est_pose.x + ranges * np.cos(angles)
    ys = est_pose.y + ranges * np.sin(angles)
    rows, cols, inside = _cells_of(xs, ys, grid)

    np.add.at(grid.cells, (rows[inside], cols[inside]), cfg.increment)
    np.minimum(grid.cells, grid.max_confidence, out=grid.cells)
    return grid


def extract_occupancy(grid: ConfidenceGrid, cfg: MappingConfig) -> np.ndarray:
    """Бинарная карта: ячейка занята, если уверенность >= tau_conf."""
    return grid.cells >= cfg.tau_conf


def write_pgm(occupancy: np.ndarray, grid: ConfidenceGrid, path: Union[str, Path]) -> Path:
    """
    Записывает бинарную карту в PGM (P5) и файл-спутник с параметрами.

    Занятая ячейка - 0 (черный), свободная - 255; строка 0 изображения
    соответствует верхнему краю (max y). Рядом пишется `<path>.info` с
    разрешением и координатами origin.

    Returns:
        Путь к файлу-спутнику
    """
    path = Path(path)
    image = np.where(occupancy, 0, 255).astype(np.uint8)[::-1, :]
    rows, cols = image.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(image.tobytes())

    info_path = path.with_name(path.name + ".info")
    with open(info_path, "w", encoding="utf-8") as fh:
        fh.write(f"resolution {grid.resolution!r}\n")
        fh.write(f"origin {float(grid.origin[0])!r} {float(grid.origin[1])!r}\n")
        fh.write(f"size {cols} {rows}\n")
    return info_path
