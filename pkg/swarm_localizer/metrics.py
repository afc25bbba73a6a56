"""
Метрики качества локализации и картирования.
"""

import math
from typing import Sequence

import numpy as np

from .exceptions import UndefinedMetricError
from .mapping import ConfidenceGrid
from .pose import Pose


def euclidean_error(truth: Pose, estimate: Pose) -> float:
    """Евклидова ошибка положения; курс не учитывается."""
    return math.hypot(truth.x - estimate.x, truth.y - estimate.y)


def error_reduction_rate(e_swarm: float, e_base: float) -> float:
    """
    Снижение ошибки в процентах: (1 - e_swarm / e_base) * 100.

    Может быть отрицательным, если рой хуже базового сценария.

    Raises:
        UndefinedMetricError: Если e_base <= 0
    """
    if e_base <= 0:
        raise UndefinedMetricError(f"Базовая ошибка должна быть положительной: {e_base}")
    return (1.0 - e_swarm / e_base) * 100.0


def map_fidelity(occupancy: np.ndarray, grid: ConfidenceGrid, world,
                 tolerance: float = 0.1) -> float:
    """
    Доля занятых ячеек, центр которых лежит не дальше tolerance от стены.

    Args:
        occupancy: Бинарная карта (rows = y, cols = x)
        grid: Сетка, задающая геометрию ячеек
        world: Модель мира (WorldModel)
        tolerance: Допуск в метрах (по умолчанию 2 ячейки)

    Returns:
        Доля в [0, 1]; для пустой карты 0
    """
    rows, cols = np.nonzero(occupancy)
    if rows.size == 0:
        return 0.0
    xs, ys = grid.cell_centers(rows, cols)
    near = np.count_nonzero(world.clearance_many(xs, ys) <= tolerance)
    return near / rows.size


def visited_coverage(truth_xy: np.ndarray, world, cell: float = 0.5,
                     clearance: float = 0.2) -> float:
    """
    Доля свободных ячеек cell x cell, которые посетил робот.

    Свободной считается ячейка, центр которой удален от ближайшей стены
    не меньше чем на clearance (радиус корпуса робота).

    Args:
        truth_xy: Истинные позиции (N x 2)
        world: Модель мира
        cell: Размер ячейки (м)
        clearance: Минимальный просвет центра свободной ячейки (м)

    Returns:
        Доля в [0, 1]; 0, если свободных ячеек нет
    """
    if cell <= 0:
        raise ValueError("Размер ячейки должен быть положительным")
    x_min, y_min, x_max, y_max = world.bounds
    cols_total = int(math.ceil((x_max - x_min) / cell))
    rows_total = int(math.ceil((y_max - y_min) / cell))
    points = np.asarray(truth_xy, dtype=float).reshape(-1, 2)

    centers_y, centers_x = np.meshgrid(
        y_min + (np.arange(rows_total) + 0.5) * cell,
        x_min + (np.arange(cols_total) + 0.5) * cell,
        indexing="ij",
    )
    free = (world.clearance_many(centers_x.ravel(), centers_y.ravel()) >= clearance).reshape(rows_total, cols_total)
    free_total = int(np.count_nonzero(free))
    if points.shape[0] == 0 or free_total == 0:
        return 0.0

    cols = np.clip(((points[:, 0] - x_min) / cell).astype(int), 0, cols_total - 1)
    rows = np.clip(((points[:, 1] - y_min) / cell).astype(int), 0, rows_total - 1)
    visited = np.zeros((rows_total, cols_total), dtype=bool)
    visited[rows, cols] = True
    return int(np.count_nonzero(visited & free)) / free_total


def mean_error(errors: Sequence[float]) -> float:
    if len(errors) == 0:
        return 0.0
    return float(np.mean(errors))
