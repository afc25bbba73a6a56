import os
import tempfile
import unittest

import numpy as np

from swarm_localizer.exceptions import ConfigurationError
from swarm_localizer.mapping import (
    ConfidenceGrid,
    MappingConfig,
    extract_occupancy,
    integrate_scan,
    should_map,
    world_to_cell,
    write_pgm,
)
from swarm_localizer.pose import Pose
from swarm_localizer.sensors import LidarScan
from swarm_localizer.world import default_maze


def _read_pgm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    magic, size, maxval, body = data.split(b"\n", 3)
    cols, rows = (int(v) for v in size.split())
    return magic, int(maxval), np.frombuffer(body, dtype=np.uint8).reshape(rows, cols)


class TestMappingRules(unittest.TestCase):
    """Тесты правил картирования."""

    def setUp(self):
        """Подготовка тестовых данных."""
        self.cfg = MappingConfig()
        self.grid = ConfidenceGrid.for_world(default_maze(), self.cfg)
        self.single = LidarScan(np.array([2.0]), np.array([0.0]))

    def test_grid_shape(self):
        """Тест размеров сетки 300 x 300."""
        self.assertEqual(self.grid.shape, (300, 300))
        self.assertEqual(self.grid.origin, (-7.5, -7.5))

    def test_should_map(self):
        """Тест подавления при быстром повороте."""
        self.assertTrue(should_map(0.0, self.cfg))
        self.assertFalse(should_map(0.051, self.cfg))
        self.assertTrue(should_map(-0.05, self.cfg))

    def test_world_to_cell(self):
        """Тест перевода координат в ячейку."""
        self.assertEqual(world_to_cell((0.0, 0.0), self.grid), (150, 150))
        self.assertEqual(world_to_cell((-7.5, -7.5), self.grid), (0, 0))
        self.assertIsNone(world_to_cell((20.0, 0.0), self.grid))

    def test_rows_index_y(self):
        """Тест: строки сетки соответствуют оси y."""
        self.assertEqual(world_to_cell((0.0, 1.01), self.grid), (170, 150))

    def test_rotation_suppresses_mapping(self):
        """Тест: при быстром повороте сетка не меняется."""
        integrate_scan(self.grid, Pose(), self.single, self.cfg, 0.1)
        self.assertEqual(int(self.grid.cells.sum()), 0)

    def test_single_ray_increment(self):
        """Тест: один луч увеличивает ровно одну ячейку."""
        integrate_scan(self.grid, Pose(), self.single, self.cfg, 0.0)
        self.assertEqual(int(self.grid.cells.sum()), 1)
        self.assertEqual(self.grid.cells[world_to_cell((2.0, 0.0), self.grid)], 1)

    def test_saturation(self):
        """Тест насыщения на max_confidence."""
        for _ in range(150):
            integrate_scan(self.grid, Pose(), self.single, self.cfg, 0.0)
        self.assertEqual(int(self.grid.cells.max()), 100)

    def test_absent_rays_skipped(self):
        """Тест: отсутствующие лучи не картируются."""
        scan = LidarScan(np.array([np.nan, np.nan]), np.array([0.0, 0.1]))
        integrate_scan(self.grid, Pose(), scan, self.cfg, 0.0)
        self.assertEqual(int(self.grid.cells.sum()), 0)

    def test_extract_occupancy_threshold(self):
        """Тест порога уверенности."""
        self.grid.cells[10, 10] = 30
        self.grid.cells[10, 11] = 29
        occupancy = extract_occupancy(self.grid, self.cfg)
        self.assertTrue(occupancy[10, 10])
        self.assertFalse(occupancy[10, 11])
        self.assertEqual(int(occupancy.sum()), 1)

    def test_empty_grid_all_free(self):
        """Тест: пустая сетка полностью свободна."""
        self.assertFalse(np.any(extract_occupancy(self.grid, self.cfg)))

    def test_config_validation(self):
        """Тест: tau_conf > max_confidence отклоняется."""
        with self.assertRaises(ConfigurationError):
            MappingConfig(tau_conf=150)


class TestPgm(unittest.TestCase):
    """Тесты записи PGM."""

    def setUp(self):
        """Подготовка временного каталога."""
        self.tmp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmp.name, "map.pgm")
        self.cfg = MappingConfig()
        self.grid = ConfidenceGrid.for_world(default_maze(), self.cfg)

    def tearDown(self):
        self.tmp.cleanup()

    def test_empty_map_all_white(self):
        """Тест: пустая карта белая 300 x 300."""
        write_pgm(extract_occupancy(self.grid, self.cfg), self.grid, self.path)
        magic, maxval, image = _read_pgm(self.path)
        self.assertEqual(magic, b"P5")
        self.assertEqual(maxval, 255)
        self.assertEqual(image.shape, (300, 300))
        self.assertTrue(np.all(image == 255))

    def test_single_black_pixel_top_row_is_max_y(self):
        """Тест: одна занятая ячейка - один черный пиксель, верх изображения - max y."""
        self.grid.cells[299, 5] = 100
        info = write_pgm(extract_occupancy(self.grid, self.cfg), self.grid, self.path)
        _, _, image = _read_pgm(self.path)
        self.assertEqual(int((image == 0).sum()), 1)
        self.assertEqual(image[0, 5], 0)
        with open(info, encoding="utf-8") as fh:
            text = fh.read()
        self.assertIn("resolution 0.05", text)
        self.assertIn("origin -7.5 -7.5", text)


if __name__ == "__main__":
    unittest.main()
