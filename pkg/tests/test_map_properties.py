import math
import unittest

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from swarm_localizer.mapping import ConfidenceGrid, MappingConfig, extract_occupancy, integrate_scan
from swarm_localizer.sensors import LidarConfig, RandomStream, sample_lidar
from swarm_localizer.world import default_maze, ray_cast

coords = st.floats(min_value=-7.4, max_value=7.4, allow_nan=False)
headings = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False)
ranges = st.floats(min_value=0.05, max_value=12.0, allow_nan=False)


class TestRayCastProperties(unittest.TestCase):
    """Свойства трассировки в лабиринте по умолчанию."""

    def setUp(self):
        """Подготовка тестовых данных."""
        self.world = default_maze()

    @settings(max_examples=300)
    @given(coords, coords, headings, ranges, ranges)
    def test_monotone_in_max_range(self, x, y, angle, a, b):
        """Тест: увеличение max_range не меняет найденное попадание."""
        short, long = min(a, b), max(a, b)
        near = ray_cast(self.world, (x, y), angle, short)
        far = ray_cast(self.world, (x, y), angle, long)
        if near is not None:
            self.assertEqual(far, near)
        elif far is not None:
            self.assertGreater(far, short)
            self.assertLessEqual(far, long)

    @settings(max_examples=300)
    @given(coords, coords, headings)
    def test_hit_point_lies_on_wall(self, x, y, angle):
        """Тест: точка попадания лежит на стене с точностью 1e-9."""
        hit = ray_cast(self.world, (x, y), angle, 30.0)
        assume(hit is not None)
        px, py = x + hit * math.cos(angle), y + hit * math.sin(angle)
        self.assertLessEqual(self.world.clearance(px, py), 1e-9)


class TestOccupancyProperties(unittest.TestCase):
    """Свойства бинарной карты."""

    @given(
        st.lists(st.integers(min_value=0, max_value=100), min_size=64, max_size=64),
        st.integers(min_value=1, max_value=100),
        st.integers(min_value=1, max_value=100),
    )
    def test_monotone_in_threshold(self, values, tau_a, tau_b):
        """Тест: больший порог дает подмножество занятых ячеек."""
        grid = ConfidenceGrid((8, 8))
        grid.cells = np.array(values, dtype=np.int32).reshape(8, 8)
        low = extract_occupancy(grid, MappingConfig(tau_conf=min(tau_a, tau_b)))
        high = extract_occupancy(grid, MappingConfig(tau_conf=max(tau_a, tau_b)))
        self.assertFalse(np.any(high & ~low))

    def test_noiseless_cells_hug_walls(self):
        """Тест: без шума каждая занятая ячейка не дальше resolution * sqrt(2) от стены."""
        world = default_maze()
        cfg = MappingConfig(tau_conf=1)
        grid = ConfidenceGrid.for_world(world, cfg)
        lidar = LidarConfig()
        rng = RandomStream(5, "placement")
        for _ in range(40):
            pose = world.sample_free_pose(rng, clearance=0.3)
            scan = sample_lidar(world, pose, lidar, 0.0, rng)
            integrate_scan(grid, pose, scan, cfg, 0.0)

        rows, cols = np.nonzero(extract_occupancy(grid, cfg))
        self.assertGreater(rows.size, 200)
        xs, ys = grid.cell_centers(rows, cols)
        distances = world.clearance_many(xs, ys)
        self.assertLessEqual(float(distances.max()), cfg.resolution * math.sqrt(2.0))


if __name__ == "__main__":
    unittest.main()
