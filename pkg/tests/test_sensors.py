import math
import unittest

import numpy as np

from swarm_localizer.pose import Pose
from swarm_localizer.sensors import LidarConfig, LidarScan, RandomStream, sample_imu, sample_lidar
from swarm_localizer.world import WorldModel


class TestRandomStream(unittest.TestCase):
    """Тесты детерминированных потоков."""

    def test_same_label_same_sequence(self):
        """Тест: одинаковые (сид, метка) дают одинаковые числа."""
        a = RandomStream(42, "imu").standard_normal(10)
        b = RandomStream(42, "imu").standard_normal(10)
        np.testing.assert_array_equal(a, b)

    def test_labels_are_independent(self):
        """Тест: разные метки дают разные потоки."""
        a = RandomStream(42, "imu").standard_normal(10)
        b = RandomStream(42, "slip").standard_normal(10)
        self.assertFalse(np.array_equal(a, b))

    def test_substream_label(self):
        """Тест составной метки подпотока."""
        stream = RandomStream(1, "agent2").substream("lidar")
        self.assertEqual(stream.label, "agent2/lidar")
        np.testing.assert_array_equal(
            stream.standard_normal(3), RandomStream(1, "agent2/lidar").standard_normal(3)
        )

    def test_invalid_seed(self):
        """Тест отрицательного сида."""
        with self.assertRaises(ValueError):
            RandomStream(-1)


class TestImu(unittest.TestCase):
    """Тесты модели IMU."""

    def test_noiseless(self):
        """Тест: sigma = 0 дает истинный курс."""
        self.assertEqual(sample_imu(0.7, 0.0, RandomStream(1)), 0.7)
        self.assertAlmostEqual(sample_imu(7.0, 0.0, RandomStream(1)), 7.0 - 2 * math.pi)

    def test_wrap_near_pi(self):
        """Тест: курс около pi остается в (-pi, pi]."""
        rng = RandomStream(2, "imu")
        for _ in range(1000):
            value = sample_imu(math.pi, 0.02, rng)
            self.assertTrue(-math.pi < value <= math.pi)
            self.assertGreater(abs(value), math.pi - 0.2)

    def test_noise_statistics(self):
        """Тест: СКО ошибки курса ~ 0.02."""
        rng = RandomStream(3, "imu")
        errors = np.array([sample_imu(0.3, 0.02, rng) - 0.3 for _ in range(100_000)])
        self.assertTrue(0.0198 <= errors.std() <= 0.0202)


class TestLidar(unittest.TestCase):
    """Тесты модели LiDAR."""

    def setUp(self):
        """Подготовка тестовых данных."""
        self.world = WorldModel.from_segments(30.0, 30.0, [(2.0, -3.0, 2.0, 3.0)])

    def test_config_angles(self):
        """Тест углов лучей."""
        config = LidarConfig()
        self.assertEqual(len(config.angles), 240)
        self.assertAlmostEqual(config.angles[0], -math.radians(120.0))
        self.assertAlmostEqual(config.angles[-1], math.radians(120.0))

    def test_ray_count_limits(self):
        """Тест границ числа лучей."""
        with self.assertRaises(ValueError):
            LidarConfig(ray_count=0)
        with self.assertRaises(ValueError):
            LidarConfig(ray_count=683)

    def test_center_ray_noiseless(self):
        """Тест: центральный луч до стены в 2 м."""
        config = LidarConfig(ray_count=1)
        scan = sample_lidar(self.world, Pose(), config, 0.0, RandomStream(1, "lidar"))
        self.assertEqual(scan.ray_count, 1)
        self.assertAlmostEqual(float(scan.ranges[0]), 2.0)

    def test_open_space_all_absent(self):
        """Тест: без стен в пределах дальности все лучи отсутствуют."""
        world = WorldModel.from_segments(30.0, 30.0, [])
        scan = sample_lidar(world, Pose(), LidarConfig(), 0.02, RandomStream(1, "lidar"))
        self.assertFalse(np.any(scan.present))
        np.testing.assert_array_equal(scan.filled(), np.full(240, 5.6))

    def test_ranges_clipped(self):
        """Тест: дальности в пределах (0, max_range]."""
        world = WorldModel.from_segments(30.0, 30.0, [(5.59, -3.0, 5.59, 3.0)])
        rng = RandomStream(4, "lidar")
        for _ in range(50):
            scan = sample_lidar(world, Pose(), LidarConfig(), 0.05, rng)
            present = scan.ranges[scan.present]
            self.assertTrue(np.all(present > 0.0))
            self.assertTrue(np.all(present <= 5.6))

    def test_noise_is_unbiased(self):
        """Тест: средняя ошибка дальности до стены около нуля."""
        world = WorldModel.from_segments(30.0, 30.0, [(3.0, -10.0, 3.0, 10.0)])
        config = LidarConfig(fov=math.radians(40.0), ray_count=500)
        truth = sample_lidar(world, Pose(), config, 0.0, RandomStream(5)).ranges
        rng = RandomStream(5, "lidar")
        residuals = np.concatenate([
            sample_lidar(world, Pose(), config, 0.02, rng).ranges - truth for _ in range(200)
        ])
        self.assertTrue(-0.001 <= residuals.mean() <= 0.001)

    def test_scan_filled(self):
        """Тест замены отсутствующих лучей."""
        scan = LidarScan(np.array([1.0, np.nan]), np.array([-0.1, 0.1]), max_range=5.6)
        np.testing.assert_array_equal(scan.filled(), [1.0, 5.6])
        np.testing.assert_array_equal(scan.filled(0.0), [1.0, 0.0])


if __name__ == "__main__":
    unittest.main()
