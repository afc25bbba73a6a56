import math
import unittest

import numpy as np

from swarm_localizer.controller import WanderParams, WheelCommand, wander_step
from swarm_localizer.sensors import LidarConfig, LidarScan, RandomStream


def _scan(ranges, angles):
    return LidarScan(np.asarray(ranges, dtype=float), np.asarray(angles, dtype=float), max_range=5.6)


class TestWander(unittest.TestCase):
    """Тесты контроллера блуждания."""

    def setUp(self):
        """Подготовка тестовых данных."""
        self.angles = LidarConfig().angles
        self.open_scan = _scan(np.full(240, np.nan), self.angles)

    def test_open_space_straight(self):
        """Тест: без шума и смещения в открытом пространстве едем прямо."""
        params = WanderParams(noise_factor=0.0, steering_bias=0.0)
        command = wander_step(self.open_scan, params, RandomStream(1, "wander"))
        self.assertEqual(command, WheelCommand(0.3, 0.3))

    def test_bias_turns_left(self):
        """Тест: положительное смещение ускоряет правое колесо."""
        params = WanderParams(noise_factor=0.0, steering_bias=0.1)
        command = wander_step(self.open_scan, params, RandomStream(1, "wander"))
        self.assertGreater(command.v_right, command.v_left)
        self.assertAlmostEqual((command.v_left + command.v_right) / 2, 0.3)

    def test_obstacle_nearer_on_left_turns_right(self):
        """Тест: препятствие спереди слева - разворот вправо."""
        ranges = np.where(self.angles > 0, 0.3, 4.0)
        command = wander_step(_scan(ranges, self.angles), WanderParams(), RandomStream(1, "wander"))
        self.assertGreater(command.v_left, command.v_right)

    def test_obstacle_nearer_on_right_turns_left(self):
        """Тест: препятствие спереди справа - разворот влево."""
        ranges = np.where(self.angles < 0, 0.3, 4.0)
        command = wander_step(_scan(ranges, self.angles), WanderParams(), RandomStream(1, "wander"))
        self.assertGreater(command.v_right, command.v_left)

    def test_nearest_frontal_obstacle_beats_open_half(self):
        """Тест: близкое препятствие слева в секторе важнее более открытой левой половины."""
        ranges = np.where(self.angles < 0, 1.0, np.nan)
        ranges[np.argmin(np.abs(self.angles - math.radians(10.0)))] = 0.3
        command = wander_step(_scan(ranges, self.angles), WanderParams(), RandomStream(1, "wander"))
        self.assertGreater(command.v_left, command.v_right)

    def test_spin_direction_kept_until_clear(self):
        """Тест: начатый разворот продолжается, пока сектор не освободится."""
        ranges = np.where(self.angles < 0, 0.3, 0.5)
        scan = _scan(ranges, self.angles)
        fresh = wander_step(scan, WanderParams(), RandomStream(1, "wander"))
        self.assertGreater(fresh.v_right, fresh.v_left)
        kept = wander_step(scan, WanderParams(), RandomStream(1, "wander"), previous=WheelCommand(0.3, -0.3))
        self.assertEqual(kept, WheelCommand(0.3, -0.3))

    def test_spin_released_when_clear(self):
        """Тест: после освобождения сектора робот снова едет вперед."""
        params = WanderParams(noise_factor=0.0, steering_bias=0.0)
        command = wander_step(self.open_scan, params, RandomStream(1, "wander"), previous=WheelCommand(-0.3, 0.3))
        self.assertEqual(command, WheelCommand(0.3, 0.3))

    def test_cruise_previous_does_not_commit(self):
        """Тест: предыдущая крейсерская команда не фиксирует направление разворота."""
        ranges = np.where(self.angles > 0, 0.3, 4.0)
        command = wander_step(
            _scan(ranges, self.angles), WanderParams(), RandomStream(1, "wander"), previous=WheelCommand(0.29, 0.31)
        )
        self.assertGreater(command.v_left, command.v_right)

    def test_side_obstacle_ignored(self):
        """Тест: препятствие сбоку вне сектора не вызывает разворота."""
        ranges = np.where(np.abs(self.angles) > math.radians(60.0), 0.3, np.nan)
        params = WanderParams(noise_factor=0.0, steering_bias=0.0)
        command = wander_step(_scan(ranges, self.angles), params, RandomStream(1, "wander"))
        self.assertEqual(command, WheelCommand(0.3, 0.3))

    def test_deterministic(self):
        """Тест: фиксированный сид дает одинаковые команды."""
        rng_a, rng_b = RandomStream(9, "wander"), RandomStream(9, "wander")
        params = WanderParams()
        seq_a = [wander_step(self.open_scan, params, rng_a) for _ in range(100)]
        seq_b = [wander_step(self.open_scan, params, rng_b) for _ in range(100)]
        self.assertEqual(seq_a, seq_b)

    def test_commands_clamped(self):
        """Тест: команды не превышают max_wheel_speed."""
        params = WanderParams(cruise_speed=1.0, noise_factor=5.0, max_wheel_speed=1.2)
        rng = RandomStream(2, "wander")
        for _ in range(200):
            command = wander_step(self.open_scan, params, rng)
            self.assertLessEqual(abs(command.v_left), 1.2)
            self.assertLessEqual(abs(command.v_right), 1.2)

    def test_negative_params_rejected(self):
        """Тест валидации параметров."""
        with self.assertRaises(ValueError):
            WanderParams(cruise_speed=-0.1)


if __name__ == "__main__":
    unittest.main()
