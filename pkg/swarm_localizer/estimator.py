from typing import Dict, List, Optional, Union
import structlog
import numpy as np

from .config import ScenarioKind
from .estimation import (
    BeliefState,
    Measurement,
    ObservationMode,
    ProcessNoise,
    kalman_update,
    predict_state,
    select_observation_mode,
)
from .kinematics import OdometryDelta, RobotGeometry
from .pose import Pose


class GreedyEstimator:
    """
    Обертка с состоянием над ядром оценивания для одного агента.

    Применяет политику сценария на каждом шаге:
    - baseline: только прогноз по одометрии
    - imu: прогноз + коррекция курса по IMU
    - greedy: прогноз + полная коррекция при наличии пакета, иначе курс
    """

    def __init__(self, initial_pose: Pose, scenario: Union[str, ScenarioKind],
                 process_noise: Optional[ProcessNoise] = None,
                 geometry: Optional[RobotGeometry] = None,
                 sigma_imu: float = 0.02,
                 jacobian_prediction: bool = False):
        """
        Инициализация оценщика.

        Args:
            initial_pose: Начальная поза (точная, P0 = 0)
            scenario: Сценарий ("baseline", "imu", "greedy")
            process_noise: Шум процесса Q на шаг
            geometry: Геометрия робота
            sigma_imu: СКО шума IMU (рад), задает R для коррекции курса
            jacobian_prediction: Прогноз ковариации через якобиан
        """
        self.scenario = ScenarioKind(scenario)
        self.process_noise = process_noise or ProcessNoise.default()
        self.geometry = geometry or RobotGeometry()
        self.sigma_imu = sigma_imu
        self.jacobian_prediction = jacobian_prediction
        self.logger = structlog.get_logger(__name__)
        self.reset(initial_pose)

    def reset(self, pose: Pose) -> None:
        """Сбрасывает состояние к точной позе и обнуляет счетчики."""
        self._belief = BeliefState.exact(pose)
        self._predictions = 0
        self._heading_updates = 0
        self._full_updates = 0
        self._collapse_diagonals: List[np.ndarray] = []

    @property
    def belief(self) -> BeliefState:
        return self._belief

    @property
    def pose(self) -> Pose:
        return self._belief.mean

    def predict(self, odo: OdometryDelta) -> BeliefState:
        self._belief = predict_state(
            self._belief, odo, self.process_noise, self.geometry, jacobian=self.jacobian_prediction
        )
        self._predictions += 1
        return self._belief

    def correct_heading(self, imu_heading: float) -> BeliefState:
        """Частичная коррекция: H = [0 0 1]."""
        self._belief = kalman_update(self._belief, Measurement.heading(imu_heading, self.sigma_imu))
        self._heading_updates += 1
        return self._belief

    def correct_full(self, packet) -> BeliefState:
        """Полная коррекция по пакету локализации от соседа: H = I."""
        self._belief = kalman_update(self._belief, packet.to_measurement())
        self._full_updates += 1
        self._collapse_diagonals.append(np.diag(self._belief.covariance).copy())
        self.logger.debug(
            "Полная коррекция по пакету соседа",
            sender_id=packet.sender_id,
            t=packet.timestamp,
        )
        return self._belief

    def step(self, odo: OdometryDelta, imu_heading: Optional[float] = None,
             packet=None) -> Optional[ObservationMode]:
        """
        Один цикл прогноз-коррекция по политике сценария.

        Args:
            odo: Показания энкодеров за шаг
            imu_heading: Измеренный курс IMU (нужен для imu и greedy)
            packet: Пакет локализации от соседа, если контакт состоялся

        Returns:
            Примененная модель наблюдения или None для baseline
        """
        self.predict(odo)

        if self.scenario is ScenarioKind.BASELINE:
            return None

        if self.scenario is ScenarioKind.GREEDY_SWARM:
            mode = select_observation_mode(packet is not None)
        else:
            mode = ObservationMode.HEADING_ONLY

        if mode is ObservationMode.FULL_POSE:
            self.correct_full(packet)
        else:
            if imu_heading is None:
                raise ValueError(f"Сценарий {self.scenario.value} требует измерения курса IMU")
            self.correct_heading(imu_heading)
        return mode

    @property
    def collapse_diagonals(self) -> np.ndarray:
        """Диагонали P сразу после каждой полной коррекции (k x 3)."""
        if not self._collapse_diagonals:
            return np.zeros((0, 3))
        return np.vstack(self._collapse_diagonals)

    def get_update_stats(self) -> Dict:
        """
        Возвращает статистику шагов фильтра.

        Returns:
            Словарь со счетчиками прогнозов и коррекций и следом P
        """
        return {
            "scenario": self.scenario.value,
            "predictions": self._predictions,
            "heading_updates": self._heading_updates,
            "full_updates": self._full_updates,
            "covariance_trace": float(np.trace(self._belief.covariance)),
        }
