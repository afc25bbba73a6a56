from abc import ABC, abstractmethod
from typing import Optional

import structlog

from ..pose import Pose
from ..sensors import RandomStream
from .packets import CommConfig, LocalizationPacket, SwarmSnapshot, make_packet


class BasePeerLink(ABC):
    """
    Абстрактный базовый класс канала связи с соседями.

    Определяет интерфейс опроса: на каждом шаге агент спрашивает канал,
    состоялся ли контакт, и получает пакет локализации или None.
    """

    def __init__(self, config: CommConfig, sigma_imu: float):
        """
        Инициализация канала.

        Args:
            config: Параметры связи
            sigma_imu: СКО шума курса в пакете (рад)
        """
        if sigma_imu < 0:
            raise ValueError("sigma_imu не может быть отрицательным")
        self.config = config
        self.sigma_imu = sigma_imu
        self.events = 0
        self.mode_name = self._get_mode_name()
        self.logger = structlog.get_logger(__name__)

    @abstractmethod
    def _get_mode_name(self) -> str:
        """Возвращает название режима обнаружения."""
        pass

    @abstractmethod
    def poll(self, snapshot: SwarmSnapshot, agent_id: int,
             rng: RandomStream) -> Optional[LocalizationPacket]:
        """
        Проверяет контакт агента с соседом.

        Args:
            snapshot: Снимок роя на текущем шаге
            agent_id: Идентификатор агента-получателя
            rng: Поток случайных чисел для шума пакета

        Returns:
            Пакет локализации или None, если контакта нет
        """
        pass

    def _fabricate(self, snapshot: SwarmSnapshot, agent_id: int, sender_id: int,
                   rng: RandomStream) -> LocalizationPacket:
        """Собирает пакет для получателя согласно packet_source."""
        receiver = snapshot.truths[agent_id]
        if self.config.packet_source == "sender_belief" and sender_id in snapshot.beliefs:
            # Оценка отправителя плюс истинное относительное смещение
            sender_truth = snapshot.truths[sender_id]
            sender_belief = snapshot.beliefs[sender_id]
            receiver = Pose(
                sender_belief.x + (receiver.x - sender_truth.x),
                sender_belief.y + (receiver.y - sender_truth.y),
                receiver.theta,
            )
        self.events += 1
        return make_packet(receiver, self.config, self.sigma_imu, rng, snapshot.t, sender_id)
