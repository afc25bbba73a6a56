from typing import Optional

from ..sensors import RandomStream
from .base_link import BasePeerLink
from .packets import PROXY_SENDER_ID, CommConfig, LocalizationPacket, SwarmSnapshot, peer_event_due


class TemporalPeerLink(BasePeerLink):
    """
    Временной прокси контакта: виртуальный сосед появляется каждые t_sync
    секунд и передает зашумленную истинную позу агента.

    Первый контакт возможен при t = t_sync, а не в момент t = 0. Опорное
    время сдвигается ровно на t_sync, поэтому за время T происходит
    floor(T / t_sync) контактов и при t_sync, не кратном dt.
    """

    def __init__(self, config: CommConfig, sigma_imu: float, start_time: float = 0.0):
        super().__init__(config, sigma_imu)
        self.last_event = start_time

    def _get_mode_name(self) -> str:
        return "temporal"

    def poll(self, snapshot: SwarmSnapshot, agent_id: int,
             rng: RandomStream) -> Optional[LocalizationPacket]:
        if not peer_event_due(snapshot.t, self.last_event, self.config):
            return None
        self.last_event += self.config.t_sync
        return self._fabricate(snapshot, agent_id, PROXY_SENDER_ID, rng)
