import math
from typing import Optional

from ..sensors import RandomStream
from .base_link import BasePeerLink
from .packets import LocalizationPacket, SwarmSnapshot, detect_peers_radius


class RadiusPeerLink(BasePeerLink):
    """
    Обнаружение соседей по радиусу R_mask в многоагентном режиме.

    Из всех соседей в радиусе пакет берется только от ближайшего: одна
    коррекция полной позы на шаг.
    """

    def _get_mode_name(self) -> str:
        return "radius"

    def poll(self, snapshot: SwarmSnapshot, agent_id: int,
             rng: RandomStream) -> Optional[LocalizationPacket]:
        peers = detect_peers_radius(snapshot.positions(), agent_id, self.config)
        if not peers:
            return None

        me = snapshot.truths[agent_id]
        nearest = min(
            peers,
            key=lambda peer: (math.hypot(snapshot.truths[peer].x - me.x,
                                         snapshot.truths[peer].y - me.y), peer),
        )
        return self._fabricate(snapshot, agent_id, nearest, rng)
