"""
Модуль связи роя: прокси глобальной локализации и каналы соседей.
"""

from .packets import (
    CommConfig,
    LocalizationPacket,
    SwarmSnapshot,
    detect_peers_radius,
    make_packet,
    peer_event_due,
)
from .base_link import BasePeerLink
from .temporal_link import TemporalPeerLink
from .radius_link import RadiusPeerLink

__all__ = [
    "CommConfig",
    "LocalizationPacket",
    "SwarmSnapshot",
    "detect_peers_radius",
    "make_packet",
    "peer_event_due",
    "BasePeerLink",
    "TemporalPeerLink",
    "RadiusPeerLink",
]
