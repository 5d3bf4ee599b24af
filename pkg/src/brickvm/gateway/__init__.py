from .client import GatewayClient, SessionBusyError
from .server import GatewayServer
from .session import ReplayMismatchError, Session, replay_entries, run_headless
from .wire import PROTOCOL_VERSION, WireError

__all__ = [
    "GatewayClient",
    "GatewayServer",
    "PROTOCOL_VERSION",
    "ReplayMismatchError",
    "Session",
    "SessionBusyError",
    "WireError",
    "replay_entries",
    "run_headless",
]
