"""HTTP + WebSocket service exposing the three engines to the sandbox UI."""

from mlscope.service.app import create_app

__all__ = ["create_app"]
