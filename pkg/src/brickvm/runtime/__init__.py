"""Frame-stepped interpreter: scheduling, events, clones, scenes, hashing."""

from .engine import Runtime, start_program, step_frame
from .framelog import format_frame_line
from .state import Activation, FrameResult, ObjectInstance

__all__ = [
    "Activation",
    "FrameResult",
    "ObjectInstance",
    "Runtime",
    "format_frame_line",
    "start_program",
    "step_frame",
]
