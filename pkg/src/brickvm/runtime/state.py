"""Live interpreter state: instances, activations, scenes, frame results.

All positions live on the physics body, even for bodies that never collide;
instances add the render-only attributes. Scene state persists while a
scene is inactive so switching back resumes suspended scripts.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from ..physics.hull import ConvexHull
from ..physics.world import PhysicsBody, PhysicsWorld
from ..project.model import Script, SpriteObject
from ..values import Value

BRICK_BUDGET = 10_000     # bricks per activation per frame before force-yield
MAX_CLONES = 300


@dataclass
class ObjectInstance:
    instance_id: int
    object_index: int               # index into the scene's object list
    obj: SpriteObject               # shared, immutable program definition
    body: PhysicsBody
    is_clone: bool = False
    look_index: int = 0
    size_percent: float = 100.0
    transparency: float = 0.0       # 0 opaque .. 100 invisible
    brightness: float = 100.0
    visible: bool = True
    layer: int = 0
    volume: float = 100.0
    bubble_kind: str = ""           # "" | "say" | "think"
    bubble_text: str = ""
    pen_down: bool = False
    pen_size: float = 1.0
    pen_color: tuple[float, float, float] = (0.0, 0.0, 0.0)
    variables: dict[str, Value] = field(default_factory=dict)
    lists: dict[str, list] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.obj.name

    def current_look(self):
        if 0 <= self.look_index < len(self.obj.looks):
            return self.obj.looks[self.look_index]
        return None

    def clone_state_from(self, other: "ObjectInstance") -> None:
        body, template = self.body, other.body
        body.x, body.y = template.x, template.y
        body.direction, body.scale = template.direction, template.scale
        body.motion_type = template.motion_type
        body.mass = template.mass
        body.velocity_x, body.velocity_y = template.velocity_x, template.velocity_y
        body.bounce_factor, body.friction = template.bounce_factor, template.friction
        body.set_hull(template.hull, template.width, template.height)
        self.look_index = other.look_index
        self.size_percent = other.size_percent
        self.transparency = other.transparency
        self.brightness = other.brightness
        self.visible = other.visible
        self.layer = other.layer
        self.volume = other.volume
        self.bubble_kind, self.bubble_text = other.bubble_kind, other.bubble_text
        self.pen_down = other.pen_down
        self.pen_size = other.pen_size
        self.pen_color = other.pen_color
        self.variables = dict(other.variables)
        self.lists = {name: list(items) for name, items in other.lists.items()}
        self.pen_down = other.pen_down
        self.pen_size, self.pen_color = other.pen_size, other.pen_color
        self.variables = copy.deepcopy(other.variables)
        self.lists = copy.deepcopy(other.lists)


@dataclass
class Activation:
    activation_id: int              # creation sequence; doubles as age
    instance_id: int
    script_index: int
    script: Script
    pc: int = 0
    loop_stack: list = field(default_factory=list)  # [start_pc, remaining|None]
    wake_frame: int | None = None
    waiting_on: set[int] | None = None       # activation ids (broadcast and wait)
    waiting_ask: int | None = None            # ask prompt id
    ask_variable: str = ""
    glide: tuple | None = None  # (start_frame, end_frame, x0, y0, x1, y1)
    finished: bool = False
    yielded: bool = False                     # this frame only; not hashed
    bricks_this_frame: int = 0                # this frame only; not hashed
    budget_tripped: bool = False


@dataclass
class SceneState:
    scene_index: int
    instances: dict[int, ObjectInstance] = field(default_factory=dict)
    activations: dict[int, Activation] = field(default_factory=dict)
    world: PhysicsWorld = field(default_factory=PhysicsWorld)
    hulls: dict[tuple[int, int], tuple[ConvexHull, float, float]] = \
        field(default_factory=dict)           # (object_index, look_index)
    pen_digest: bytes = b""                    # rolling hash of all pen ops
    pending_hats: list[tuple[int, int]] = field(default_factory=list)
    # (instance_id, script_index) to start next frame

    def instances_in_order(self) -> list[ObjectInstance]:
        return [self.instances[i] for i in sorted(self.instances)]


@dataclass
class FrameResult:
    frame: int
    hash: str
    display: list = field(default_factory=list)
    events: list = field(default_factory=list)
    pen_segments: list = field(default_factory=list)
    pen_stamps: list = field(default_factory=list)
    watched: list = field(default_factory=list)


@dataclass
class WatchEntry:
    instance_id: int | None  # None for globals
    name: str
