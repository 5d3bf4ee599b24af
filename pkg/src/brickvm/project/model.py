"""In-memory project model.

A project is immutable after load by convention: the runtime copies
everything it mutates into per-instance state. Structural equality
(dataclass ``==``) is the round-trip identity; load-time diagnostics are
excluded from it. Asset bytes belong to the model, archive-internal file
naming does not.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from PIL import Image

from ..formula.ast import FormulaTree
from ..values import Value


@dataclass
class ProjectHeader:
    name: str
    stage_width: int
    stage_height: int
    language_version: int = 1


@dataclass
class Look:
    name: str
    data: bytes  # PNG bytes, kept verbatim
    width: int
    height: int

    @classmethod
    def from_png(cls, name: str, data: bytes) -> "Look":
        with Image.open(io.BytesIO(data)) as img:
            width, height = img.size
        return cls(name, data, width, height)


@dataclass
class SoundRef:
    name: str
    data: bytes  # opaque blob


@dataclass
class Brick:
    kind: str
    formulas: dict[str, FormulaTree] = field(default_factory=dict)
    options: dict[str, str] = field(default_factory=dict)


@dataclass
class Script:
    hat: str
    bricks: list[Brick] = field(default_factory=list)
    message: str = ""  # broadcast hats only


@dataclass
class SpriteObject:
    name: str
    looks: list[Look] = field(default_factory=list)
    sounds: list[SoundRef] = field(default_factory=list)
    scripts: list[Script] = field(default_factory=list)
    variables: dict[str, Value] = field(default_factory=dict)
    lists: dict[str, list] = field(default_factory=dict)

    def is_bare(self) -> bool:
        """True when the object carries no content of its own."""
        return not (self.looks or self.sounds or self.scripts
                    or self.variables or self.lists)


@dataclass
class Scene:
    name: str
    objects: list[SpriteObject] = field(default_factory=list)

    @property
    def background(self) -> SpriteObject:
        return self.objects[0]


@dataclass
class Project:
    header: ProjectHeader
    scenes: list[Scene] = field(default_factory=list)
    variables: dict[str, Value] = field(default_factory=dict)
    lists: dict[str, list] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list, compare=False)


def empty_project(name: str = "empty", stage_width: int = 1080,
                  stage_height: int = 1920, scene_name: str = "Scene 1") -> Project:
    """Smallest valid project: one scene holding a bare background."""
    return Project(
        header=ProjectHeader(name, stage_width, stage_height),
        scenes=[Scene(scene_name, [SpriteObject("Background")])],
    )
