"""Merge two projects without duplicating shared parts.

The left project's elements come first and are never altered; the right
project contributes only elements whose fingerprint is not already
present. Scenes pair by name. A name collision between non-identical
objects keeps both, renaming the right one with a ` (2)`-style suffix
and a report line. The merged project always validates.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from ..project.model import Project, Scene, SpriteObject
from .errors import MergeConflictError
from .fingerprint import object_fingerprint


@dataclass
class MergeOutcome:
    project: Project
    renames: list[str] = field(default_factory=list)

    def report_text(self) -> str:
        if not self.renames:
            return "no collisions\n"
        return "\n".join(self.renames) + "\n"


def _next_free_name(taken: set[str], name: str) -> str:
    suffix = 2
    while f"{name} ({suffix})" in taken:
        suffix += 1
    return f"{name} ({suffix})"


def _merge_objects(scene: Scene, incoming: list[SpriteObject],
                   outcome: MergeOutcome) -> None:
    present = {object_fingerprint(obj) for obj in scene.objects
               if not obj.is_bare()}
    names = {obj.name for obj in scene.objects}
    for obj in incoming:
        if obj.is_bare():
            continue
        fingerprint = object_fingerprint(obj)
        if fingerprint in present:
            continue
        addition = copy.deepcopy(obj)
        if addition.name in names:
            renamed = _next_free_name(names, addition.name)
            outcome.renames.append(
                f'renamed object "{addition.name}" to "{renamed}" '
                f'in scene "{scene.name}"')
            addition.name = renamed
        scene.objects.append(addition)
        present.add(fingerprint)
        names.add(addition.name)


def merge_projects(a: Project, b: Project) -> MergeOutcome:
    if (a.header.stage_width, a.header.stage_height) != \
            (b.header.stage_width, b.header.stage_height):
        raise MergeConflictError(
            f"stage {a.header.stage_width}x{a.header.stage_height} vs "
            f"{b.header.stage_width}x{b.header.stage_height}")

    merged = Project(header=copy.deepcopy(a.header),
                     scenes=copy.deepcopy(a.scenes),
                     variables=dict(a.variables),
                     lists={k: list(v) for k, v in a.lists.items()})
    outcome = MergeOutcome(project=merged)

    for name, value in b.variables.items():
        merged.variables.setdefault(name, value)
    for name, items in b.lists.items():
        merged.lists.setdefault(name, list(items))

    scenes_by_name = {scene.name: scene for scene in merged.scenes}
    for b_scene in b.scenes:
        target = scenes_by_name.get(b_scene.name)
        if target is not None:
            _merge_objects(target, b_scene.objects, outcome)
            continue
        if all(obj.is_bare() for obj in b_scene.objects):
            continue       # contentless carrier scene: nothing to add
        addition = copy.deepcopy(b_scene)
        merged.scenes.append(addition)
        scenes_by_name[addition.name] = addition
    return outcome
