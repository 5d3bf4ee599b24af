"""Structural validation and script control-flow layout.

``validate_project`` enforces every model invariant and raises
``SchemaViolationError`` with a located path on the first break. It is run
by ``load_project`` on every archive and by merge/convert on their outputs,
so anything holding a ``Project`` may rely on the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..formula.ast import FormulaTree, ListRef, VariableRef
from .catalog import BRICK_SPECS, HAT_KINDS
from .errors import SchemaViolationError
from .model import Project, Script

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@dataclass
class ScriptLayout:
    """Jump targets for the flat brick list of one script."""

    loop_end: dict[int, int]    # Forever/Repeat index -> EndOfLoop index
    loop_start: dict[int, int]  # EndOfLoop index -> Forever/Repeat index
    if_else: dict[int, int]     # If index -> Else index (absent if no Else)
    if_end: dict[int, int]      # If index -> EndOfIf index
    else_end: dict[int, int]    # Else index -> EndOfIf index
    depth: list[int]            # nesting depth per brick, for rendering


def compute_layout(script: Script, path: str = "script") -> ScriptLayout:
    """Pair begin/mid/end bricks; reject unbalanced or crossed nesting."""
    loop_end: dict[int, int] = {}
    loop_start: dict[int, int] = {}
    if_else: dict[int, int] = {}
    if_end: dict[int, int] = {}
    else_end: dict[int, int] = {}
    depth: list[int] = []
    stack: list[list] = []  # entries: ["loop", open_idx] or ["if", open_idx, else_idx]

    for i, brick in enumerate(script.bricks):
        spec = BRICK_SPECS.get(brick.kind)
        if spec is None:
            raise SchemaViolationError(f"{path} > brick {i}",
                                       f"unknown brick kind {brick.kind!r}")
        if spec.closes or spec.mid:
            depth.append(len(stack) - 1)
        else:
            depth.append(len(stack))
        if spec.opens == "loop":
            stack.append(["loop", i])
        elif spec.opens == "if":
            stack.append(["if", i, None])
        elif spec.mid == "if":
            if not stack or stack[-1][0] != "if" or stack[-1][2] is not None:
                raise SchemaViolationError(f"{path} > brick {i}",
                                           "Else without a matching If")
            stack[-1][2] = i
        elif spec.closes == "loop":
            if not stack or stack[-1][0] != "loop":
                raise SchemaViolationError(f"{path} > brick {i}",
                                           "End of loop without a matching loop")
            _, start = stack.pop()
            loop_end[start] = i
            loop_start[i] = start
        elif spec.closes == "if":
            if not stack or stack[-1][0] != "if":
                raise SchemaViolationError(f"{path} > brick {i}",
                                           "End of if without a matching If")
            _, start, else_idx = stack.pop()
            if_end[start] = i
            if else_idx is not None:
                if_else[start] = else_idx
                else_end[else_idx] = i
    if stack:
        kind, start = stack[-1][0], stack[-1][1]
        raise SchemaViolationError(f"{path} > brick {start}",
                                   f"unclosed {kind} structure")
    return ScriptLayout(loop_end, loop_start, if_else, if_end, else_end, depth)


def _formula_refs(tree: FormulaTree):
    """Yield every VariableRef/ListRef in the tree."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, (VariableRef, ListRef)):
            yield node
        for attr in ("operand", "left", "right"):
            child = getattr(node, attr, None)
            if child is not None:
                stack.append(child)
        for child in getattr(node, "args", ()):
            stack.append(child)


def _check_unique(names, what: str, path: str) -> None:
    seen = set()
    for name in names:
        if not name:
            raise SchemaViolationError(path, f"empty {what} name")
        if name in seen:
            raise SchemaViolationError(path, f"duplicate {what} name {name!r}")
        seen.add(name)


def validate_project(project: Project) -> None:
    header = project.header
    if header.stage_width < 1 or header.stage_height < 1:
        raise SchemaViolationError("header", "stage dimensions must be positive")
    if header.language_version != 1:
        raise SchemaViolationError(
            "header", f"unsupported language version {header.language_version}")
    if not project.scenes:
        raise SchemaViolationError("scenes", "a project needs at least one scene")
    _check_unique((s.name for s in project.scenes), "scene", "scenes")

    for scene in project.scenes:
        spath = f"scene {scene.name!r}"
        if not scene.objects:
            raise SchemaViolationError(
                spath, "a scene needs at least one object (the background)")
        _check_unique((o.name for o in scene.objects), "object", spath)
        for obj in scene.objects:
            opath = f"{spath} > object {obj.name!r}"
            _check_unique((l.name for l in obj.looks), "look", opath)
            _check_unique((s.name for s in obj.sounds), "sound", opath)
            for look in obj.looks:
                if look.width < 1 or look.height < 1:
                    raise SchemaViolationError(
                        f"{opath} > look {look.name!r}", "image smaller than 1x1")
                if not look.data.startswith(_PNG_MAGIC):
                    raise SchemaViolationError(
                        f"{opath} > look {look.name!r}", "image is not a PNG")
            var_scope = set(project.variables) | set(obj.variables)
            list_scope = set(project.lists) | set(obj.lists)
            look_names = {l.name for l in obj.looks}
            sound_names = {s.name for s in obj.sounds}
            for si, script in enumerate(obj.scripts):
                _validate_script(script, f"{opath} > script {si}",
                                 var_scope, list_scope, look_names, sound_names)


def _validate_script(script: Script, path: str, var_scope: set, list_scope: set,
                     look_names: set, sound_names: set) -> None:
    if script.hat not in HAT_KINDS:
        raise SchemaViolationError(path, f"unknown hat {script.hat!r}")
    if script.hat == "WhenBroadcastReceived":
        if not script.message:
            raise SchemaViolationError(path, "broadcast hat needs a message")
    elif script.message:
        raise SchemaViolationError(path, f"hat {script.hat} takes no message")

    compute_layout(script, path)

    for bi, brick in enumerate(script.bricks):
        bpath = f"{path} > brick {bi} ({brick.kind})"
        spec = BRICK_SPECS[brick.kind]
        if set(brick.formulas) != set(spec.slots):
            raise SchemaViolationError(
                bpath, f"formula slots {sorted(brick.formulas)} != {sorted(spec.slots)}")
        if set(brick.options) != set(spec.options):
            raise SchemaViolationError(
                bpath, f"options {sorted(brick.options)} != {sorted(spec.options)}")
        for opt, allowed in spec.option_values.items():
            if brick.options[opt] not in allowed:
                raise SchemaViolationError(
                    bpath, f"option {opt}={brick.options[opt]!r} not in {allowed}")
        if "variable" in brick.options and brick.options["variable"] not in var_scope:
            raise SchemaViolationError(
                bpath, f"undeclared variable {brick.options['variable']!r}")
        if "list" in brick.options and brick.options["list"] not in list_scope:
            raise SchemaViolationError(
                bpath, f"undeclared list {brick.options['list']!r}")
        if brick.kind == "SetLook" and brick.options["look"] not in look_names:
            raise SchemaViolationError(
                bpath, f"object has no look {brick.options['look']!r}")
        if brick.kind == "StartSound" and brick.options["sound"] not in sound_names:
            raise SchemaViolationError(
                bpath, f"object has no sound {brick.options['sound']!r}")
        if brick.kind in ("Broadcast", "BroadcastAndWait") and not brick.options["message"]:
            raise SchemaViolationError(bpath, "broadcast needs a message")
        for slot, tree in brick.formulas.items():
            for ref in _formula_refs(tree):
                if isinstance(ref, VariableRef) and ref.name not in var_scope:
                    raise SchemaViolationError(
                        f"{bpath} > slot {slot!r}",
                        f"undeclared variable {ref.name!r}")
                if isinstance(ref, ListRef) and ref.name not in list_scope:
                    raise SchemaViolationError(
                        f"{bpath} > slot {slot!r}",
                        f"undeclared list {ref.name!r}")
