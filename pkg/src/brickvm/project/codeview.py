"""Textual code view: one line per hat or brick, indentation by nesting.

Depth is structural: a script's hat and its top-level bricks sit at depth 0,
loop/if bodies one level deeper, end markers back at their opener's depth.
Rendered text indents two spaces per level and separates scripts with one
blank line.
"""

from __future__ import annotations

from ..formula import serialize_formula
from .catalog import BRICK_SPECS, HAT_TEMPLATES, MOTION_TYPE_DISPLAY
from .model import Brick, Project, Script
from .validate import compute_layout

INDENT = "  "


def brick_line(brick: Brick) -> str:
    spec = BRICK_SPECS[brick.kind]
    fields = {slot: serialize_formula(tree) for slot, tree in brick.formulas.items()}
    for option, value in brick.options.items():
        if option == "motion_type":
            value = MOTION_TYPE_DISPLAY[value]
        fields[option] = value
    return spec.template.format(**fields)


def hat_line(script: Script) -> str:
    return HAT_TEMPLATES[script.hat].format(message=script.message)


def render_script_lines(script: Script) -> list[tuple[int, str]]:
    lines = [(0, hat_line(script))]
    layout = compute_layout(script, "code view")
    for depth, brick in zip(layout.depth, script.bricks):
        lines.append((depth, brick_line(brick)))
    return lines


def render_code_view(project: Project) -> str:
    blocks = []
    for scene in project.scenes:
        for obj in scene.objects:
            for script in obj.scripts:
                blocks.append("\n".join(
                    f"{INDENT * depth}{text}"
                    for depth, text in render_script_lines(script)))
    return "\n\n".join(blocks) + "\n" if blocks else ""
