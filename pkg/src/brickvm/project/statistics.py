"""Code statistics over a project tree.

Counting rule: a hat heads a script and is counted as a script, never as a
brick; loop and if end markers (and Else) are ordinary Control bricks; the
background counts as an object. GLOBALS and LOCALS each cover variables and
lists together.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import CATEGORIES, brick_category
from .model import Project


@dataclass
class CategoryCount:
    total: int = 0
    distinct: int = 0


@dataclass
class CodeStatistics:
    scenes: int = 0
    scripts: int = 0
    bricks: int = 0
    objects: int = 0
    looks: int = 0
    sounds: int = 0
    globals_: int = 0
    locals_: int = 0
    categories: dict = field(default_factory=dict)


def compute_statistics(project: Project) -> CodeStatistics:
    stats = CodeStatistics()
    stats.scenes = len(project.scenes)
    stats.globals_ = len(project.variables) + len(project.lists)
    kinds_by_category: dict[str, list] = {c: [] for c in CATEGORIES}
    for scene in project.scenes:
        stats.objects += len(scene.objects)
        for obj in scene.objects:
            stats.looks += len(obj.looks)
            stats.sounds += len(obj.sounds)
            stats.scripts += len(obj.scripts)
            stats.locals_ += len(obj.variables) + len(obj.lists)
            for script in obj.scripts:
                stats.bricks += len(script.bricks)
                for brick in script.bricks:
                    kinds_by_category[brick_category(brick.kind)].append(brick.kind)
    stats.categories = {
        category: CategoryCount(len(kinds), len(set(kinds)))
        for category, kinds in kinds_by_category.items()
    }
    return stats


def statistics_text(stats: CodeStatistics) -> str:
    scalar_rows = (
        ("SCENES", stats.scenes),
        ("SCRIPTS", stats.scripts),
        ("BRICKS", stats.bricks),
        ("OBJECTS", stats.objects),
        ("LOOKS", stats.looks),
        ("SOUNDS", stats.sounds),
        ("GLOBALS", stats.globals_),
        ("LOCALS", stats.locals_),
    )
    lines = [f"Total number of {label}:\t{count}" for label, count in scalar_rows]
    lines.append("")
    for group in (CATEGORIES[:3], CATEGORIES[3:]):
        for category in group:
            count = stats.categories.get(category, CategoryCount())
            lines.append(
                f"{category.upper()} BRICKS: "
                f"Total: {count.total} Different: {count.distinct}")
        lines.append("")
    return "\n".join(lines[:-1]) + "\n"
