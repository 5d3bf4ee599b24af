"""Project data model, archive format, validation, statistics, code view."""

from .archive import load_project, project_to_bytes, save_project
from .catalog import (
    BRICK_SPECS,
    CATEGORIES,
    HAT_KINDS,
    MOTION_TYPES,
    BrickSpec,
    brick_category,
)
from .codeview import render_code_view, render_script_lines
from .errors import (
    MalformedArchiveError,
    MalformedXmlError,
    MissingAssetError,
    ProjectError,
    SchemaViolationError,
)
from .model import (
    Brick,
    Look,
    Project,
    ProjectHeader,
    Scene,
    Script,
    SoundRef,
    SpriteObject,
    empty_project,
)
from .statistics import CodeStatistics, compute_statistics, statistics_text
from .validate import compute_layout, validate_project

__all__ = [
    "BRICK_SPECS",
    "CATEGORIES",
    "HAT_KINDS",
    "MOTION_TYPES",
    "Brick",
    "BrickSpec",
    "CodeStatistics",
    "Look",
    "MalformedArchiveError",
    "MalformedXmlError",
    "MissingAssetError",
    "Project",
    "ProjectError",
    "ProjectHeader",
    "Scene",
    "SchemaViolationError",
    "Script",
    "SoundRef",
    "SpriteObject",
    "brick_category",
    "compute_layout",
    "compute_statistics",
    "empty_project",
    "load_project",
    "project_to_bytes",
    "render_code_view",
    "render_script_lines",
    "save_project",
    "statistics_text",
    "validate_project",
]
