from .errors import MalformedSourceError, MergeConflictError
from .fingerprint import (
    base_name,
    object_fingerprint,
    project_fingerprints,
)
from .merge import MergeOutcome, merge_projects
from .scratch import ConversionReport, convert_scratch

__all__ = [
    "ConversionReport",
    "MalformedSourceError",
    "MergeConflictError",
    "MergeOutcome",
    "base_name",
    "convert_scratch",
    "merge_projects",
    "object_fingerprint",
    "project_fingerprints",
]
