"""Errors raised while reading project archives."""

from __future__ import annotations


class ProjectError(Exception):
    pass


class MalformedArchiveError(ProjectError):
    """The container is not a readable archive of the expected shape."""


class MalformedXmlError(ProjectError):
    """code.xml is not well-formed XML."""


class SchemaViolationError(ProjectError):
    """Well-formed XML that breaks the program schema or an invariant."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class MissingAssetError(ProjectError):
    """A look or sound references an archive member that is not there."""

    def __init__(self, path: str):
        super().__init__(f"missing asset {path!r}")
        self.path = path
