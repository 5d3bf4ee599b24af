class MergeConflictError(ValueError):
    """The two projects cannot merge (incompatible stage dimensions)."""


class MalformedSourceError(ValueError):
    """The conversion source is not a readable Scratch-3 archive."""
