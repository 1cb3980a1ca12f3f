"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: usage problems exit 1, any
PipelineError exits 2.
"""

from __future__ import annotations


class PipelineError(Exception):
    """Base class for all data and input errors raised by this package."""


class InvalidInputError(PipelineError):
    """A value violates an operation's precondition or a type invariant."""


class AnnotationParseError(PipelineError):
    """Malformed `$`-annotated text.

    ``offset`` is the index of the offending ``$`` in the annotated string.
    """

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class LabelingError(PipelineError):
    """A span cannot be expressed as token labels (no carrier token)."""


class SchemaError(PipelineError):
    """A record in an input file violates its declared format.

    ``line`` is 1-based; ``path`` may be empty for in-memory sources.
    """

    def __init__(self, message: str, path: str = "", line: int = 0) -> None:
        location = f"{path}:{line}: " if path or line else ""
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class EvaluationError(PipelineError):
    """Predictions reference documents absent from the gold corpus."""

    def __init__(self, missing_ids: list[str]) -> None:
        shown = ", ".join(missing_ids[:10])
        suffix = "" if len(missing_ids) <= 10 else f" (+{len(missing_ids) - 10} more)"
        super().__init__(f"prediction ids missing from gold: {shown}{suffix}")
        self.missing_ids = missing_ids
