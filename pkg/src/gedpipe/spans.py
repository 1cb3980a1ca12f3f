"""Character-offset error spans, span-set algebra, and output serializations.

Offsets count Unicode scalar values from the start of the text (0-based,
end-exclusive), never bytes or UTF-16 units. A zero-length span (start ==
end) marks a "missing after" insertion point; a non-zero span marks an
error region.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import InvalidInputError

__all__ = [
    "ErrorSpan",
    "SpanSet",
    "SerializationMode",
    "span_union",
    "span_intersection",
    "to_annotated",
    "to_span_list_string",
    "parse_span_list_string",
]


class SerializationMode(Enum):
    """How a span set is rendered to the string the metric compares."""

    ANNOTATED_TEXT = "annotated"
    SPAN_LIST = "spanlist"


@dataclass(frozen=True, slots=True)
class ErrorSpan:
    """A contiguous error region, or an insertion point when start == end."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start <= self.end):
            raise InvalidInputError(
                f"span offsets must satisfy 0 <= start <= end, got ({self.start}, {self.end})"
            )

    @property
    def is_insertion_point(self) -> bool:
        return self.start == self.end

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True, slots=True)
class SpanSet:
    """Canonical, validated container for the spans predicted on one text.

    Invariants enforced at construction:
      - spans sorted by (start, end), every end <= text_len
      - non-zero spans pairwise disjoint with a gap between consecutive
        ones (adjacent spans must have been merged beforehand)
      - zero-length spans unique per position and never strictly inside
        a non-zero span

    Use :meth:`from_spans` to build from an arbitrary span list; the direct
    constructor rejects anything non-canonical.
    """

    spans: tuple[ErrorSpan, ...]
    text_len: int

    def __post_init__(self) -> None:
        if self.text_len < 0:
            raise InvalidInputError(f"text_len must be >= 0, got {self.text_len}")
        prev_nonzero: ErrorSpan | None = None
        prev = None
        seen_zero: set[int] = set()
        for span in self.spans:
            if span.end > self.text_len:
                raise InvalidInputError(
                    f"span ({span.start}, {span.end}) exceeds text_len {self.text_len}"
                )
            if prev is not None and (span.start, span.end) < (prev.start, prev.end):
                raise InvalidInputError("spans must be sorted by (start, end)")
            if span.is_insertion_point:
                if span.start in seen_zero:
                    raise InvalidInputError(
                        f"duplicate insertion point at {span.start}"
                    )
                seen_zero.add(span.start)
            elif prev_nonzero is not None and span.start <= prev_nonzero.end:
                raise InvalidInputError(
                    f"spans ({prev_nonzero.start}, {prev_nonzero.end}) and "
                    f"({span.start}, {span.end}) overlap or touch"
                )
            if not span.is_insertion_point:
                prev_nonzero = span
            prev = span
        for q in seen_zero:
            for span in self.spans:
                if not span.is_insertion_point and span.start < q < span.end:
                    raise InvalidInputError(
                        f"insertion point {q} lies inside span ({span.start}, {span.end})"
                    )

    @classmethod
    def from_spans(cls, spans: Iterable[ErrorSpan], text_len: int) -> SpanSet:
        """Normalize an arbitrary span list into a canonical SpanSet.

        Overlapping and adjacent non-zero spans are merged, duplicate
        insertion points collapse, and insertion points strictly inside a
        merged region are dropped (interior positions are already errors).
        Normalizing twice is a fixpoint.
        """
        nonzero = sorted(
            ((s.start, s.end) for s in spans if s.start < s.end)
        )
        zeros = sorted({s.start for s in spans if s.start == s.end})
        merged: list[list[int]] = []
        for start, end in nonzero:
            if merged and start <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], end)
            else:
                merged.append([start, end])
        out: list[ErrorSpan] = [ErrorSpan(s, e) for s, e in merged]
        for q in zeros:
            if any(s < q < e for s, e in merged):
                continue
            out.append(ErrorSpan(q, q))
        out.sort(key=lambda s: (s.start, s.end))
        return cls(tuple(out), text_len)

    @classmethod
    def empty(cls, text_len: int) -> SpanSet:
        return cls((), text_len)

    def covered_positions(self) -> set[int]:
        """Characters inside some non-zero span (insertion points cover nothing)."""
        covered: set[int] = set()
        for span in self.spans:
            covered.update(range(span.start, span.end))
        return covered

    def insertion_points(self) -> tuple[int, ...]:
        return tuple(s.start for s in self.spans if s.is_insertion_point)

    def region_spans(self) -> tuple[ErrorSpan, ...]:
        return tuple(s for s in self.spans if not s.is_insertion_point)

    def __len__(self) -> int:
        return len(self.spans)

    def __iter__(self):
        return iter(self.spans)


def _check_compatible(sets: Sequence[SpanSet]) -> int:
    if not sets:
        raise InvalidInputError("need at least one span set")
    text_len = sets[0].text_len
    for s in sets[1:]:
        if s.text_len != text_len:
            raise InvalidInputError(
                f"span sets index texts of different lengths: {text_len} vs {s.text_len}"
            )
    return text_len


def span_union(sets: Sequence[SpanSet]) -> SpanSet:
    """Character-membership union of span sets over the same text.

    A position is covered iff some input covers it; maximal covered runs
    become spans. An insertion point survives iff present in at least one
    input and not interior to a resulting span.
    """
    text_len = _check_compatible(sets)
    pool: list[ErrorSpan] = []
    for s in sets:
        pool.extend(s.spans)
    return SpanSet.from_spans(pool, text_len)


def span_intersection(sets: Sequence[SpanSet]) -> SpanSet:
    """Character-membership intersection of span sets over the same text.

    A position is covered iff every input covers it. An insertion point
    survives iff present at exactly the same position in every input.
    """
    text_len = _check_compatible(sets)
    runs = [(s.start, s.end) for s in sets[0].region_spans()]
    for other in sets[1:]:
        runs = _intersect_runs(runs, [(s.start, s.end) for s in other.region_spans()])
        if not runs:
            break
    zeros = set(sets[0].insertion_points())
    for other in sets[1:]:
        zeros &= set(other.insertion_points())
    pool = [ErrorSpan(s, e) for s, e in runs] + [ErrorSpan(q, q) for q in zeros]
    return SpanSet.from_spans(pool, text_len)


def _intersect_runs(
    a: list[tuple[int, int]], b: list[tuple[int, int]]
) -> list[tuple[int, int]]:
    # Two-pointer sweep over sorted disjoint interval lists.
    out: list[tuple[int, int]] = []
    i = j = 0
    while i < len(a) and j < len(b):
        start = max(a[i][0], b[j][0])
        end = min(a[i][1], b[j][1])
        if start < end:
            out.append((start, end))
        if a[i][1] <= b[j][1]:
            i += 1
        else:
            j += 1
    return out


def to_annotated(text: str, spans: SpanSet) -> str:
    """Render spans inline: regions wrapped in ``$...$``, insertion points as ``$$``.

    Insertions are applied right to left so every offset refers to the
    original text.
    """
    if spans.text_len != len(text):
        raise InvalidInputError(
            f"span set indexes a text of length {spans.text_len}, got {len(text)}"
        )
    out = text
    for span in sorted(spans.spans, key=lambda s: (s.start, s.end), reverse=True):
        if span.is_insertion_point:
            out = out[: span.start] + "$$" + out[span.start :]
        else:
            out = out[: span.start] + "$" + out[span.start : span.end] + "$" + out[span.end :]
    return out


def to_span_list_string(spans: SpanSet) -> str:
    """Deterministic ``[(s1, e1), (s2, e2), ...]`` rendering in sorted order."""
    return "[" + ", ".join(f"({s.start}, {s.end})" for s in spans.spans) + "]"


_SPAN_LIST_RE = re.compile(r"^\[\s*(?:\(\s*\d+\s*,\s*\d+\s*\)(?:\s*,\s*\(\s*\d+\s*,\s*\d+\s*\))*\s*,?\s*)?\]$")
_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_span_list_string(rendered: str, text_len: int) -> SpanSet:
    """Inverse of :func:`to_span_list_string` for reading spans CSV files."""
    if not _SPAN_LIST_RE.match(rendered.strip()):
        raise InvalidInputError(f"malformed span list: {rendered!r}")
    pool = [ErrorSpan(int(m.group(1)), int(m.group(2))) for m in _PAIR_RE.finditer(rendered)]
    return SpanSet.from_spans(pool, text_len)
