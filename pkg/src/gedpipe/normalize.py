"""Rule-table text normalization and reverse span mapping.

Normalization is a data-driven ordered rewrite table (punctuation variants,
zero-width characters, script-specific compositions) applied in a single
left-to-right scan: at each position the longest matching pattern wins,
listed order breaks length ties, and replacement text is not rescanned.

Reverse mapping aligns the normalized text back to the unmodified original
with a minimum Levenshtein edit script (ties broken preferring match >
substitution > deletion > insertion, walking forward), so spans predicted
on normalized text can be expressed as offsets into the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import TextIO

from .errors import InvalidInputError, SchemaError
from .spans import ErrorSpan, SpanSet

__all__ = [
    "NormRules",
    "AlignmentMap",
    "load_rules",
    "default_rules",
    "normalize",
    "align",
    "map_spans_to_original",
]

# Edit operations in tie-break preference order.
_MATCH, _SUB, _DEL, _INS = 0, 1, 2, 3


@dataclass(frozen=True, slots=True)
class NormRules:
    """Ordered literal rewrite rules; patterns must be non-empty."""

    rules: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        for pattern, _ in self.rules:
            if not pattern:
                raise InvalidInputError("rewrite patterns must be non-empty")

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True, slots=True)
class AlignmentMap:
    """Monotone map from normalized-text boundaries to original-text boundaries.

    ``positions[j]`` is the original offset for normalized offset j, for
    j in 0..norm_len inclusive; positions[0] == 0 and positions[norm_len]
    == orig_len. Boundaries inside unchanged runs map to their exact
    original positions.
    """

    positions: tuple[int, ...]
    orig_len: int

    @property
    def norm_len(self) -> int:
        return len(self.positions) - 1

    def to_original(self, norm_offset: int) -> int:
        if not (0 <= norm_offset < len(self.positions)):
            raise InvalidInputError(
                f"offset {norm_offset} outside alignment of length {self.norm_len}"
            )
        return self.positions[norm_offset]


def _unescape(field: str, path: str, lineno: int) -> str:
    out: list[str] = []
    i = 0
    while i < len(field):
        ch = field[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(field):
            raise SchemaError("dangling backslash", path, lineno)
        kind = field[i + 1]
        if kind == "u":
            hexdigits = field[i + 2 : i + 6]
            if len(hexdigits) != 4:
                raise SchemaError(f"bad \\u escape in {field!r}", path, lineno)
            try:
                out.append(chr(int(hexdigits, 16)))
            except ValueError as exc:
                raise SchemaError(f"bad \\u escape in {field!r}", path, lineno) from exc
            i += 6
        elif kind in ("t", "n", "\\"):
            out.append({"t": "\t", "n": "\n", "\\": "\\"}[kind])
            i += 2
        else:
            raise SchemaError(f"unknown escape \\{kind}", path, lineno)
    return "".join(out)


def load_rules(fp: TextIO, path: str = "") -> NormRules:
    """Read a two-column TSV rule table.

    Columns are ``pattern<TAB>replacement``; ``\\uXXXX``, ``\\t``, ``\\n``
    and ``\\\\`` escapes are honored; lines starting with ``#`` and blank
    lines are skipped. An empty file disables normalization.
    """
    rules: list[tuple[str, str]] = []
    for lineno, line in enumerate(fp, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise SchemaError("expected pattern<TAB>replacement", path, lineno)
        raw_pattern, raw_replacement = line.split("\t", 1)
        pattern = _unescape(raw_pattern, path, lineno)
        replacement = _unescape(raw_replacement, path, lineno)
        if not pattern:
            raise SchemaError("empty pattern", path, lineno)
        rules.append((pattern, replacement))
    return NormRules(tuple(rules))


def default_rules() -> NormRules:
    """The rule table shipped with the package."""
    ref = resources.files("gedpipe.data").joinpath("norm_rules.tsv")
    with ref.open("r", encoding="utf-8") as fp:
        return load_rules(fp, "gedpipe/data/norm_rules.tsv")


def normalize(text: str, rules: NormRules) -> str:
    """Apply the rewrite table in a single left-to-right scan."""
    if not rules.rules:
        return text
    by_first: dict[str, list[tuple[str, str]]] = {}
    for pattern, replacement in rules.rules:
        by_first.setdefault(pattern[0], []).append((pattern, replacement))
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        best: tuple[str, str] | None = None
        for pattern, replacement in by_first.get(text[i], ()):
            if text.startswith(pattern, i) and (
                best is None or len(pattern) > len(best[0])
            ):
                best = (pattern, replacement)
        if best is None:
            out.append(text[i])
            i += 1
        else:
            out.append(best[1])
            i += len(best[0])
    return "".join(out)


def align(original: str, normalized: str) -> AlignmentMap:
    """Minimum-edit-distance alignment from normalized back to original.

    Builds a suffix-cost table for transforming original[i:] into
    normalized[j:], then walks the unique preference-optimal path forward
    from (0, 0). positions[j] records the original offset at which the walk
    first reaches normalized boundary j; the final boundary is pinned to
    orig_len so trailing deleted runs stay inside the text.
    """
    m, n = len(original), len(normalized)
    # dp[i][j] = edits to turn original[i:] into normalized[j:]
    dp = [[0] * (n + 1) for _ in range(m + 1)]
    for j in range(n + 1):
        dp[m][j] = n - j
    for i in range(m - 1, -1, -1):
        row = dp[i]
        below = dp[i + 1]
        row[n] = m - i
        oc = original[i]
        for j in range(n - 1, -1, -1):
            diag = below[j + 1] + (0 if oc == normalized[j] else 1)
            down = below[j] + 1
            right = row[j + 1] + 1
            best = diag
            if down < best:
                best = down
            if right < best:
                best = right
            row[j] = best
    positions = [0] * (n + 1)
    seen = [False] * (n + 1)
    i = j = 0
    positions[0] = 0
    seen[0] = True
    while i < m or j < n:
        cost = dp[i][j]
        if i < m and j < n and original[i] == normalized[j] and cost == dp[i + 1][j + 1]:
            i += 1
            j += 1
        elif i < m and j < n and cost == dp[i + 1][j + 1] + 1:
            i += 1
            j += 1
        elif i < m and cost == dp[i + 1][j] + 1:
            i += 1
        else:
            j += 1
        if not seen[j]:
            positions[j] = i
            seen[j] = True
    positions[n] = m
    return AlignmentMap(tuple(positions), m)


def map_spans_to_original(spans: SpanSet, amap: AlignmentMap) -> SpanSet:
    """Re-express spans predicted on normalized text as original-text offsets.

    A region whose content was entirely inserted by normalization collapses
    to an insertion point; the result is re-normalized (adjacent regions
    merged, duplicate insertion points dropped).
    """
    if spans.text_len != amap.norm_len:
        raise InvalidInputError(
            f"span set indexes a text of length {spans.text_len}, "
            f"alignment covers {amap.norm_len}"
        )
    pool = [
        ErrorSpan(amap.positions[s.start], amap.positions[s.end]) for s in spans.spans
    ]
    return SpanSet.from_spans(pool, amap.orig_len)


def build_alignment(original: str, rules: NormRules) -> tuple[str, AlignmentMap]:
    """Normalize and align in one step; convenience for pipeline callers."""
    normalized = normalize(original, rules)
    return normalized, align(original, normalized)
