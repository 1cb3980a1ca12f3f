"""Gold-annotation parsing, token labeling, and training-label emission.

The corpus marks errors inline with ``$``: ``$...$`` wraps an error region
and the empty pair ``$$`` marks a missing-content insertion point. ``$`` is
reserved; a literal ``$`` in source text is rejected at parse time.

Token labels: O (no error), B (first token of an error region), I
(continuation token), M (content missing after the token).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .errors import AnnotationParseError, InvalidInputError, LabelingError, SchemaError
from .spans import ErrorSpan, SpanSet

__all__ = [
    "LABELS",
    "LabeledDoc",
    "parse_annotated",
    "label_tokens",
    "doc_proxy_label",
    "validate_token_offsets",
    "build_labeled_doc",
    "write_labels_jsonl",
    "read_labels_jsonl",
]

LABELS = ("O", "B", "I", "M")

TokenOffsets = Sequence[tuple[int, int]]


@dataclass(frozen=True, slots=True)
class LabeledDoc:
    """One training document: clean text, gold spans, and token-level labels."""

    id: str
    clean_text: str
    spans: SpanSet
    token_offsets: tuple[tuple[int, int], ...]
    token_labels: tuple[str, ...]
    proxy_label: int

    def __post_init__(self) -> None:
        if len(self.token_offsets) != len(self.token_labels):
            raise InvalidInputError(
                f"doc {self.id}: {len(self.token_labels)} labels for "
                f"{len(self.token_offsets)} tokens"
            )


def parse_annotated(annotated: str) -> tuple[str, SpanSet]:
    """Strip ``$`` markers and return (clean text, spans over the clean text).

    ``$...$`` becomes a span over its content, ``$$`` a zero-length span at
    its position. An odd number of ``$`` raises with the offset of the
    unmatched marker. Delimiters are flat: markers pair up left to right,
    so nesting cannot occur in a well-formed string.
    """
    clean: list[str] = []
    pool: list[ErrorSpan] = []
    open_at: int | None = None
    open_src = -1
    for i, ch in enumerate(annotated):
        if ch != "$":
            clean.append(ch)
            continue
        if open_at is None:
            open_at = len(clean)
            open_src = i
        else:
            pool.append(ErrorSpan(open_at, len(clean)))
            open_at = None
    if open_at is not None:
        raise AnnotationParseError("unbalanced '$'", open_src)
    text = "".join(clean)
    return text, SpanSet.from_spans(pool, len(text))


def validate_token_offsets(tokens: TokenOffsets, text_len: int) -> None:
    """Reject unsorted, overlapping, empty, or out-of-range token offsets."""
    prev_end = -1
    prev_start = -1
    for start, end in tokens:
        if not (0 <= start < end <= text_len):
            raise InvalidInputError(f"token offsets ({start}, {end}) out of range")
        if start <= prev_start:
            raise InvalidInputError("token starts must be strictly increasing")
        if start < prev_end:
            raise InvalidInputError(
                f"token ({start}, {end}) overlaps previous token ending at {prev_end}"
            )
        prev_start, prev_end = start, end


def label_tokens(spans: SpanSet, tokens: TokenOffsets) -> list[str]:
    """Project gold spans onto tokens as O/B/I/M labels.

    The first token overlapping an error region gets B; later overlapping
    tokens get I. A token already labeled by an earlier region keeps that
    label (a token bridging two regions stays I). The token immediately
    preceding an insertion point carries M; an insertion point inside a
    token is carried by that token. Region membership beats M when both
    apply.
    """
    tokens = list(tokens)
    labels = ["O"] * len(tokens)
    for span in spans.region_spans():
        touched = [
            k
            for k, (ts, te) in enumerate(tokens)
            if ts < span.end and te > span.start
        ]
        if not touched:
            raise LabelingError(
                f"span ({span.start}, {span.end}) overlaps no token and cannot "
                "be expressed at token granularity"
            )
        for pos, k in enumerate(touched):
            if labels[k] != "O":
                continue
            labels[k] = "B" if pos == 0 else "I"
    for q in spans.insertion_points():
        carrier = _carrier_token(tokens, q)
        if labels[carrier] == "O":
            labels[carrier] = "M"
    return labels


def _carrier_token(tokens: list[tuple[int, int]], q: int) -> int:
    # Largest token with start < q: the closest preceding token when q is in
    # a gap, or the containing token when q falls inside one.
    if not tokens or q <= tokens[0][0]:
        raise LabelingError(f"insertion point {q} precedes the first token")
    carrier = 0
    for k, (start, _end) in enumerate(tokens):
        if start < q:
            carrier = k
        else:
            break
    return carrier


def doc_proxy_label(text_len: int, spans: SpanSet) -> int:
    """1 iff error regions cover strictly more than 30% of the text."""
    if text_len <= 0:
        raise InvalidInputError("proxy label needs text_len > 0")
    covered = sum(len(s) for s in spans.region_spans())
    return 1 if covered / text_len > 0.30 else 0


def build_labeled_doc(doc_id: str, annotated: str, tokens: TokenOffsets) -> LabeledDoc:
    text, spans = parse_annotated(annotated)
    validate_token_offsets(tokens, len(text))
    labels = label_tokens(spans, tokens)
    return LabeledDoc(
        id=doc_id,
        clean_text=text,
        spans=spans,
        token_offsets=tuple((s, e) for s, e in tokens),
        token_labels=tuple(labels),
        proxy_label=doc_proxy_label(len(text), spans) if text else 0,
    )


def write_labels_jsonl(docs: Iterable[LabeledDoc], fp: TextIO) -> None:
    """Emit the training-label format, one JSON object per document."""
    for doc in docs:
        record = {
            "id": doc.id,
            "text": doc.clean_text,
            "token_offsets": [[s, e] for s, e in doc.token_offsets],
            "labels": list(doc.token_labels),
            "proxy_label": doc.proxy_label,
        }
        fp.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def read_labels_jsonl(fp: TextIO, path: str = "") -> list[LabeledDoc]:
    docs: list[LabeledDoc] = []
    for lineno, line in enumerate(fp, 1):
        line = line.strip()
        if not line:
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", path, lineno) from exc
        try:
            offsets = tuple((int(s), int(e)) for s, e in raw["token_offsets"])
            labels = tuple(str(x) for x in raw["labels"])
            if any(label not in LABELS for label in labels):
                raise InvalidInputError(f"unknown label in {labels}")
            text = raw["text"]
            spans = _spans_from_labels(offsets, labels, len(text))
            docs.append(
                LabeledDoc(
                    id=str(raw["id"]),
                    clean_text=text,
                    spans=spans,
                    token_offsets=offsets,
                    token_labels=labels,
                    proxy_label=int(raw["proxy_label"]),
                )
            )
        except (KeyError, TypeError, ValueError, InvalidInputError) as exc:
            raise SchemaError(f"bad label record: {exc}", path, lineno) from exc
    return docs


def _spans_from_labels(
    offsets: tuple[tuple[int, int], ...], labels: tuple[str, ...], text_len: int
) -> SpanSet:
    # Token-granular reconstruction; used only to rebuild LabeledDoc.spans
    # when reading the emission format back.
    pool: list[ErrorSpan] = []
    run_start: int | None = None
    run_end = 0
    for (ts, te), label in zip(offsets, labels):
        if label == "B" or (label == "I" and run_start is None):
            if run_start is not None:
                pool.append(ErrorSpan(run_start, run_end))
            run_start, run_end = ts, te
        elif label == "I":
            run_end = te
        else:
            if run_start is not None:
                pool.append(ErrorSpan(run_start, run_end))
                run_start = None
            if label == "M":
                pool.append(ErrorSpan(te, te))
    if run_start is not None:
        pool.append(ErrorSpan(run_start, run_end))
    return SpanSet.from_spans(pool, text_len)
