"""Levenshtein metric, corpus evaluation report, and stratified splitting.

Distances count single-codepoint insertions, deletions, and substitutions
(never bytes), matching the offset convention used everywhere else.

Split reproducibility: the seeded shuffle is a Fisher-Yates permutation
driven by the SplitMix64 generator so splits reproduce across languages
and runtimes. SplitMix64 state update per draw, all in 64-bit wrapping
arithmetic:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Bounded draws use rejection-free modulo reduction output % n (bias is
irrelevant at corpus scale and keeps the recipe trivial to port). Strata
are processed in ascending span-count order from one generator stream
seeded with the user seed.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from itertools import islice
from typing import Sequence, TextIO

from .annotation import LabeledDoc
from .errors import EvaluationError, InvalidInputError
from .spans import SerializationMode, SpanSet, to_annotated, to_span_list_string

__all__ = [
    "EvalReport",
    "levenshtein",
    "serialize_spans",
    "evaluate",
    "stratified_split",
    "write_report_csv",
    "write_report_summary",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class EvalReport:
    """Per-document Levenshtein distances and their arithmetic mean."""

    per_doc: tuple[tuple[str, int], ...]
    mean_distance: float
    serialization: SerializationMode


def levenshtein(a: str, b: str) -> int:
    """Minimum single-codepoint edits turning ``a`` into ``b``.

    Standard two-row dynamic program over the stripped common prefix and
    suffix: O(|a|*|b|) time, O(min(|a|,|b|)) space.
    """
    if a == b:
        return 0
    # shared prefix and suffix never contribute edits
    i = 0
    n = min(len(a), len(b))
    while i < n and a[i] == b[i]:
        i += 1
    if i:
        a = a[i:]
        b = b[i:]
    j = 0
    n = min(len(a), len(b))
    while j < n and a[-1 - j] == b[-1 - j]:
        j += 1
    if j:
        a = a[:-j]
        b = b[:-j]
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a):
        cur = [i + 1]
        append = cur.append
        left = i + 1
        diag = prev[0]
        for cb, up in zip(b, islice(prev, 1, None)):
            value = diag if ca == cb else diag + 1
            if up + 1 < value:
                value = up + 1
            if left + 1 < value:
                value = left + 1
            append(value)
            left = value
            diag = up
        prev = cur
    return prev[-1]


def serialize_spans(text: str, spans: SpanSet, mode: SerializationMode) -> str:
    if mode is SerializationMode.ANNOTATED_TEXT:
        return to_annotated(text, spans)
    return to_span_list_string(spans)


def evaluate(
    preds: Sequence[tuple[str, SpanSet]],
    gold: Sequence[tuple[str, str, SpanSet]],
    mode: SerializationMode = SerializationMode.ANNOTATED_TEXT,
) -> EvalReport:
    """Compare predictions against gold, one distance per document.

    Every prediction id must have a gold record; spans must be valid for
    the gold text. The report preserves prediction order; the mean over
    zero documents is defined as 0.0.
    """
    gold_by_id = {doc_id: (text, spans) for doc_id, text, spans in gold}
    missing = [doc_id for doc_id, _ in preds if doc_id not in gold_by_id]
    if missing:
        raise EvaluationError(missing)
    per_doc: list[tuple[str, int]] = []
    for doc_id, pred_spans in preds:
        text, gold_spans = gold_by_id[doc_id]
        pred_str = serialize_spans(text, pred_spans, mode)
        gold_str = serialize_spans(text, gold_spans, mode)
        per_doc.append((doc_id, levenshtein(pred_str, gold_str)))
    mean = sum(d for _, d in per_doc) / len(per_doc) if per_doc else 0.0
    return EvalReport(tuple(per_doc), mean, mode)


class _SplitMix64:
    """See the module header for the exact recipe."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def shuffle(self, items: list) -> None:
        # Fisher-Yates, descending index, bounded draw via modulo.
        for i in range(len(items) - 1, 0, -1):
            j = self.next_u64() % (i + 1)
            items[i], items[j] = items[j], items[i]


def stratified_split(
    docs: Sequence[LabeledDoc], ratio: float, seed: int
) -> tuple[list[LabeledDoc], list[LabeledDoc]]:
    """Deterministic train/dev split stratified by span count.

    Documents are grouped by ``len(doc.spans)``; each stratum is shuffled
    with the seeded generator and split at floor(n * ratio + 0.5), keeping
    every stratum within one document of the target proportion. Outputs
    are disjoint and exhaustive.
    """
    if not (0.0 < ratio < 1.0):
        raise InvalidInputError(f"ratio must be strictly between 0 and 1, got {ratio}")
    strata: dict[int, list[LabeledDoc]] = {}
    for doc in docs:
        strata.setdefault(len(doc.spans), []).append(doc)
    rng = _SplitMix64(seed)
    train: list[LabeledDoc] = []
    dev: list[LabeledDoc] = []
    for key in sorted(strata):
        group = strata[key]
        rng.shuffle(group)
        n_train = int(len(group) * ratio + 0.5)
        train.extend(group[:n_train])
        dev.extend(group[n_train:])
    return train, dev


def write_report_csv(report: EvalReport, fp: TextIO) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["id", "distance"])
    for doc_id, distance in report.per_doc:
        writer.writerow([doc_id, distance])


def write_report_summary(report: EvalReport, fp: TextIO) -> None:
    summary = {
        "mean": report.mean_distance,
        "count": len(report.per_doc),
        "serialization": report.serialization.value,
    }
    fp.write(json.dumps(summary, sort_keys=True) + "\n")
