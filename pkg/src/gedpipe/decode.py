"""Turn per-token class probabilities into error spans.

Consumes the prediction wire format (JSONL, one document per line):

    {"id": str, "text": str,
     "tokens": [{"start": int, "end": int,
                 "probs": {"O": f, "B": f, "I": f, "M": f}}]}

Offsets are Unicode-scalar-value counts into ``text``. The confidence
threshold biases decoding toward the original tokens: an error class wins
only when the model is confident enough.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import InvalidInputError, SchemaError
from .spans import ErrorSpan, SpanSet

__all__ = [
    "TokenPrediction",
    "PredictionDoc",
    "apply_threshold",
    "decode_spans",
    "read_predictions_jsonl",
    "write_predictions_jsonl",
]

_CLASSES = ("O", "B", "I", "M")
_PROB_TOLERANCE = 1e-5


@dataclass(frozen=True, slots=True)
class TokenPrediction:
    """One token's character span and class probabilities in (O, B, I, M) order."""

    start: int
    end: int
    probs: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise InvalidInputError(
                f"token offsets must satisfy 0 <= start < end, got ({self.start}, {self.end})"
            )
        if len(self.probs) != 4 or any(p < 0 for p in self.probs):
            raise InvalidInputError(f"need four non-negative probabilities, got {self.probs}")
        if not math.isclose(sum(self.probs), 1.0, abs_tol=_PROB_TOLERANCE):
            raise InvalidInputError(
                f"probabilities must sum to 1 within {_PROB_TOLERANCE}, got {sum(self.probs)}"
            )


@dataclass(frozen=True, slots=True)
class PredictionDoc:
    """A document's text plus its token predictions, sorted and non-overlapping."""

    id: str
    text: str
    tokens: tuple[TokenPrediction, ...]

    def __post_init__(self) -> None:
        prev_end = 0
        for tok in self.tokens:
            if tok.start < prev_end:
                raise InvalidInputError(
                    f"doc {self.id}: token ({tok.start}, {tok.end}) overlaps or is unsorted"
                )
            if tok.end > len(self.text):
                raise InvalidInputError(
                    f"doc {self.id}: token ({tok.start}, {tok.end}) exceeds text length "
                    f"{len(self.text)}"
                )
            prev_end = tok.end


def apply_threshold(probs: tuple[float, float, float, float], threshold: float) -> str:
    """Pick the argmax class, falling back to O when an error class is unsure.

    Ties break in O > B > I > M order. With threshold 0 this is plain argmax.
    """
    TokenPrediction(0, 1, probs)  # reuse the probability validation
    if not (0.0 <= threshold <= 1.0):
        raise InvalidInputError(f"threshold must be in [0, 1], got {threshold}")
    best = 0
    for k in range(1, 4):
        if probs[k] > probs[best]:
            best = k
    if best != 0 and probs[best] < threshold:
        return "O"
    return _CLASSES[best]


def decode_spans(doc: PredictionDoc, threshold: float, strict: bool = False) -> SpanSet:
    """Label every token at the threshold and merge error runs into spans.

    A maximal run of B/I tokens becomes one span from the run's first token
    start to its last token end (inter-token gaps are inside the error); a
    B always opens a new run. An M token contributes an insertion point at
    its end offset. A bare I (no open run) opens a run unless ``strict``,
    which drops it.
    """
    pool: list[ErrorSpan] = []
    run: tuple[int, int] | None = None
    for tok in doc.tokens:
        label = apply_threshold(tok.probs, threshold)
        if label == "B":
            if run is not None:
                pool.append(ErrorSpan(*run))
            run = (tok.start, tok.end)
        elif label == "I":
            if run is not None:
                run = (run[0], tok.end)
            elif not strict:
                run = (tok.start, tok.end)
        else:
            if run is not None:
                pool.append(ErrorSpan(*run))
                run = None
            if label == "M":
                pool.append(ErrorSpan(tok.end, tok.end))
    if run is not None:
        pool.append(ErrorSpan(*run))
    return SpanSet.from_spans(pool, len(doc.text))


def _parse_doc(raw: object, path: str, lineno: int) -> PredictionDoc:
    if not isinstance(raw, dict):
        raise SchemaError("record must be a JSON object", path, lineno)
    try:
        doc_id = raw["id"]
        text = raw["text"]
        tokens = raw["tokens"]
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}", path, lineno) from exc
    if not isinstance(doc_id, str) or not isinstance(text, str) or not isinstance(tokens, list):
        raise SchemaError("id/text must be strings and tokens a list", path, lineno)
    parsed: list[TokenPrediction] = []
    for k, tok in enumerate(tokens):
        try:
            probs = tok["probs"]
            parsed.append(
                TokenPrediction(
                    start=int(tok["start"]),
                    end=int(tok["end"]),
                    probs=tuple(float(probs[c]) for c in _CLASSES),
                )
            )
        except (KeyError, TypeError, ValueError, InvalidInputError) as exc:
            raise SchemaError(f"token {k}: {exc}", path, lineno) from exc
    try:
        return PredictionDoc(id=doc_id, text=text, tokens=tuple(parsed))
    except InvalidInputError as exc:
        raise SchemaError(str(exc), path, lineno) from exc


def read_predictions_jsonl(fp: TextIO, path: str = "") -> list[PredictionDoc]:
    """Read and validate the prediction wire format, with line-numbered errors."""
    docs: list[PredictionDoc] = []
    for lineno, line in enumerate(fp, 1):
        line = line.strip()
        if not line:
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", path, lineno) from exc
        docs.append(_parse_doc(raw, path, lineno))
    return docs


def write_predictions_jsonl(docs: Iterable[PredictionDoc], fp: TextIO) -> None:
    for doc in docs:
        record = {
            "id": doc.id,
            "text": doc.text,
            "tokens": [
                {
                    "start": tok.start,
                    "end": tok.end,
                    "probs": dict(zip(_CLASSES, tok.probs)),
                }
                for tok in doc.tokens
            ],
        }
        fp.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
