"""Emit per-token class probabilities in the prediction JSONL wire format.

One JSON object per document:

    {"id": str, "text": str,
     "tokens": [{"start": int, "end": int,
                 "probs": {"O": f, "B": f, "I": f, "M": f}}]}

Offsets count Unicode scalar values into ``text``; tokens are sorted and
non-overlapping; probabilities are softmaxed logits summing to 1.

Two backends: the built-in ``dummy:uniform`` model (whitespace tokens,
equal logits; no heavy dependencies) and any HuggingFace token
classification checkpoint with a fast tokenizer (``pip install
ged-model-adapter[hf]``). Tokens beyond the maximum sequence length are
still emitted, labeled O with probability 1, so downstream decoding keeps
preferring the original text over dropped predictions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

CLASSES = ("O", "B", "I", "M")
UNIFORM = {"O": 0.25, "B": 0.25, "I": 0.25, "M": 0.25}
TAIL_O = {"O": 1.0, "B": 0.0, "I": 0.0, "M": 0.0}

DUMMY_UNIFORM = "dummy:uniform"


class AdapterError(Exception):
    """Fatal configuration or model-contract problem."""


@dataclass
class AdapterConfig:
    model: str
    batch_size: int = 8
    max_len: int = 384
    device: str = "cpu"
    # order of the checkpoint's output logits; override when a checkpoint
    # was trained with a different label layout
    labels: tuple[str, str, str, str] = CLASSES

    def __post_init__(self) -> None:
        if self.max_len <= 0:
            raise AdapterError(f"max sequence length must be positive, got {self.max_len}")
        if self.batch_size <= 0:
            raise AdapterError(f"batch size must be positive, got {self.batch_size}")
        if sorted(self.labels) != sorted(CLASSES):
            raise AdapterError(
                f"labels must be a permutation of {CLASSES}, got {self.labels}"
            )


def emit_predictions(
    config: AdapterConfig, corpus: Iterable[tuple[str, str]]
) -> Iterator[dict]:
    """Yield one wire-format record per (id, text) document, in input order."""
    if config.model == DUMMY_UNIFORM:
        backend = _dummy_records(config, corpus)
    else:
        backend = _hf_records(config, corpus)
    for record in backend:
        _validate_record(record)
        yield record


def write_predictions(records: Iterable[dict], fp: TextIO) -> int:
    count = 0
    for record in records:
        fp.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        count += 1
    return count


def _token_entry(start: int, end: int, probs: dict) -> dict:
    return {"start": start, "end": end, "probs": probs}


def _validate_record(record: dict) -> None:
    # mirrors the consumer-side schema so bad records never leave the adapter
    prev_start = -1
    prev_end = 0
    text_len = len(record["text"])
    for tok in record["tokens"]:
        if not (0 <= tok["start"] < tok["end"] <= text_len):
            raise AdapterError(
                f"doc {record['id']}: token offsets ({tok['start']}, {tok['end']}) out of range"
            )
        if tok["start"] <= prev_start or tok["start"] < prev_end:
            raise AdapterError(f"doc {record['id']}: token offsets unsorted or overlapping")
        total = sum(tok["probs"][c] for c in CLASSES)
        if abs(total - 1.0) > 1e-5:
            raise AdapterError(f"doc {record['id']}: probabilities sum to {total}")
        prev_start, prev_end = tok["start"], tok["end"]


# ---------------------------------------------------------------------------
# dummy backend
# ---------------------------------------------------------------------------


def _whitespace_offsets(text: str) -> list[tuple[int, int]]:
    offsets = []
    start = None
    for i, ch in enumerate(text):
        if ch.isspace():
            if start is not None:
                offsets.append((start, i))
                start = None
        elif start is None:
            start = i
    if start is not None:
        offsets.append((start, len(text)))
    return offsets


def _dummy_records(
    config: AdapterConfig, corpus: Iterable[tuple[str, str]]
) -> Iterator[dict]:
    for doc_id, text in corpus:
        offsets = _whitespace_offsets(text)
        tokens = [
            _token_entry(s, e, dict(UNIFORM) if k < config.max_len else dict(TAIL_O))
            for k, (s, e) in enumerate(offsets)
        ]
        yield {"id": doc_id, "text": text, "tokens": tokens}


# ---------------------------------------------------------------------------
# HuggingFace backend
# ---------------------------------------------------------------------------


def _hf_records(config: AdapterConfig, corpus: Iterable[tuple[str, str]]) -> Iterator[dict]:
    try:
        import torch
        from transformers import AutoModelForTokenClassification, AutoTokenizer
    except ImportError as exc:  # pragma: no cover - exercised only without extras
        raise AdapterError(
            f"model {config.model!r} needs the [hf] extra (transformers + torch): {exc}"
        ) from exc

    tokenizer = AutoTokenizer.from_pretrained(config.model)
    if not getattr(tokenizer, "is_fast", False):
        raise AdapterError(
            f"tokenizer for {config.model!r} does not expose character offsets; "
            "a fast tokenizer is required"
        )
    model = AutoModelForTokenClassification.from_pretrained(config.model)
    if model.config.num_labels != 4:
        raise AdapterError(
            f"model {config.model!r} emits {model.config.num_labels} logits per token; "
            "exactly four (O, B, I, M) are required, or supply a label remap"
        )
    model.to(config.device)
    model.eval()
    position = [config.labels.index(c) for c in CLASSES]

    docs = list(corpus)
    for lo in range(0, len(docs), config.batch_size):
        batch = docs[lo : lo + config.batch_size]
        texts = [text for _, text in batch]
        # offsets come from an untruncated pass; the model consumes the
        # truncated window and the remainder becomes the O-labeled tail
        full = tokenizer(texts, return_offsets_mapping=True, return_special_tokens_mask=True)
        window = tokenizer(
            texts,
            truncation=True,
            max_length=config.max_len,
            padding=True,
            return_special_tokens_mask=True,
            return_tensors="pt",
        )
        special_mask = window.pop("special_tokens_mask")
        attention = window["attention_mask"]
        inputs = {k: v.to(config.device) for k, v in window.items()}
        with torch.no_grad():
            logits = model(**inputs).logits
        probs = torch.softmax(logits, dim=-1).cpu()

        for row, (doc_id, text) in enumerate(batch):
            in_window = int(
                ((attention[row] == 1) & (special_mask[row] == 0)).sum().item()
            )
            window_probs = probs[row][(attention[row] == 1) & (special_mask[row] == 0)]
            tokens = []
            emitted = 0
            for k, (offset, special) in enumerate(
                zip(full["offset_mapping"][row], full["special_tokens_mask"][row])
            ):
                if special:
                    continue
                start, end = offset
                if start >= end:
                    emitted += 1  # zero-width artifact still consumes a window slot
                    continue
                if emitted < in_window:
                    vec = window_probs[emitted].tolist()
                    prob_map = {c: float(vec[position[i]]) for i, c in enumerate(CLASSES)}
                else:
                    prob_map = dict(TAIL_O)
                tokens.append(_token_entry(int(start), int(end), prob_map))
                emitted += 1
            yield {"id": doc_id, "text": text, "tokens": tokens}


def read_corpus(fp: TextIO) -> list[tuple[str, str]]:
    """``id,text`` CSV (with header) or one text per line with index ids."""
    import csv

    first = fp.readline()
    fp.seek(0)
    if first.rstrip("\r\n") == "id,text":
        reader = csv.reader(fp)
        next(reader)
        return [(row[0], row[1]) for row in reader if row]
    return [(str(k), line.rstrip("\n")) for k, line in enumerate(fp)]
