"""HuggingFace backend against a tiny locally-constructed checkpoint.

Builds a miniature BERT token classifier on the fly (no network), saves it
to disk, and runs the adapter over it end to end.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

transformers = pytest.importorskip("transformers")

from ged_adapter.cli import main  # noqa: E402

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "cat", "sat", "on", "mat", "##s", "a", "b", "c",
]


@pytest.fixture(scope="module")
def checkpoint(tmp_path_factory) -> Path:
    import torch  # noqa: F401  (transformers needs it loaded)
    from transformers import BertConfig, BertForTokenClassification, BertTokenizerFast

    root = tmp_path_factory.mktemp("tiny-bert")
    vocab_file = root / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    tokenizer = BertTokenizerFast(vocab_file=str(vocab_file), do_lower_case=True)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=48,
        num_labels=4,
    )
    model = BertForTokenClassification(config)
    target = root / "checkpoint"
    model.save_pretrained(target)
    tokenizer.save_pretrained(target)
    return target


def _emit(checkpoint: Path, tmp_path: Path, text_rows: list[str], max_len: int = 32) -> list[dict]:
    corpus = tmp_path / "corpus.csv"
    corpus.write_text("id,text\n" + "".join(f"d{k},{t}\n" for k, t in enumerate(text_rows)),
                      encoding="utf-8")
    out = tmp_path / "preds.jsonl"
    rc = main(["emit", "--model", str(checkpoint), "--in", str(corpus), "--out", str(out),
               "--max-len", str(max_len), "--batch-size", "2"])
    assert rc == 0
    return [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]


def test_real_checkpoint_emits_valid_records(checkpoint, tmp_path):
    records = _emit(checkpoint, tmp_path, ["the cat sat", "the cats on a mat", ""])
    assert [r["id"] for r in records] == ["d0", "d1", "d2"]
    assert records[2]["tokens"] == []
    for record in records:
        prev_end = 0
        for tok in record["tokens"]:
            assert 0 <= tok["start"] < tok["end"] <= len(record["text"])
            assert tok["start"] >= prev_end
            prev_end = tok["end"]
            assert math.isclose(sum(tok["probs"].values()), 1.0, abs_tol=1e-5)
    # subword offsets must slice real text, specials dropped
    first = records[0]["tokens"][0]
    assert records[0]["text"][first["start"]:first["end"]].strip()


def test_truncated_tail_labeled_o(checkpoint, tmp_path):
    long_text = " ".join(["cat"] * 30)
    (record,) = _emit(checkpoint, tmp_path, [long_text], max_len=8)
    tokens = record["tokens"]
    assert len(tokens) == 30
    head = tokens[0]["probs"]
    assert head != {"O": 1.0, "B": 0.0, "I": 0.0, "M": 0.0}
    assert tokens[-1]["probs"] == {"O": 1.0, "B": 0.0, "I": 0.0, "M": 0.0}


def test_label_remap_reorders_probs(checkpoint, tmp_path):
    corpus = tmp_path / "corpus.csv"
    corpus.write_text("id,text\nd0,the cat\n", encoding="utf-8")
    out_default = tmp_path / "default.jsonl"
    out_remap = tmp_path / "remap.jsonl"
    for out, labels in ((out_default, "O,B,I,M"), (out_remap, "M,I,B,O")):
        rc = main(["emit", "--model", str(checkpoint), "--in", str(corpus), "--out", str(out),
                   "--labels", labels])
        assert rc == 0
    default = json.loads(out_default.read_text().splitlines()[0])
    remap = json.loads(out_remap.read_text().splitlines()[0])
    probs_default = default["tokens"][0]["probs"]
    probs_remap = remap["tokens"][0]["probs"]
    assert math.isclose(probs_default["O"], probs_remap["M"], abs_tol=1e-6)
    assert math.isclose(probs_default["B"], probs_remap["I"], abs_tol=1e-6)
