from __future__ import annotations

import io
import json
import math
from pathlib import Path

import pytest

from ged_adapter.adapter import (
    AdapterConfig,
    AdapterError,
    emit_predictions,
    read_corpus,
    write_predictions,
)
from ged_adapter.cli import main


def records_for(corpus, **kwargs):
    config = AdapterConfig(model="dummy:uniform", **kwargs)
    return list(emit_predictions(config, corpus))


class TestConfig:
    def test_defaults(self):
        config = AdapterConfig(model="dummy:uniform")
        assert config.max_len == 384
        assert config.batch_size == 8

    @pytest.mark.parametrize("bad", [0, -5])
    def test_max_len_positive(self, bad):
        with pytest.raises(AdapterError):
            AdapterConfig(model="dummy:uniform", max_len=bad)

    def test_labels_must_permute_obim(self):
        with pytest.raises(AdapterError):
            AdapterConfig(model="dummy:uniform", labels=("O", "B", "I", "I"))


class TestDummyBackend:
    def test_uniform_probs(self):
        (record,) = records_for([("d1", "two words")])
        assert [t["probs"] for t in record["tokens"]] == [
            {"O": 0.25, "B": 0.25, "I": 0.25, "M": 0.25},
            {"O": 0.25, "B": 0.25, "I": 0.25, "M": 0.25},
        ]
        assert [(t["start"], t["end"]) for t in record["tokens"]] == [(0, 3), (4, 9)]

    def test_empty_text_empty_tokens(self):
        (record,) = records_for([("d1", "")])
        assert record["tokens"] == []

    def test_truncation_tail_is_confident_o(self):
        (record,) = records_for([("d1", "a b c d e")], max_len=2)
        probs = [t["probs"] for t in record["tokens"]]
        assert probs[0]["O"] == 0.25 and probs[1]["O"] == 0.25
        assert probs[2] == {"O": 1.0, "B": 0.0, "I": 0.0, "M": 0.0}
        assert probs[4] == {"O": 1.0, "B": 0.0, "I": 0.0, "M": 0.0}

    def test_order_preserved(self):
        records = records_for([("z", "x"), ("a", "y")])
        assert [r["id"] for r in records] == ["z", "a"]


class TestIO:
    def test_corpus_csv_and_lines(self, tmp_path: Path):
        csv_body = 'id,text\nd1,"with, comma"\nd2,plain\n'
        assert read_corpus(io.StringIO(csv_body)) == [("d1", "with, comma"), ("d2", "plain")]
        assert read_corpus(io.StringIO("one\ntwo\n")) == [("0", "one"), ("1", "two")]

    def test_write_predictions_jsonl(self):
        buf = io.StringIO()
        count = write_predictions(records_for([("d1", "hi")]), buf)
        assert count == 1
        record = json.loads(buf.getvalue())
        assert record["id"] == "d1"
        assert record["tokens"][0]["start"] == 0

    def test_cli_round_trip(self, tmp_path: Path):
        corpus = tmp_path / "corpus.csv"
        corpus.write_text("id,text\nd1,hello world\n", encoding="utf-8")
        out = tmp_path / "preds.jsonl"
        rc = main(["emit", "--model", "dummy:uniform", "--in", str(corpus), "--out", str(out)])
        assert rc == 0
        (record,) = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(record["tokens"]) == 2
        total = sum(record["tokens"][0]["probs"].values())
        assert math.isclose(total, 1.0, abs_tol=1e-5)

    def test_cli_missing_corpus_is_error(self, tmp_path: Path):
        rc = main(["emit", "--model", "dummy:uniform", "--in", str(tmp_path / "nope.csv"),
                   "--out", str(tmp_path / "o.jsonl")])
        assert rc == 2
