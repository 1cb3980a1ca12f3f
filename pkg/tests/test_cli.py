from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from gedpipe import cli
from gedpipe.decode import read_predictions_jsonl


def write(path: Path, body: str) -> Path:
    path.write_text(body, encoding="utf-8")
    return path


def read_rows(path: Path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as fp:
        return list(csv.reader(fp))


@pytest.fixture
def corpus(tmp_path: Path) -> Path:
    return write(tmp_path / "corpus.csv", "id,text\nd1,ab cd ef.\nd2,hello there\n")


@pytest.fixture
def gold(tmp_path: Path) -> Path:
    return write(tmp_path / "gold.csv", "id,text\nd1,ab $cd$ ef.\nd2,hello there$$\n")


def run(*argv: str) -> int:
    return cli.main(list(argv))


class TestCorpusIO:
    def test_csv_and_line_formats(self, tmp_path, corpus):
        assert cli.read_corpus(corpus) == [("d1", "ab cd ef."), ("d2", "hello there")]
        lines = write(tmp_path / "plain.txt", "first doc\nsecond doc\n")
        assert cli.read_corpus(lines) == [("0", "first doc"), ("1", "second doc")]

    def test_round_trip(self, tmp_path):
        records = [("a", 'tricky, "quoted"'), ("b", "plain")]
        out = tmp_path / "out.csv"
        cli.write_corpus(records, out)
        assert cli.read_corpus(out) == records


class TestStages:
    def test_normalize(self, tmp_path):
        src = write(tmp_path / "raw.csv", 'id,text\nd1,a‌b — c\n')
        out = tmp_path / "norm.csv"
        assert run("normalize", "--in", str(src), "--out", str(out)) == 0
        assert cli.read_corpus(out) == [("d1", "ab - c")]

    def test_normalize_empty_rules_disables(self, tmp_path):
        src = write(tmp_path / "raw.csv", "id,text\nd1,a—b\n")
        rules = write(tmp_path / "rules.tsv", "")
        out = tmp_path / "norm.csv"
        assert run("normalize", "--in", str(src), "--rules", str(rules), "--out", str(out)) == 0
        assert cli.read_corpus(out) == [("d1", "a—b")]

    def test_label(self, tmp_path, gold):
        out = tmp_path / "labels.jsonl"
        assert run("label", "--gold", str(gold), "--out", str(out)) == 0
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert records[0]["labels"] == ["O", "B", "O"]
        assert records[1]["labels"] == ["O", "M"]
        assert records[0]["token_offsets"] == [[0, 2], [3, 5], [6, 9]]

    def test_label_missing_anchor_before(self, tmp_path):
        gold = write(tmp_path / "g.csv", "id,text\nd1,word $$next\n")
        out = tmp_path / "labels.jsonl"
        assert run("label", "--gold", str(gold), "--missing-anchor", "before", "--out", str(out)) == 0
        (record,) = [json.loads(line) for line in out.read_text().splitlines()]
        assert record["labels"] == ["M", "O"]

    def test_decode(self, tmp_path, corpus):
        preds = tmp_path / "preds.jsonl"
        lex = write(tmp_path / "lex.txt", "cd\n")
        assert run("baseline", "--in", str(corpus), "--lexicon", str(lex), "--out", str(preds)) == 0
        out = tmp_path / "spans.csv"
        assert run("decode", "--pred", str(preds), "--threshold", "0.5", "--out", str(out)) == 0
        assert read_rows(out) == [["id", "spans"], ["d1", "[(3, 5)]"], ["d2", "[(11, 11)]"]]

    def test_ensemble_modes(self, tmp_path, corpus):
        a = write(tmp_path / "a.csv", 'id,spans\nd1,"[(0, 4)]"\nd2,[]\n')
        b = write(tmp_path / "b.csv", 'id,spans\nd1,"[(2, 6)]"\nd2,[]\n')
        union_out = tmp_path / "u.csv"
        inter_out = tmp_path / "i.csv"
        assert run("ensemble", "--mode", "union", "--in", str(a), str(b),
                   "--corpus", str(corpus), "--out", str(union_out)) == 0
        assert run("ensemble", "--mode", "intersection", "--in", str(a), str(b),
                   "--corpus", str(corpus), "--out", str(inter_out)) == 0
        assert read_rows(union_out)[1] == ["d1", "[(0, 6)]"]
        assert read_rows(inter_out)[1] == ["d1", "[(2, 4)]"]

    def test_ensemble_id_mismatch_is_data_error(self, tmp_path, corpus, capsys):
        a = write(tmp_path / "a.csv", "id,spans\nd1,[]\nd2,[]\n")
        b = write(tmp_path / "b.csv", "id,spans\nd1,[]\nd9,[]\n")
        rc = run("ensemble", "--mode", "union", "--in", str(a), str(b),
                 "--corpus", str(corpus), "--out", str(tmp_path / "x.csv"))
        assert rc == 2
        assert "do not match" in capsys.readouterr().err

    def test_rules(self, tmp_path):
        src = write(tmp_path / "c.csv", "id,text\nd1,oops . no end\n")
        out = tmp_path / "spans.csv"
        assert run("rules", "--in", str(src), "--space-fix", "--end-fix", "--out", str(out)) == 0
        assert read_rows(out)[1] == ["d1", "[(4, 6), (13, 13)]"]

    def test_spell_fix_requires_lexicon(self, tmp_path):
        src = write(tmp_path / "c.csv", "id,text\nd1,x\n")
        with pytest.raises(SystemExit) as exc:
            run("rules", "--in", str(src), "--spell-fix", "--out", str(tmp_path / "o.csv"))
        assert exc.value.code == 1

    def test_evaluate(self, tmp_path, gold, capsys):
        preds = write(tmp_path / "p.csv", 'id,spans\nd1,"[(3, 5)]"\nd2,[]\n')
        report = tmp_path / "r.csv"
        summary = tmp_path / "s.json"
        rc = run("evaluate", "--pred", str(preds), "--gold", str(gold),
                 "--out-report", str(report), "--out-summary", str(summary))
        assert rc == 0
        assert read_rows(report) == [["id", "distance"], ["d1", "0"], ["d2", "2"]]
        assert json.loads(summary.read_text()) == {
            "count": 2, "mean": 1.0, "serialization": "annotated",
        }
        assert "mean_levenshtein=1.000000" in capsys.readouterr().out

    def test_split_deterministic(self, tmp_path):
        rows = "".join(f"d{k},word{'$x$' if k % 2 else ''}\n" for k in range(20))
        gold = write(tmp_path / "g.csv", "id,text\n" + rows)
        for suffix in ("one", "two"):
            rc = run("split", "--gold", str(gold), "--ratio", "0.8", "--seed", "9",
                     "--out-train", str(tmp_path / f"train_{suffix}.csv"),
                     "--out-dev", str(tmp_path / f"dev_{suffix}.csv"))
            assert rc == 0
        assert (tmp_path / "train_one.csv").read_bytes() == (tmp_path / "train_two.csv").read_bytes()
        assert (tmp_path / "dev_one.csv").read_bytes() == (tmp_path / "dev_two.csv").read_bytes()
        assert len(read_rows(tmp_path / "train_one.csv")) == 17  # header + 8 + 8

    def test_build_lexicon(self, tmp_path):
        raw = write(tmp_path / "raw.txt", "teh\nthe\nwiki\n")
        dictionary = write(tmp_path / "dict.txt", "the\n")
        titles = write(tmp_path / "titles.txt", "wiki\n")
        out = tmp_path / "lex.txt"
        rc = run("build-lexicon", "--raw", str(raw), "--dictionary", str(dictionary),
                 "--titles", str(titles), "--out", str(out))
        assert rc == 0
        assert out.read_text() == "teh\n"

    def test_baseline_weakened_emits_all_o(self, tmp_path, corpus):
        out = tmp_path / "preds.jsonl"
        assert run("baseline", "--in", str(corpus), "--no-end-rule", "--out", str(out)) == 0
        with open(out, encoding="utf-8") as fp:
            docs = read_predictions_jsonl(fp)
        for doc in docs:
            assert all(tok.probs[0] == 1.0 for tok in doc.tokens)


class TestPipeline:
    def _preds(self, tmp_path, corpus, name="preds.jsonl", lexicon_words="cd\n"):
        lex = write(tmp_path / f"lex_{name}.txt", lexicon_words)
        preds = tmp_path / name
        assert run("baseline", "--in", str(corpus), "--lexicon", str(lex), "--out", str(preds)) == 0
        return preds

    def test_degenerate_equals_decode(self, tmp_path, corpus):
        preds = self._preds(tmp_path, corpus)
        direct = tmp_path / "direct.csv"
        piped = tmp_path / "piped.csv"
        assert run("decode", "--pred", str(preds), "--threshold", "0.5", "--out", str(direct)) == 0
        assert run("pipeline", "--pred", str(preds), "--threshold", "0.5",
                   "--out-spans", str(piped)) == 0
        assert direct.read_bytes() == piped.read_bytes()

    def test_intersection_idempotent_under_duplicates(self, tmp_path, corpus):
        preds = self._preds(tmp_path, corpus)
        single = tmp_path / "single.csv"
        double = tmp_path / "double.csv"
        assert run("pipeline", "--pred", str(preds), "--ensemble", "intersection",
                   "--out-spans", str(single)) == 0
        assert run("pipeline", "--pred", str(preds), str(preds), "--ensemble", "intersection",
                   "--out-spans", str(double)) == 0
        assert single.read_bytes() == double.read_bytes()

    def test_rerun_byte_identical(self, tmp_path, corpus, gold):
        preds = self._preds(tmp_path, corpus)
        outs = []
        for suffix in ("one", "two"):
            spans = tmp_path / f"spans_{suffix}.csv"
            summary = tmp_path / f"sum_{suffix}.json"
            assert run("pipeline", "--pred", str(preds), "--gold", str(gold),
                       "--space-fix", "--end-fix",
                       "--out-spans", str(spans), "--out-summary", str(summary)) == 0
            outs.append((spans.read_bytes(), summary.read_bytes()))
        assert outs[0] == outs[1]

    def test_reverse_normalization_path(self, tmp_path):
        # model saw normalized text (ZWNJ stripped); output offsets must index the original
        original = write(tmp_path / "orig.csv", "id,text\nd1,a‌bc xx\n")
        preds = tmp_path / "p.jsonl"
        record = {
            "id": "d1",
            "text": "abc xx",
            "tokens": [{"start": 0, "end": 3, "probs": {"O": 0.0, "B": 1.0, "I": 0.0, "M": 0.0}}],
        }
        write(preds, json.dumps(record) + "\n")
        out = tmp_path / "spans.csv"
        assert run("pipeline", "--pred", str(preds), "--corpus", str(original),
                   "--threshold", "0", "--out-spans", str(out)) == 0
        assert read_rows(out)[1] == ["d1", "[(0, 4)]"]  # span expands over the ZWNJ

    def test_gold_evaluation_and_workers(self, tmp_path, corpus, gold):
        preds = self._preds(tmp_path, corpus)
        summary = tmp_path / "sum.json"
        assert run("pipeline", "--pred", str(preds), "--gold", str(gold), "--workers", "2",
                   "--threshold", "0.5", "--end-fix", "--out-summary", str(summary)) == 0
        data = json.loads(summary.read_text())
        assert data["count"] == 2
        assert data["mean"] == 0.0  # lexicon B catches d1, end-fix catches d2

    def test_config_file(self, tmp_path, corpus, gold):
        preds = self._preds(tmp_path, corpus)
        config = write(
            tmp_path / "run.cfg",
            f"threshold=0.5\nensemble_mode=intersection\nend_fix=true\n"
            f"gold_path={gold}\nprediction_paths={preds}\n",
        )
        summary = tmp_path / "sum.json"
        assert run("pipeline", "--config", str(config), "--out-summary", str(summary)) == 0
        assert json.loads(summary.read_text())["mean"] == 0.0

    def test_empty_prediction_set_is_usage_error(self, tmp_path, capsys):
        config = write(tmp_path / "run.cfg", "threshold=0.5\n")
        assert run("pipeline", "--config", str(config)) == 1

    def test_missing_pred_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run("pipeline")
        assert exc.value.code == 1

    def test_schema_violation_is_data_error(self, tmp_path, capsys):
        bad = write(tmp_path / "bad.jsonl", '{"id": "d1"}\n')
        rc = run("pipeline", "--pred", str(bad), "--out-spans", str(tmp_path / "o.csv"))
        assert rc == 2
        assert "bad.jsonl:1" in capsys.readouterr().err

    def test_text_disagreement_is_data_error(self, tmp_path, capsys):
        rec = {"id": "d1", "text": "ab", "tokens": []}
        a = write(tmp_path / "a.jsonl", json.dumps(rec) + "\n")
        rec["text"] = "ax"
        b = write(tmp_path / "b.jsonl", json.dumps(rec) + "\n")
        rc = run("pipeline", "--pred", str(a), str(b), "--out-spans", str(tmp_path / "o.csv"))
        assert rc == 2
        assert "disagree" in capsys.readouterr().err

    def test_id_mismatch_is_data_error(self, tmp_path, corpus):
        rec = {"id": "dX", "text": "ab", "tokens": []}
        preds = write(tmp_path / "p.jsonl", json.dumps(rec) + "\n")
        rc = run("pipeline", "--pred", str(preds), "--corpus", str(corpus),
                 "--out-spans", str(tmp_path / "o.csv"))
        assert rc == 2
