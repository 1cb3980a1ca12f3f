"""Command-line pipeline: composable subcommands over the declared file formats.

Stages mirror the processing flow: normalize -> (external model) -> decode
-> ensemble -> rule fixes -> reverse-normalize -> serialize -> evaluate.
Every stage reads and writes plain files so each is testable in isolation.

Exit codes: 0 success, 1 usage error, 2 data error.

File formats:
  corpus        CSV with header ``id,text`` or one record per line
                (ids then being the 0-based line index)
  spans CSV     header ``id,spans``; spans rendered as ``[(s, e), ...]``
  predictions   JSONL wire format (see gedpipe.decode)
  labels        JSONL training format (see gedpipe.annotation)
  rules         two-column TSV (see gedpipe.normalize)
  word lists    one word per line, ``#`` comments
  config        key=value lines, ``#`` comments; flags override
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import annotation, baseline, decode, evaluation, rules as rulemod
from .errors import InvalidInputError, PipelineError, SchemaError
from .normalize import NormRules, align, default_rules, load_rules, map_spans_to_original
from .normalize import normalize as normalize_text
from .spans import (
    ErrorSpan,
    SerializationMode,
    SpanSet,
    parse_span_list_string,
    span_intersection,
    span_union,
    to_span_list_string,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    """Raised for usage problems detected after argument parsing."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; the contract reserves 2 for data errors.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# file IO helpers
# ---------------------------------------------------------------------------


def read_corpus(path: str | Path) -> list[tuple[str, str]]:
    """Read ``id,text`` CSV or line-per-record text; returns (id, text) pairs."""
    with open(path, encoding="utf-8", newline="") as fp:
        first = fp.readline()
        fp.seek(0)
        if first.rstrip("\r\n") == "id,text":
            reader = csv.reader(fp)
            header = next(reader)
            if header[:2] != ["id", "text"]:
                raise SchemaError(f"expected header id,text, got {header}", str(path), 1)
            records = []
            for lineno, row in enumerate(reader, 2):
                if not row:
                    continue
                if len(row) < 2:
                    raise SchemaError("expected two columns", str(path), lineno)
                records.append((row[0], row[1]))
            return records
        return [(str(k), line.rstrip("\n")) for k, line in enumerate(fp)]


def write_corpus(records: Iterable[tuple[str, str]], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["id", "text"])
        writer.writerows(records)


def read_spans_csv(path: str | Path) -> list[tuple[str, str]]:
    """Rows of (id, rendered span list); lengths are resolved at the use site."""
    with open(path, encoding="utf-8", newline="") as fp:
        reader = csv.reader(fp)
        header = next(reader, None)
        if header is None or header[:2] != ["id", "spans"]:
            raise SchemaError(f"expected header id,spans, got {header}", str(path), 1)
        rows = []
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) < 2:
                raise SchemaError("expected two columns", str(path), lineno)
            rows.append((row[0], row[1]))
        return rows


def write_spans_csv(records: Iterable[tuple[str, SpanSet]], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["id", "spans"])
        for doc_id, spans in records:
            writer.writerow([doc_id, to_span_list_string(spans)])


def _read_word_file(path: str | Path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fp:
        return rulemod.read_word_list(fp)


def _load_rules(path: str | Path | None) -> NormRules:
    if path is None:
        return default_rules()
    with open(path, encoding="utf-8") as fp:
        return load_rules(fp, str(path))


def _anchor_insertions(text: str, spans: SpanSet, anchor: str) -> SpanSet:
    """Shift insertion points across adjacent whitespace per --missing-anchor."""
    if anchor == "keep" or not spans.insertion_points():
        return spans
    pool = list(spans.region_spans())
    for q in spans.insertion_points():
        if anchor == "before":
            while q > 0 and text[q - 1].isspace():
                q -= 1
        else:
            while q < len(text) and text[q].isspace():
                q += 1
        pool.append(ErrorSpan(q, q))
    return SpanSet.from_spans(pool, spans.text_len)


def load_gold(path: str | Path, anchor: str = "keep") -> list[tuple[str, str, SpanSet, str]]:
    """Parse an annotated corpus into (id, clean text, spans, annotated source)."""
    docs = []
    for doc_id, annotated in read_corpus(path):
        text, spans = annotation.parse_annotated(annotated)
        spans = _anchor_insertions(text, spans, anchor)
        docs.append((doc_id, text, spans, annotated))
    return docs


# ---------------------------------------------------------------------------
# pipeline configuration
# ---------------------------------------------------------------------------

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass
class PipelineConfig:
    rules_path: str | None = None
    threshold: float = 0.8
    ensemble_mode: str = "intersection"
    serialization: str = "annotated"
    space_fix: bool = False
    end_fix: bool = False
    spell_fix: bool = False
    include_punct: bool = True
    strict_bare_i: bool = False
    missing_anchor: str = "keep"
    lexicon_path: str | None = None
    gazetteer_path: str | None = None
    seed: int = 0
    workers: int = 1
    corpus_path: str | None = None
    gold_path: str | None = None
    out_spans: str | None = None
    out_report: str | None = None
    out_summary: str | None = None
    prediction_paths: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not (0.0 <= self.threshold <= 1.0):
            raise InvalidInputError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.ensemble_mode not in ("union", "intersection"):
            raise InvalidInputError(f"unknown ensemble mode {self.ensemble_mode!r}")
        if self.serialization not in ("annotated", "spanlist"):
            raise InvalidInputError(f"unknown serialization {self.serialization!r}")


def load_config_file(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SchemaError("expected key=value", str(path), lineno)
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _config_bool(raw: str, key: str) -> bool:
    lowered = raw.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise InvalidInputError(f"config key {key}: expected a boolean, got {raw!r}")


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_normalize(args: argparse.Namespace) -> int:
    rules = _load_rules(args.rules)
    records = [(doc_id, normalize_text(text, rules)) for doc_id, text in read_corpus(args.infile)]
    write_corpus(records, args.out)
    return EXIT_OK


def _cmd_label(args: argparse.Namespace) -> int:
    docs = []
    for doc_id, text, spans, _ in load_gold(args.gold, args.missing_anchor):
        offsets = baseline.whitespace_tokens(text)
        labels = annotation.label_tokens(spans, offsets)
        docs.append(
            annotation.LabeledDoc(
                id=doc_id,
                clean_text=text,
                spans=spans,
                token_offsets=tuple(offsets),
                token_labels=tuple(labels),
                proxy_label=annotation.doc_proxy_label(len(text), spans) if text else 0,
            )
        )
    with open(args.out, "w", encoding="utf-8") as fp:
        annotation.write_labels_jsonl(docs, fp)
    return EXIT_OK


def _read_prediction_file(path: str) -> list[decode.PredictionDoc]:
    with open(path, encoding="utf-8") as fp:
        return decode.read_predictions_jsonl(fp, path)


def _cmd_decode(args: argparse.Namespace) -> int:
    docs = _read_prediction_file(args.pred)
    records = [
        (doc.id, decode.decode_spans(doc, args.threshold, strict=args.strict_bare_i))
        for doc in docs
    ]
    write_spans_csv(records, args.out)
    return EXIT_OK


def _cmd_ensemble(args: argparse.Namespace) -> int:
    texts = dict(read_corpus(args.corpus))
    combine = span_union if args.mode == "union" else span_intersection
    per_file = [read_spans_csv(path) for path in args.infiles]
    order = [doc_id for doc_id, _ in per_file[0]]
    by_id = []
    for path, rows in zip(args.infiles, per_file):
        if {doc_id for doc_id, _ in rows} != set(order):
            raise InvalidInputError(f"document ids in {path} do not match {args.infiles[0]}")
        by_id.append(dict(rows))
    records = []
    for doc_id in order:
        if doc_id not in texts:
            raise InvalidInputError(f"document {doc_id} missing from corpus")
        text_len = len(texts[doc_id])
        sets = [parse_span_list_string(rows[doc_id], text_len) for rows in by_id]
        records.append((doc_id, combine(sets)))
    write_spans_csv(records, args.out)
    return EXIT_OK


def _detector_kit(args: argparse.Namespace) -> dict:
    lexicon = rulemod.Lexicon(_read_word_file(args.lexicon)) if args.lexicon else None
    gazetteer = rulemod.Gazetteer(_read_word_file(args.gazetteer)) if args.gazetteer else None
    return {
        "space_fix": args.space_fix,
        "end_fix": args.end_fix,
        "spell_fix": args.spell_fix,
        "lexicon": lexicon,
        "gazetteer": gazetteer,
        "include_punct": args.include_punct,
    }


def _cmd_rules(args: argparse.Namespace) -> int:
    kit = _detector_kit(args)
    records = [
        (doc_id, rulemod.combined_rule_spans(text, **kit))
        for doc_id, text in read_corpus(args.infile)
    ]
    write_spans_csv(records, args.out)
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    gold = load_gold(args.gold, args.missing_anchor)
    texts = {doc_id: text for doc_id, text, _, _ in gold}
    preds = []
    for doc_id, rendered in read_spans_csv(args.pred):
        if doc_id not in texts:
            preds.append((doc_id, SpanSet.empty(0)))  # evaluation reports the miss
            continue
        preds.append((doc_id, parse_span_list_string(rendered, len(texts[doc_id]))))
    report = evaluation.evaluate(
        preds,
        [(doc_id, text, spans) for doc_id, text, spans, _ in gold],
        SerializationMode(args.mode),
    )
    _write_report(report, args.out_report, args.out_summary)
    print(f"mean_levenshtein={report.mean_distance:.6f} over {len(report.per_doc)} docs")
    return EXIT_OK


def _write_report(report, out_report: str | None, out_summary: str | None) -> None:
    if out_report:
        with open(out_report, "w", encoding="utf-8", newline="") as fp:
            evaluation.write_report_csv(report, fp)
    if out_summary:
        with open(out_summary, "w", encoding="utf-8") as fp:
            evaluation.write_report_summary(report, fp)


def _cmd_split(args: argparse.Namespace) -> int:
    gold = load_gold(args.gold, "keep")
    annotated_by_id = {doc_id: annotated for doc_id, _, _, annotated in gold}
    docs = []
    for doc_id, text, spans, _ in gold:
        offsets = baseline.whitespace_tokens(text)
        docs.append(
            annotation.LabeledDoc(
                id=doc_id,
                clean_text=text,
                spans=spans,
                token_offsets=tuple(offsets),
                token_labels=tuple(annotation.label_tokens(spans, offsets)),
                proxy_label=annotation.doc_proxy_label(len(text), spans) if text else 0,
            )
        )
    train, dev = evaluation.stratified_split(docs, args.ratio, args.seed)
    write_corpus([(d.id, annotated_by_id[d.id]) for d in train], args.out_train)
    write_corpus([(d.id, annotated_by_id[d.id]) for d in dev], args.out_dev)
    print(f"split {len(docs)} docs into train={len(train)} dev={len(dev)}")
    return EXIT_OK


def _cmd_baseline(args: argparse.Namespace) -> int:
    lexicon = rulemod.Lexicon(_read_word_file(args.lexicon)) if args.lexicon else None
    docs = [
        baseline.predict_doc(doc_id, text, lexicon, end_rule=args.end_rule)
        for doc_id, text in read_corpus(args.infile)
    ]
    with open(args.out, "w", encoding="utf-8") as fp:
        decode.write_predictions_jsonl(docs, fp)
    return EXIT_OK


def _cmd_build_lexicon(args: argparse.Namespace) -> int:
    lexicon = rulemod.build_lexicon(
        _read_word_file(args.raw),
        _read_word_file(args.dictionary) if args.dictionary else (),
        _read_word_file(args.titles) if args.titles else (),
    )
    with open(args.out, "w", encoding="utf-8") as fp:
        rulemod.write_word_list(lexicon.words, fp)
    print(f"kept {len(lexicon)} of {len(_read_word_file(args.raw))} candidates")
    return EXIT_OK


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


def _build_pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    config = PipelineConfig()
    if args.config:
        raw = load_config_file(args.config)
        for key, value in raw.items():
            if not hasattr(config, key):
                raise InvalidInputError(f"unknown config key {key!r}")
            current = getattr(config, key)
            if isinstance(current, bool):
                setattr(config, key, _config_bool(value, key))
            elif isinstance(current, int):
                setattr(config, key, int(value))
            elif isinstance(current, float):
                setattr(config, key, float(value))
            elif key == "prediction_paths":
                setattr(config, key, [p for p in value.split(",") if p])
            else:
                setattr(config, key, value)
    overrides = {
        "threshold": args.threshold,
        "ensemble_mode": args.ensemble,
        "serialization": args.mode,
        "space_fix": args.space_fix or None,
        "end_fix": args.end_fix or None,
        "spell_fix": args.spell_fix or None,
        "include_punct": None if args.include_punct else False,
        "strict_bare_i": args.strict_bare_i or None,
        "missing_anchor": args.missing_anchor,
        "lexicon_path": args.lexicon,
        "gazetteer_path": args.gazetteer,
        "workers": args.workers,
        "corpus_path": args.corpus,
        "gold_path": args.gold,
        "out_spans": args.out_spans,
        "out_report": args.out_report,
        "out_summary": args.out_summary,
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    if args.pred:
        config.prediction_paths = list(args.pred)
    config.__post_init__()
    return config


def run_pipeline(config: PipelineConfig) -> evaluation.EvalReport | None:
    """Decode, ensemble, rule-fix, reverse-map, serialize, and evaluate.

    Returns the evaluation report when gold was supplied, else None.
    Output is a deterministic function of (config, inputs).
    """
    if not config.prediction_paths:
        raise _UsageError("at least one prediction file is required")
    prediction_files = [_read_prediction_file(p) for p in config.prediction_paths]
    base = {doc.id: doc for doc in prediction_files[0]}
    order = [doc.id for doc in prediction_files[0]]
    if len(base) != len(order):
        raise InvalidInputError(f"duplicate document ids in {config.prediction_paths[0]}")
    per_id: dict[str, list[decode.PredictionDoc]] = {doc_id: [base[doc_id]] for doc_id in order}
    for path, docs in zip(config.prediction_paths[1:], prediction_files[1:]):
        if {d.id for d in docs} != set(order):
            raise InvalidInputError(
                f"document ids in {path} do not match {config.prediction_paths[0]}"
            )
        for doc in docs:
            if doc.text != base[doc.id].text:
                raise InvalidInputError(
                    f"doc {doc.id}: prediction files disagree on the normalized text"
                )
            per_id[doc.id].append(doc)

    gold_docs = load_gold(config.gold_path, config.missing_anchor) if config.gold_path else None
    originals: dict[str, str]
    if config.corpus_path:
        corpus = read_corpus(config.corpus_path)
        originals = dict(corpus)
        order = [doc_id for doc_id, _ in corpus]
    elif gold_docs is not None:
        originals = {doc_id: text for doc_id, text, _, _ in gold_docs}
        order = [doc_id for doc_id, _, _, _ in gold_docs]
    else:
        originals = {doc_id: base[doc_id].text for doc_id in order}
    missing = [doc_id for doc_id in order if doc_id not in per_id]
    if missing or len(order) != len(per_id):
        raise InvalidInputError(
            f"document ids disagree between corpus/gold and predictions "
            f"(first offenders: {missing[:5] or sorted(set(per_id) - set(order))[:5]})"
        )
    if gold_docs is not None and config.corpus_path:
        for doc_id, text, _, _ in gold_docs:
            if doc_id in originals and originals[doc_id] != text:
                raise InvalidInputError(
                    f"doc {doc_id}: gold text differs from corpus text"
                )

    lexicon = (
        rulemod.Lexicon(_read_word_file(config.lexicon_path)) if config.lexicon_path else None
    )
    gazetteer = (
        rulemod.Gazetteer(_read_word_file(config.gazetteer_path))
        if config.gazetteer_path
        else None
    )
    combine = span_union if config.ensemble_mode == "union" else span_intersection

    def process(doc_id: str) -> tuple[str, SpanSet]:
        original = originals[doc_id]
        docs = per_id[doc_id]
        decoded = [
            decode.decode_spans(d, config.threshold, strict=config.strict_bare_i) for d in docs
        ]
        model_spans = combine(decoded)
        if docs[0].text == original:
            mapped = model_spans
        else:
            amap = align(original, docs[0].text)
            mapped = map_spans_to_original(model_spans, amap)
        rule_spans = rulemod.combined_rule_spans(
            original,
            space_fix=config.space_fix,
            end_fix=config.end_fix,
            spell_fix=config.spell_fix,
            lexicon=lexicon,
            gazetteer=gazetteer,
            include_punct=config.include_punct,
        )
        return doc_id, span_union([mapped, rule_spans])

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(process, order))
    else:
        results = [process(doc_id) for doc_id in order]

    if config.out_spans:
        write_spans_csv(results, config.out_spans)
    if gold_docs is None:
        return None
    report = evaluation.evaluate(
        results,
        [(doc_id, text, spans) for doc_id, text, spans, _ in gold_docs],
        SerializationMode(config.serialization),
    )
    _write_report(report, config.out_report, config.out_summary)
    return report


def _cmd_pipeline(args: argparse.Namespace) -> int:
    config = _build_pipeline_config(args)
    report = run_pipeline(config)
    if report is not None:
        print(f"mean_levenshtein={report.mean_distance:.6f} over {len(report.per_doc)} docs")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_detector_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space-fix", action="store_true", help="flag whitespace before . , ? !")
    p.add_argument("--end-fix", action="store_true", help="flag missing terminal punctuation")
    p.add_argument("--spell-fix", action="store_true", help="flag lexicon misspellings")
    p.add_argument("--lexicon", help="misspelling word list (required for --spell-fix)")
    p.add_argument("--gazetteer", help="named-entity word list excluded from spell flags")
    p.add_argument(
        "--exclude-punct",
        dest="include_punct",
        action="store_false",
        help="do not include the punctuation character in space-fix spans",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gedpipe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="apply a rewrite rule table to a corpus")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--rules", help="rule TSV; defaults to the bundled table")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("label", help="emit token labels from an annotated corpus")
    p.add_argument("--gold", required=True, help="annotated corpus ($ markers)")
    p.add_argument("--missing-anchor", choices=["keep", "before", "after"], default="keep")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_label)

    p = sub.add_parser("decode", help="prediction JSONL -> spans CSV")
    p.add_argument("--pred", required=True)
    p.add_argument("--threshold", type=float, default=0.8)
    p.add_argument("--strict-bare-i", action="store_true", help="drop I runs with no B")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("ensemble", help="combine spans CSVs by union or intersection")
    p.add_argument("--mode", choices=["union", "intersection"], required=True)
    p.add_argument("--in", dest="infiles", nargs="+", required=True)
    p.add_argument("--corpus", required=True, help="texts the spans index into")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ensemble)

    p = sub.add_parser("rules", help="run deterministic detectors over a corpus")
    p.add_argument("--in", dest="infile", required=True)
    _add_detector_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_rules)

    p = sub.add_parser("evaluate", help="Levenshtein evaluation of spans CSV vs gold")
    p.add_argument("--pred", required=True, help="spans CSV")
    p.add_argument("--gold", required=True, help="annotated corpus")
    p.add_argument("--mode", choices=["annotated", "spanlist"], default="annotated")
    p.add_argument("--missing-anchor", choices=["keep", "before", "after"], default="keep")
    p.add_argument("--out-report", help="per-document distance CSV")
    p.add_argument("--out-summary", help="JSON summary")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("split", help="stratified train/dev split of an annotated corpus")
    p.add_argument("--gold", required=True)
    p.add_argument("--ratio", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-train", required=True)
    p.add_argument("--out-dev", required=True)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("baseline", help="toy lexicon/punctuation predictor -> JSONL")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--no-end-rule", dest="end_rule", action="store_false")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("build-lexicon", help="filter raw misspellings against word lists")
    p.add_argument("--raw", required=True)
    p.add_argument("--dictionary")
    p.add_argument("--titles")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build_lexicon)

    p = sub.add_parser("pipeline", help="decode + ensemble + fixes + reverse-map + evaluate")
    p.add_argument("--pred", nargs="+", help="prediction JSONL files")
    p.add_argument("--corpus", help="original (unnormalized) texts")
    p.add_argument("--gold", help="annotated corpus for evaluation")
    p.add_argument("--config", help="key=value config file; flags override")
    p.add_argument("--threshold", type=float)
    p.add_argument("--ensemble", choices=["union", "intersection"])
    p.add_argument("--mode", choices=["annotated", "spanlist"])
    p.add_argument("--missing-anchor", choices=["keep", "before", "after"])
    p.add_argument("--strict-bare-i", action="store_true")
    p.add_argument("--workers", type=int)
    _add_detector_flags(p)
    p.add_argument("--out-spans")
    p.add_argument("--out-report")
    p.add_argument("--out-summary")
    p.set_defaults(func=_cmd_pipeline)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "pipeline" and not args.pred and not args.config:
        parser.error("pipeline requires --pred or a --config listing prediction_paths")
    if getattr(args, "spell_fix", False) and not getattr(args, "lexicon", None) and not getattr(args, "config", None):
        parser.error("--spell-fix requires --lexicon")
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"gedpipe: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"gedpipe: {exc}", file=sys.stderr)
        return EXIT_DATA
    except PipelineError as exc:
        print(f"gedpipe: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
