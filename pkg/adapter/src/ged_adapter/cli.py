"""Adapter CLI: ``ged-adapter emit --model <id> --in corpus.csv --out preds.jsonl``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .adapter import CLASSES, AdapterConfig, AdapterError, emit_predictions, read_corpus, write_predictions


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ged-adapter")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("emit", help="run a checkpoint over a corpus, write prediction JSONL")
    p.add_argument("--model", required=True,
                   help="checkpoint path/identifier, or dummy:uniform")
    p.add_argument("--in", dest="infile", required=True, help="corpus CSV (id,text)")
    p.add_argument("--out", required=True, help="output prediction JSONL")
    p.add_argument("--max-len", type=int, default=384)
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--device", default="cpu")
    p.add_argument("--labels", default=",".join(CLASSES),
                   help="comma-separated class order of the checkpoint's logits")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = AdapterConfig(
            model=args.model,
            batch_size=args.batch_size,
            max_len=args.max_len,
            device=args.device,
            labels=tuple(args.labels.split(",")),
        )
        with open(args.infile, encoding="utf-8", newline="") as fp:
            corpus = read_corpus(fp)
        with open(args.out, "w", encoding="utf-8") as fp:
            count = write_predictions(emit_predictions(config, corpus), fp)
    except FileNotFoundError as exc:
        print(f"ged-adapter: {exc}", file=sys.stderr)
        return 2
    except AdapterError as exc:
        print(f"ged-adapter: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {count} records to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
