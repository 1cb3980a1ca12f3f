"""Toy baseline predictor: end-to-end pipeline runs with no external model.

Tokenizes on whitespace and emits confidence-1.0 predictions: B for words
found in the lexicon, M on the last token when terminal punctuation is
missing, O otherwise. Useful for wiring tests and as the weakened
reference system in ablations (disable the end rule and pass no lexicon
to get an all-O predictor).
"""

from __future__ import annotations

from .decode import PredictionDoc, TokenPrediction
from .rules import TERMINAL_PUNCT, Lexicon

__all__ = ["whitespace_tokens", "predict_doc"]

_ONE = {
    "O": (1.0, 0.0, 0.0, 0.0),
    "B": (0.0, 1.0, 0.0, 0.0),
    "I": (0.0, 0.0, 1.0, 0.0),
    "M": (0.0, 0.0, 0.0, 1.0),
}


def whitespace_tokens(text: str) -> list[tuple[int, int]]:
    """Offsets of maximal non-whitespace runs."""
    tokens: list[tuple[int, int]] = []
    start: int | None = None
    for i, ch in enumerate(text):
        if ch.isspace():
            if start is not None:
                tokens.append((start, i))
                start = None
        elif start is None:
            start = i
    if start is not None:
        tokens.append((start, len(text)))
    return tokens


def predict_doc(
    doc_id: str,
    text: str,
    lexicon: Lexicon | None = None,
    end_rule: bool = True,
) -> PredictionDoc:
    offsets = whitespace_tokens(text)
    stripped = text.rstrip()
    wants_m = end_rule and bool(stripped) and stripped[-1] not in TERMINAL_PUNCT
    tokens: list[TokenPrediction] = []
    for k, (start, end) in enumerate(offsets):
        label = "O"
        if lexicon is not None and text[start:end] in lexicon:
            label = "B"
        elif wants_m and k == len(offsets) - 1:
            label = "M"
        tokens.append(TokenPrediction(start, end, _ONE[label]))
    return PredictionDoc(id=doc_id, text=text, tokens=tuple(tokens))
