"""Deterministic error detectors and the misspelling lexicon.

Three detectors: whitespace before closing punctuation, missing terminal
punctuation, and lexicon-based spelling errors with named-entity exclusion.
All are pure functions emitting valid span sets over the input text.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

from .errors import InvalidInputError
from .spans import ErrorSpan, SpanSet

__all__ = [
    "Lexicon",
    "Gazetteer",
    "TERMINAL_PUNCT",
    "detect_space_before_punct",
    "detect_missing_end_punct",
    "detect_spelling",
    "build_lexicon",
    "read_word_list",
    "write_word_list",
]

# Punctuation that legally terminates a sentence; includes the Bangla danda.
TERMINAL_PUNCT = frozenset({".", "!", "?", "।"})

_SPACE_BEFORE_PUNCT = re.compile(r"\s+[.,?!]")


@dataclass(frozen=True)
class Lexicon:
    """Known misspellings, case-sensitive exact match."""

    words: frozenset[str]

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Gazetteer:
    """Named-entity word list; members are never flagged as misspellings."""

    words: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


def detect_space_before_punct(text: str, include_punct: bool = True) -> SpanSet:
    """Flag whitespace runs immediately preceding . , ? or !

    The emitted span covers the whitespace run plus the punctuation
    character unless ``include_punct`` is false.
    """
    pool = [
        ErrorSpan(m.start(), m.end() if include_punct else m.end() - 1)
        for m in _SPACE_BEFORE_PUNCT.finditer(text)
    ]
    return SpanSet.from_spans(pool, len(text))


def detect_missing_end_punct(text: str) -> SpanSet:
    """Insertion point at text end when the last non-space char is not terminal punctuation."""
    stripped = text.rstrip()
    if not stripped or stripped[-1] in TERMINAL_PUNCT:
        return SpanSet.empty(len(text))
    return SpanSet((ErrorSpan(len(text), len(text)),), len(text))


def _is_word_char(ch: str) -> bool:
    return not ch.isspace() and not unicodedata.category(ch).startswith("P")


def iter_words(text: str) -> Iterator[tuple[int, int, str]]:
    """Maximal runs of non-whitespace, non-punctuation codepoints."""
    start: int | None = None
    for i, ch in enumerate(text):
        if _is_word_char(ch):
            if start is None:
                start = i
        elif start is not None:
            yield start, i, text[start:i]
            start = None
    if start is not None:
        yield start, len(text), text[start:]


def detect_spelling(text: str, lexicon: Lexicon, gazetteer: Gazetteer | None = None) -> SpanSet:
    """Flag words that are known misspellings and not named entities."""
    gaz = gazetteer if gazetteer is not None else Gazetteer()
    pool = [
        ErrorSpan(start, end)
        for start, end, word in iter_words(text)
        if word in lexicon and word not in gaz
    ]
    return SpanSet.from_spans(pool, len(text))


def build_lexicon(
    raw_errors: Iterable[str],
    dictionary: Iterable[str] = (),
    title_words: Iterable[str] = (),
) -> Lexicon:
    """Filter raw misspelling candidates against real words.

    Candidates that are valid dictionary words or appear among page-title
    words are removed; the result is disjoint from both filter sets.
    """
    words = frozenset(raw_errors) - frozenset(dictionary) - frozenset(title_words)
    return Lexicon(words)


def read_word_list(fp: TextIO) -> frozenset[str]:
    """One word per line, UTF-8; ``#`` comment lines and blanks skipped."""
    words: set[str] = set()
    for line in fp:
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word)
    return frozenset(words)


def write_word_list(words: Iterable[str], fp: TextIO) -> None:
    for word in sorted(words):
        fp.write(word + "\n")


def combined_rule_spans(
    text: str,
    space_fix: bool = False,
    end_fix: bool = False,
    spell_fix: bool = False,
    lexicon: Lexicon | None = None,
    gazetteer: Gazetteer | None = None,
    include_punct: bool = True,
) -> SpanSet:
    """Union of the enabled detectors' output for one text."""
    pool: list[ErrorSpan] = []
    if space_fix:
        pool.extend(detect_space_before_punct(text, include_punct).spans)
    if end_fix:
        pool.extend(detect_missing_end_punct(text).spans)
    if spell_fix:
        if lexicon is None:
            raise InvalidInputError("spelling detection requires a lexicon")
        pool.extend(detect_spelling(text, lexicon, gazetteer).spans)
    return SpanSet.from_spans(pool, len(text))
