from __future__ import annotations

import random

from hypothesis import strategies as st

from gedpipe.spans import ErrorSpan, SpanSet

# Text that never collides with the annotation delimiter.
plain_text = st.text(
    alphabet=st.characters(blacklist_characters="$", blacklist_categories=("Cs",)),
    max_size=40,
)


@st.composite
def span_sets(draw, text_len: int | None = None, max_len: int = 40) -> SpanSet:
    n = draw(st.integers(0, max_len)) if text_len is None else text_len
    count = draw(st.integers(0, 6))
    pool = []
    for _ in range(count):
        start = draw(st.integers(0, n))
        end = draw(st.integers(start, n))
        pool.append(ErrorSpan(start, end))
    return SpanSet.from_spans(pool, n)


@st.composite
def text_with_spans(draw) -> tuple[str, SpanSet]:
    text = draw(plain_text)
    return text, draw(span_sets(text_len=len(text)))


def random_span_set(rng: random.Random, text_len: int, max_spans: int = 6) -> SpanSet:
    pool = []
    for _ in range(rng.randint(0, max_spans)):
        start = rng.randint(0, text_len)
        end = rng.randint(start, text_len)
        pool.append(ErrorSpan(start, end))
    return SpanSet.from_spans(pool, text_len)
