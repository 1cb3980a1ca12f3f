"""Grammatical-error-span detection pipeline toolkit."""

from .annotation import (
    LabeledDoc,
    doc_proxy_label,
    label_tokens,
    parse_annotated,
)
from .decode import PredictionDoc, TokenPrediction, apply_threshold, decode_spans
from .errors import (
    AnnotationParseError,
    EvaluationError,
    InvalidInputError,
    LabelingError,
    PipelineError,
    SchemaError,
)
from .evaluation import EvalReport, evaluate, levenshtein, stratified_split
from .normalize import AlignmentMap, NormRules, align, map_spans_to_original, normalize
from .rules import (
    Gazetteer,
    Lexicon,
    build_lexicon,
    detect_missing_end_punct,
    detect_space_before_punct,
    detect_spelling,
)
from .spans import (
    ErrorSpan,
    SerializationMode,
    SpanSet,
    span_intersection,
    span_union,
    to_annotated,
    to_span_list_string,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentMap",
    "AnnotationParseError",
    "ErrorSpan",
    "EvalReport",
    "EvaluationError",
    "Gazetteer",
    "InvalidInputError",
    "LabeledDoc",
    "LabelingError",
    "Lexicon",
    "NormRules",
    "PipelineError",
    "PredictionDoc",
    "SchemaError",
    "SerializationMode",
    "SpanSet",
    "TokenPrediction",
    "align",
    "apply_threshold",
    "build_lexicon",
    "decode_spans",
    "detect_missing_end_punct",
    "detect_space_before_punct",
    "detect_spelling",
    "doc_proxy_label",
    "evaluate",
    "label_tokens",
    "levenshtein",
    "map_spans_to_original",
    "normalize",
    "parse_annotated",
    "span_intersection",
    "span_union",
    "stratified_split",
    "to_annotated",
    "to_span_list_string",
]
