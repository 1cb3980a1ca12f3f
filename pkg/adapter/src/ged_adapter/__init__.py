"""Model adapter: token-classification checkpoints to prediction JSONL."""

from .adapter import AdapterConfig, AdapterError, emit_predictions

__version__ = "0.1.0"

__all__ = ["AdapterConfig", "AdapterError", "emit_predictions"]
