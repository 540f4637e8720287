"""Adapter layer: runs fill-mask inference and dependency parsing to
produce the files the kgprobe pipeline consumes.

This package talks to kgprobe only through its file formats (cloze JSONL
in, predictions JSONL and CoNLL-U out); it never imports kgprobe. The
main suite over there ships with committed fixtures, so nothing in the
primary package depends on this adapter, a network, or model weights.
"""

__version__ = "0.1.0"

from .jobs import AdapterJob
from .predict import predict_masks
from .parsing import parse_sentences

__all__ = ["AdapterJob", "predict_masks", "parse_sentences"]
