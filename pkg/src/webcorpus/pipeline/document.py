"""Per-document annotation and the keep/drop decision."""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

from ..content_class import Blocklists, classify_url
from ..filters import FilterConfig, annotate, decide_keep, ignorable_warnings, retained_warnings
from ..labels import LabelId
from ..lid.model import LidModel
from ..pii import scrub
from ..scripts import ScriptRegistry, script_consistency
from ..tlsh import compute_digest
from .records import RawDocument, format_timestamp

DEFAULT_THRESHOLD = 0.5

# rejection causes, in the order they are checked
EMPTY = "empty"
UND = "und"
ZXX = "zxx"
LOW_CONFIDENCE = "low_confidence"
WARNINGS = "warnings"
REJECTION_CAUSES = (EMPTY, UND, ZXX, LOW_CONFIDENCE, WARNINGS)

OUTPUT_KEYS = (
    "url",
    "timestamp",
    "content",
    "lid_label",
    "lid_prob",
    "lid_consistency",
    "script_consistency",
    "quality_warnings",
    "categories",
    "tlsh",
    "nb_sentences",
    "content_length",
)


@dataclass(frozen=True)
class AnnotatedDocument:
    url: str
    fetch_timestamp: datetime
    lines: tuple[str, ...]
    lid_label: LabelId
    lid_prob: float
    lid_consistency: float
    script_consistency: float
    warnings: tuple[str, ...]
    content_classes: tuple[str, ...]
    digest: Optional[str]

    @property
    def n_sentences(self) -> int:
        return len(self.lines)

    @property
    def content_length(self) -> int:
        return sum(len(line) for line in self.lines)

    @property
    def n_words(self) -> int:
        return sum(len(line.split()) for line in self.lines)

    def to_json(self) -> dict:
        return {
            "url": self.url,
            "timestamp": format_timestamp(self.fetch_timestamp),
            "content": "\n".join(self.lines),
            "lid_label": str(self.lid_label),
            "lid_prob": round(self.lid_prob, 6),
            "lid_consistency": round(self.lid_consistency, 6),
            "script_consistency": round(self.script_consistency, 6),
            "quality_warnings": list(self.warnings),
            "categories": list(self.content_classes),
            "tlsh": self.digest,
            "nb_sentences": self.n_sentences,
            "content_length": self.content_length,
        }

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=False)


@dataclass(frozen=True)
class Rejection:
    cause: str
    warnings: tuple[str, ...] = ()
    label: Optional[LabelId] = None


@dataclass
class Timings:
    """Wall-clock seconds spent in document- and line-level LID."""

    doc_calls: int = 0
    doc_seconds: float = 0.0
    line_calls: int = 0
    line_seconds: float = 0.0

    def __iadd__(self, other: "Timings") -> "Timings":
        self.doc_calls += other.doc_calls
        self.doc_seconds += other.doc_seconds
        self.line_calls += other.line_calls
        self.line_seconds += other.line_seconds
        return self


@dataclass(frozen=True)
class PipelineConfig:
    filters: FilterConfig = field(default_factory=FilterConfig)
    blocklists: Optional[Blocklists] = None
    registry: Optional[ScriptRegistry] = None
    threshold: float = DEFAULT_THRESHOLD
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")


def document_seed(seed: int, url: str) -> int:
    """Per-document PII seed; independent of processing order and worker count."""
    digest = hashlib.blake2b(f"{seed}\x00{url}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def process_document(
    raw: RawDocument,
    model: LidModel,
    cfg: PipelineConfig | None = None,
    timings: Timings | None = None,
):
    """Return an :class:`AnnotatedDocument` for a kept document, else a :class:`Rejection`.

    Warnings are computed on the text as crawled; PII scrubbing and hashing
    only happen after the document is kept.
    """
    cfg = cfg or PipelineConfig()
    timings = timings if timings is not None else Timings()
    lines = tuple(raw.lines)
    if not lines:
        return Rejection(EMPTY)
    text = "\n".join(lines)

    t0 = time.perf_counter()
    top = model.predict(text, 1)
    timings.doc_seconds += time.perf_counter() - t0
    timings.doc_calls += 1
    if not top:
        return Rejection(EMPTY)
    label, prob = top[0].label, top[0].probability
    if label.is_und:
        return Rejection(UND, label=label)
    if label.is_zxx:
        return Rejection(ZXX, label=label)
    if prob < cfg.threshold:
        return Rejection(LOW_CONFIDENCE, label=label)

    line_labels: list[Optional[LabelId]] = []
    t0 = time.perf_counter()
    for line in lines:
        pred = model.predict(line, 1)
        line_labels.append(pred[0].label if pred and pred[0].probability >= cfg.threshold else None)
    timings.line_seconds += time.perf_counter() - t0
    timings.line_calls += len(lines)

    incompat = script_consistency(text, label, cfg.registry)
    warnings = annotate(lines, label, line_labels, incompat, cfg.filters)
    if not decide_keep(warnings, label, cfg.filters):
        ignorable = ignorable_warnings(label, cfg.filters)
        return Rejection(WARNINGS, tuple(sorted(w.value for w in warnings if w not in ignorable)), label)

    scrubbed, _ = scrub(text, document_seed(cfg.seed, raw.url))
    out_lines = tuple(scrubbed.split("\n"))
    classes = classify_url(raw.url, cfg.blocklists) if cfg.blocklists is not None else set()
    return AnnotatedDocument(
        url=raw.url,
        fetch_timestamp=raw.fetch_timestamp,
        lines=out_lines,
        lid_label=label,
        lid_prob=prob,
        lid_consistency=sum(lab == label for lab in line_labels) / len(lines),
        script_consistency=1.0 - incompat,
        warnings=tuple(retained_warnings(warnings, label, cfg.filters)),
        content_classes=tuple(sorted(classes)),
        digest=compute_digest(scrubbed),
    )
