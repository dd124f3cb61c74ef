"""Shard-to-partition driver and its run report."""
from __future__ import annotations

import json
import logging
import multiprocessing as mp
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from ..lid.model import LidModel
from ..scripts import unicode_version
from .document import (
    AnnotatedDocument,
    PipelineConfig,
    Rejection,
    Timings,
    process_document,
)
from .records import ParseError, RawDocument, iter_shard

logger = logging.getLogger(__name__)

PART_BYTES = 1 << 30


@dataclass
class LabelStats:
    documents: int = 0
    lines: int = 0
    words: int = 0

    def add(self, doc: AnnotatedDocument) -> None:
        self.documents += 1
        self.lines += doc.n_sentences
        self.words += doc.n_words


@dataclass
class RunReport:
    threshold: float
    seed: int
    workers: int = 1
    per_label: dict[str, LabelStats] = field(default_factory=dict)
    rejections: Counter = field(default_factory=Counter)
    rejected_by_warning: Counter = field(default_factory=Counter)
    parse_errors: int = 0
    total_records: int = 0
    timings: Timings = field(default_factory=Timings)
    elapsed_seconds: float = 0.0

    @property
    def kept(self) -> int:
        return sum(s.documents for s in self.per_label.values())

    @property
    def rejected(self) -> int:
        return sum(self.rejections.values())

    @property
    def sentences_per_second(self) -> float | None:
        t = self.timings
        return t.line_calls / t.line_seconds if t.line_seconds > 0 else None

    @property
    def documents_per_second(self) -> float | None:
        t = self.timings
        return t.doc_calls / t.doc_seconds if t.doc_seconds > 0 else None

    def record(self, outcome) -> None:
        self.total_records += 1
        if isinstance(outcome, ParseError):
            self.parse_errors += 1
        elif isinstance(outcome, Rejection):
            self.rejections[outcome.cause] += 1
            for w in outcome.warnings:
                self.rejected_by_warning[w] += 1
        else:
            self.per_label.setdefault(str(outcome.lid_label), LabelStats()).add(outcome)

    def counts(self) -> dict:
        """Every count, without timings; identical for any worker count or shard order."""
        return {
            "total_records": self.total_records,
            "kept": self.kept,
            "rejected": self.rejected,
            "parse_errors": self.parse_errors,
            "per_label": {k: vars(v).copy() for k, v in sorted(self.per_label.items())},
            "rejections": dict(sorted(self.rejections.items())),
            "rejected_by_warning": dict(sorted(self.rejected_by_warning.items())),
        }

    def to_json(self) -> dict:
        out = self.counts()
        out.update(
            threshold=self.threshold,
            seed=self.seed,
            workers=self.workers,
            unicode_version=unicode_version(),
            throughput={
                "sentences_per_second": self.sentences_per_second,
                "documents_per_second": self.documents_per_second,
            },
            elapsed_seconds=round(self.elapsed_seconds, 3),
        )
        return out

    def to_table(self) -> str:
        rows = [("label", "documents", "lines", "words")]
        for label, s in sorted(self.per_label.items()):
            rows.append((label, str(s.documents), str(s.lines), str(s.words)))
        rows.append(("total", str(self.kept), str(sum(s.lines for s in self.per_label.values())),
                     str(sum(s.words for s in self.per_label.values()))))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))) for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.append("")
        lines.append(f"records {self.total_records}  kept {self.kept}  rejected {self.rejected}  parse errors {self.parse_errors}")
        for cause, n in sorted(self.rejections.items()):
            lines.append(f"  rejected/{cause:<16} {n:>8}")
        for w, n in sorted(self.rejected_by_warning.items()):
            lines.append(f"  warning/{w:<17} {n:>8}")
        sps, dps = self.sentences_per_second, self.documents_per_second
        lines.append(
            "throughput  "
            + (f"{sps:.1f} sentences/s" if sps else "n/a sentences/s")
            + "  "
            + (f"{dps:.1f} documents/s" if dps else "n/a documents/s")
        )
        lines.append(f"threshold {self.threshold}  seed {self.seed}  unicode {unicode_version()}")
        return "\n".join(lines) + "\n"


class PartitionWriter:
    """Appends JSONL lines to ``<root>/<label>/part-<k>.jsonl``, rotating by size."""

    def __init__(self, root, part_bytes: int = PART_BYTES):
        self.root = Path(root)
        self.part_bytes = part_bytes
        self._state: dict[str, tuple[int, int, object]] = {}

    def write(self, label: str, line: str) -> None:
        data = (line + "\n").encode("utf-8")
        part, size, fh = self._state.get(label, (0, 0, None))
        if fh is not None and size and size + len(data) > self.part_bytes:
            fh.close()
            part, size, fh = part + 1, 0, None
        if fh is None:
            directory = self.root / label
            directory.mkdir(parents=True, exist_ok=True)
            fh = (directory / f"part-{part:05d}.jsonl").open("wb")
        fh.write(data)
        self._state[label] = (part, size + len(data), fh)

    def close(self) -> None:
        for _, _, fh in self._state.values():
            if fh is not None:
                fh.close()
        self._state.clear()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def iter_records(shards: Iterable) -> Iterator:
    for shard in shards:
        try:
            yield from iter_shard(shard)
        except OSError as exc:
            yield ParseError(str(shard), 0, f"unreadable shard: {exc}")


_WORKER: dict = {}


def _init_worker(model: LidModel, cfg: PipelineConfig) -> None:
    _WORKER["model"] = model
    _WORKER["cfg"] = cfg


def _work(record):
    if isinstance(record, ParseError):
        return record, Timings()
    timings = Timings()
    return process_document(record, _WORKER["model"], _WORKER["cfg"], timings), timings


def run(
    shards: Sequence,
    output_dir,
    model: LidModel,
    cfg: PipelineConfig | None = None,
    workers: int = 1,
    part_bytes: int = PART_BYTES,
) -> RunReport:
    """Process every record of every shard, writing kept documents by label.

    Results are consumed in input order whatever ``workers`` is, so partition
    files are byte-identical across worker counts and reruns.
    """
    cfg = cfg or PipelineConfig()
    if workers < 1:
        raise ValueError("workers must be >= 1")
    report = RunReport(threshold=cfg.threshold, seed=cfg.seed, workers=workers)
    start = time.perf_counter()
    records = iter_records(shards)
    with PartitionWriter(output_dir, part_bytes) as writer:
        if workers == 1:
            _init_worker(model, cfg)
            outcomes = map(_work, records)
            _consume(outcomes, report, writer)
        else:
            ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
            with ctx.Pool(workers, initializer=_init_worker, initargs=(model, cfg)) as pool:
                _consume(pool.imap(_work, records, chunksize=16), report, writer)
    _WORKER.clear()
    report.elapsed_seconds = time.perf_counter() - start
    return report


def _consume(outcomes, report: RunReport, writer: PartitionWriter) -> None:
    for outcome, timings in outcomes:
        report.record(outcome)
        report.timings += timings
        if isinstance(outcome, AnnotatedDocument):
            writer.write(str(outcome.lid_label), outcome.to_jsonl())


def write_report(report: RunReport, path) -> None:
    """JSON at ``path`` and the text table next to it (``.txt`` suffix)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    path.with_suffix(".txt").write_text(report.to_table(), encoding="utf-8")
