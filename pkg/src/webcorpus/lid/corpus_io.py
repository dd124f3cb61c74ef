"""Training-corpus line format: ``__label__<lang>_<Script> <text>``."""
from __future__ import annotations

import gzip
from pathlib import Path
from typing import Iterable, Iterator

from ..labels import LabelId
from .model import LabeledSentence

PREFIX = "__label__"


def parse_line(line: str) -> LabeledSentence:
    line = line.rstrip("\r\n")
    if not line.startswith(PREFIX):
        raise ValueError(f"line does not start with {PREFIX}: {line[:40]!r}")
    head, _, text = line[len(PREFIX):].partition(" ")
    return LabeledSentence(text=text, label=LabelId.parse(head))


def format_line(sentence: LabeledSentence) -> str:
    if "\n" in sentence.text:
        raise ValueError("training text may not contain newlines")
    return sentence.to_line()


def _open(path):
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def read_corpus(path) -> list[LabeledSentence]:
    with _open(path) as fh:
        return [parse_line(line) for line in fh if line.strip()]


def iter_corpus(paths: Iterable) -> Iterator[LabeledSentence]:
    for path in paths:
        yield from read_corpus(path)


def write_corpus(sentences: Iterable[LabeledSentence], path) -> int:
    n = 0
    path = Path(path)
    opener = gzip.open(path, "wt", encoding="utf-8") if path.suffix == ".gz" else open(path, "w", encoding="utf-8")
    with opener as fh:
        for s in sentences:
            fh.write(format_line(s) + "\n")
            n += 1
    return n
