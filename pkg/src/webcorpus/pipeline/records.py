"""Input shard readers: WET-style records and one-JSON-object-per-line."""
from __future__ import annotations

import gzip
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Union


@dataclass(frozen=True)
class RawDocument:
    url: str
    fetch_timestamp: datetime
    lines: tuple[str, ...]


@dataclass(frozen=True)
class ParseError:
    source: str
    offset: int
    message: str


Record = Union[RawDocument, ParseError]


def parse_timestamp(text: str) -> datetime:
    """ISO-8601 instant, normalised to UTC. Naive values are taken as UTC."""
    value = text.strip()
    if value.endswith(("Z", "z")):
        value = value[:-1] + "+00:00"
    ts = datetime.fromisoformat(value)
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def split_payload(text: str) -> tuple[str, ...]:
    """Payload lines: split on '\\n', trailing '\\r' dropped, blank lines skipped.

    Trailing newlines therefore never change the resulting document.
    """
    return tuple(ln for ln in (raw.rstrip("\r") for raw in text.split("\n")) if ln.strip())


def _open_binary(path: Path):
    with path.open("rb") as probe:
        magic = probe.read(2)
    return gzip.open(path, "rb") if magic == b"\x1f\x8b" else path.open("rb")


def iter_wet(path) -> Iterator[Record]:
    """Yield one item per ``conversion`` record; ``warcinfo`` and other types are ignored.

    A malformed record yields a :class:`ParseError` and the reader resumes at
    the next ``WARC/`` version line.
    """
    path = Path(path)
    with _open_binary(path) as fh:
        yield from _wet_records(fh, str(path))


def _wet_records(fh, source: str) -> Iterator[Record]:
    offset = 0
    pending: bytes | None = None
    while True:
        line = pending if pending is not None else fh.readline()
        pending = None
        if not line:
            return
        start = offset
        offset += len(line)
        if not line.strip():
            continue
        if not line.startswith(b"WARC/"):
            yield ParseError(source, start, "expected a WARC/ version line")
            while line and not line.startswith(b"WARC/"):
                line = fh.readline()
                offset += len(line)
            if not line:
                return
            offset -= len(line)
            pending = line
            continue
        headers: dict[str, str] = {}
        while True:
            hline = fh.readline()
            offset += len(hline)
            if not hline or not hline.strip():
                break
            key, sep, value = hline.decode("utf-8", "replace").partition(":")
            if sep:
                headers[key.strip().lower()] = value.strip()
        try:
            length = int(headers["content-length"])
        except (KeyError, ValueError):
            yield ParseError(source, start, "missing or invalid Content-Length")
            continue
        payload = fh.read(length)
        offset += len(payload)
        if len(payload) < length:
            yield ParseError(source, start, "truncated record payload")
            return
        rtype = headers.get("warc-type", "conversion")
        if rtype != "conversion":
            continue
        url = headers.get("warc-target-uri")
        if not url:
            yield ParseError(source, start, "conversion record without WARC-Target-URI")
            continue
        try:
            ts = parse_timestamp(headers.get("warc-date", ""))
        except ValueError:
            yield ParseError(source, start, f"bad WARC-Date {headers.get('warc-date')!r}")
            continue
        yield RawDocument(url, ts, split_payload(payload.decode("utf-8", "replace")))


def iter_jsonl(path) -> Iterator[Record]:
    """Objects with ``url``, ``timestamp`` and either ``text`` or ``lines``."""
    path = Path(path)
    with _open_binary(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
                url = obj["url"]
                ts = parse_timestamp(obj["timestamp"])
                if "lines" in obj:
                    lines = split_payload("\n".join(obj["lines"]))
                else:
                    lines = split_payload(obj["text"])
                if not isinstance(url, str):
                    raise TypeError("url must be a string")
            except (ValueError, KeyError, TypeError, AttributeError) as exc:
                yield ParseError(str(path), lineno, f"{type(exc).__name__}: {exc}")
                continue
            yield RawDocument(url, ts, lines)


def iter_shard(path) -> Iterator[Record]:
    """Dispatch on file name: ``*.jsonl[.gz]`` is JSON lines, anything else WET."""
    name = Path(path).name
    if name.endswith((".jsonl", ".jsonl.gz", ".json", ".json.gz")):
        return iter_jsonl(path)
    return iter_wet(path)


def write_wet(documents, path) -> None:
    """Serialise documents as a minimal WET file (used for fixtures)."""
    with Path(path).open("wb") as fh:
        for doc in documents:
            body = "\n".join(doc.lines).encode("utf-8")
            header = (
                "WARC/1.0\r\n"
                "WARC-Type: conversion\r\n"
                f"WARC-Target-URI: {doc.url}\r\n"
                f"WARC-Date: {format_timestamp(doc.fetch_timestamp)}\r\n"
                "Content-Type: text/plain\r\n"
                f"Content-Length: {len(body)}\r\n\r\n"
            )
            fh.write(header.encode("utf-8") + body + b"\r\n\r\n")
