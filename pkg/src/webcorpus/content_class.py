"""URL-domain content classes (UT1 directory layout plus built-in seeds).

Classes are annotations only; nothing here ever drops a document.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping
from urllib.parse import urlsplit

logger = logging.getLogger(__name__)

WIKIPEDIA = "wikipedia"
RELIGIOUS = "religious"
WIKIPEDIA_DOMAINS = frozenset({"wikipedia.org"})

_DOMAIN_RE = re.compile(r"^(?=.{1,253}$)(?:[a-z0-9_](?:[a-z0-9_-]{0,61}[a-z0-9_])?\.)*[a-z0-9-]{1,63}$")


@dataclass(frozen=True)
class Blocklists:
    classes: Mapping[str, frozenset[str]]
    skipped: int = 0
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        frozen = {name: frozenset(domains) for name, domains in self.classes.items()}
        index: dict[str, set[str]] = {}
        for name, domains in frozen.items():
            for dom in domains:
                index.setdefault(dom, set()).add(name)
        object.__setattr__(self, "classes", MappingProxyType(frozen))
        object.__setattr__(self, "_index", {d: frozenset(c) for d, c in index.items()})

    def classes_for_host(self, host: str) -> set[str]:
        host = host.lower().rstrip(".")
        out: set[str] = set()
        labels = host.split(".")
        for i in range(len(labels)):
            out |= self._index.get(".".join(labels[i:]), frozenset())
        return out


def normalize_domain(raw: str) -> str | None:
    """Lower-cased bare host, or ``None`` when the line is not a domain."""
    text = raw.strip().lower()
    if not text or text.startswith("#"):
        return None
    if "://" in text:
        text = urlsplit(text).hostname or ""
    text = text.rstrip(".")
    if text.startswith("www."):
        text = text[4:]
    return text if _DOMAIN_RE.match(text) else None


def _seed_religious() -> frozenset[str]:
    text = resources.files("webcorpus").joinpath("data/religious_domains.txt").read_text(encoding="utf-8")
    return frozenset(d for d in map(normalize_domain, text.splitlines()) if d)


def builtin_blocklists() -> Blocklists:
    return Blocklists({WIKIPEDIA: WIKIPEDIA_DOMAINS, RELIGIOUS: _seed_religious()})


def load_blocklists(directory=None) -> Blocklists:
    """Read ``<class>/domains`` files under ``directory`` and merge the seeds.

    Comment and blank lines are ignored; other lines that are not a valid
    domain are counted in ``Blocklists.skipped``.
    """
    classes: dict[str, set[str]] = {WIKIPEDIA: set(WIKIPEDIA_DOMAINS), RELIGIOUS: set(_seed_religious())}
    skipped = 0
    if directory is not None:
        root = Path(directory)
        if not root.is_dir():
            raise NotADirectoryError(f"blocklist directory not readable: {root}")
        for sub in sorted(p for p in root.iterdir() if p.is_dir()):
            path = sub / "domains"
            if not path.is_file():
                continue
            bucket = classes.setdefault(sub.name, set())
            with path.open(encoding="utf-8", errors="replace") as fh:
                for line in fh:
                    dom = normalize_domain(line)
                    if dom:
                        bucket.add(dom)
                    elif line.strip() and not line.lstrip().startswith("#"):
                        skipped += 1
        if skipped:
            logger.warning("skipped %d malformed blocklist lines under %s", skipped, root)
    return Blocklists(classes, skipped)


def url_host(url: str) -> str | None:
    try:
        parts = urlsplit(url.strip() if "://" in url else "//" + url.strip())
        host = parts.hostname
    except ValueError:
        return None
    return host or None


def classify_url(url: str, lists: Blocklists) -> set[str]:
    """Every class whose domains contain the URL's host or a parent of it."""
    host = url_host(url)
    if host is None:
        return set()
    return lists.classes_for_host(host)
