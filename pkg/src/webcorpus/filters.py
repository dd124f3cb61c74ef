"""Document quality warnings and the keep/drop policy.

Comparators follow the published rules exactly: ``>=`` for the ratio
thresholds, ``>`` for the repetition word count and word length, ``<`` for
the tiny-document line count.
"""
from __future__ import annotations

import enum
import math
import re
import unicodedata
from dataclasses import dataclass, field, fields, replace
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ._validation import check_unit_interval
from .labels import LabelId


class QualityWarning(str, enum.Enum):
    TINY = "tiny"
    SHORT_SENTENCES = "short_sentences"
    HEADER = "header"
    FOOTER = "footer"
    LID_INCONSISTENT = "lid_inconsistent"
    SCRIPT_INCONSISTENT = "script_inconsistent"
    LIST_CASE = "list_case"
    TECHNICAL_CHARS = "technical_chars"
    CURSED_REGEX = "cursed_regex"
    REPETITION = "repetition"
    LONG_WORD = "long_word"
    LOREM_IPSUM = "lorem_ipsum"
    POLICY = "policy"
    JS_WARNING = "js_warning"
    CURLY_BRACKET = "curly_bracket"
    ADULT_WORDS = "adult_words"

    def __str__(self) -> str:
        return self.value


ALWAYS_IGNORED = frozenset({QualityWarning.SHORT_SENTENCES, QualityWarning.HEADER, QualityWarning.FOOTER})
WORD_BOUNDARY_WARNINGS = frozenset({QualityWarning.LONG_WORD, QualityWarning.REPETITION})

POLICY_PHRASES = (
    "terms of use",
    "privacy policy",
    "cookie policy",
    "uses cookies",
    "use of cookies",
    "use cookies",
)


def read_list_file(path, comments: bool = True) -> tuple[str, ...]:
    """One entry per line; blank lines and (optionally) '#' lines skipped."""
    text = Path(path).read_text(encoding="utf-8")
    return tuple(
        ln.rstrip("\r")
        for ln in text.splitlines()
        if ln.strip() and not (comments and ln.lstrip().startswith("#"))
    )


def _packaged_list(name: str) -> tuple[str, ...]:
    with resources.as_file(resources.files("webcorpus").joinpath(f"data/{name}")) as path:
        return read_list_file(path)


@dataclass(frozen=True)
class FilterConfig:
    tiny_lines: int = 3
    short_line_chars: int = 100
    short_ratio: float = 0.5
    header_fraction: float = 0.2
    lid_mismatch_ratio: float = 0.6
    script_incompat_ratio: float = 0.1
    listcase_ratio: float = 0.5
    cjk_list_seg_chars: int = 5
    technical_ratio: float = 0.2
    rep_min_words: int = 20
    rep_word_ratio: float = 0.5
    rep_bigram_ratio: float = 0.2
    long_word_chars: int = 100
    cursed_patterns: tuple[str, ...] = field(default_factory=lambda: _packaged_list("cursed_patterns.txt"))
    adult_terms: tuple[str, ...] = field(default_factory=lambda: _packaged_list("adult_terms.txt"))
    policy_phrases: tuple[str, ...] = POLICY_PHRASES
    boundary_less_scripts: frozenset[str] = field(
        default_factory=lambda: frozenset(_packaged_list("boundary_less_scripts.txt"))
    )

    def __post_init__(self):
        for f in fields(self):
            if f.name.endswith(("_ratio", "_fraction")):
                check_unit_interval(f.name, getattr(self, f.name))
        for name in ("cursed_patterns", "adult_terms", "policy_phrases"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "boundary_less_scripts", frozenset(self.boundary_less_scripts))

    @cached_property
    def compiled_patterns(self) -> tuple[re.Pattern, ...]:
        return tuple(re.compile(p) for p in self.cursed_patterns)

    @classmethod
    def from_file(cls, path) -> "FilterConfig":
        """Read ``key = value`` lines; list keys take a file path.

        ``cursed_patterns`` and ``adult_terms`` name list files (relative to
        the config file); ``boundary_less_scripts`` and ``policy_phrases``
        are comma-separated inline.
        """
        path = Path(path)
        base = path.parent
        numeric = {f.name: f.type for f in fields(cls)}
        overrides: dict = {}
        for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = (part.strip() for part in line.partition("="))
            if not sep or key not in numeric:
                raise ValueError(f"{path}:{lineno}: unknown or malformed setting {raw!r}")
            if key in ("cursed_patterns", "adult_terms"):
                overrides[key] = read_list_file(base / value)
            elif key in ("boundary_less_scripts", "policy_phrases"):
                items = tuple(v.strip() for v in value.split(",") if v.strip())
                overrides[key] = frozenset(items) if key == "boundary_less_scripts" else items
            elif numeric[key] == "int":
                overrides[key] = int(value)
            else:
                overrides[key] = float(value)
        return replace(cls(), **overrides)


def repeated_fractions(line: str) -> tuple[float, float, int]:
    """(repeated-word fraction, repeated-bigram fraction, word count)."""
    words = line.split()
    n = len(words)
    word_frac = 1.0 - len(set(words)) / n if n else 0.0
    bigrams = list(zip(words, words[1:]))
    bigram_frac = 1.0 - len(set(bigrams)) / len(bigrams) if bigrams else 0.0
    return word_frac, bigram_frac, n


def _capital_initial(token: str) -> bool:
    for ch in token:
        if ch.isupper():
            return True
        if ch.islower():
            return False
    return False


def _is_list_case(line: str, cfg: FilterConfig, boundary_less: bool) -> bool:
    tokens = line.split()
    if not tokens:
        return False
    caps = sum(_capital_initial(t) for t in tokens)
    if caps / len(tokens) >= cfg.listcase_ratio:
        return True
    if boundary_less and len(tokens) >= 2:
        short = sum(len(t) < cfg.cjk_list_seg_chars for t in tokens)
        return short / len(tokens) >= cfg.listcase_ratio
    return False


def technical_fraction(text: str) -> float:
    """Share of non-space characters in Unicode categories N* or P*."""
    total = tech = 0
    for ch in text:
        if ch.isspace():
            continue
        total += 1
        if unicodedata.category(ch)[0] in "NP":
            tech += 1
    return tech / total if total else 0.0


def annotate(
    doc_lines: Sequence[str],
    doc_label: LabelId,
    line_labels: Sequence[Optional[LabelId]],
    incompat_fraction: float,
    cfg: FilterConfig | None = None,
) -> set[QualityWarning]:
    """Every warning whose rule fires on the document.

    ``line_labels[i]`` is the line-level prediction for ``doc_lines[i]``, or
    ``None`` if that line got no confident label (counts as a mismatch).
    """
    cfg = cfg or FilterConfig()
    if len(line_labels) != len(doc_lines):
        raise ValueError("line_labels must align with doc_lines")
    W = QualityWarning
    out: set[QualityWarning] = set()
    n = len(doc_lines)
    text = "\n".join(doc_lines)

    if n < cfg.tiny_lines:
        out.add(W.TINY)

    if n:
        short = [len(line) < cfg.short_line_chars for line in doc_lines]
        if sum(short) / n >= cfg.short_ratio:
            out.add(W.SHORT_SENTENCES)
        edge = max(1, math.ceil(cfg.header_fraction * n))
        if all(short[:edge]):
            out.add(W.HEADER)
        if all(short[-edge:]):
            out.add(W.FOOTER)
        mismatched = sum(lab != doc_label for lab in line_labels)
        if mismatched / n >= cfg.lid_mismatch_ratio:
            out.add(W.LID_INCONSISTENT)

    if incompat_fraction >= cfg.script_incompat_ratio:
        out.add(W.SCRIPT_INCONSISTENT)

    boundary_less = doc_label.script in cfg.boundary_less_scripts
    if any(_is_list_case(line, cfg, boundary_less) for line in doc_lines):
        out.add(W.LIST_CASE)

    if technical_fraction(text) >= cfg.technical_ratio:
        out.add(W.TECHNICAL_CHARS)

    if any(p.search(text) for p in cfg.compiled_patterns):
        out.add(W.CURSED_REGEX)

    for line in doc_lines:
        wf, bf, count = repeated_fractions(line)
        if count > cfg.rep_min_words and (wf > cfg.rep_word_ratio or bf > cfg.rep_bigram_ratio):
            out.add(W.REPETITION)
            break

    if any(len(tok) > cfg.long_word_chars for tok in text.split()):
        out.add(W.LONG_WORD)

    folded = text.casefold()
    if "lorem ipsum" in folded:
        out.add(W.LOREM_IPSUM)
    if any(p.casefold() in folded for p in cfg.policy_phrases):
        out.add(W.POLICY)
    if "JavaScript" in text or "Javascript" in text:
        out.add(W.JS_WARNING)
    if "{" in text or "}" in text:
        out.add(W.CURLY_BRACKET)
    if any(term in text for term in cfg.adult_terms):
        out.add(W.ADULT_WORDS)
    return out


def ignorable_warnings(label: LabelId, cfg: FilterConfig | None = None) -> frozenset[QualityWarning]:
    cfg = cfg or FilterConfig()
    if label.script in cfg.boundary_less_scripts:
        return ALWAYS_IGNORED | WORD_BOUNDARY_WARNINGS
    return ALWAYS_IGNORED


def decide_keep(warnings: Iterable[QualityWarning], label: LabelId, cfg: FilterConfig | None = None) -> bool:
    """Keep a document only if every warning it carries is ignorable."""
    return set(warnings) <= ignorable_warnings(label, cfg)


def retained_warnings(warnings: Iterable[QualityWarning], label: LabelId, cfg: FilterConfig | None = None) -> list[str]:
    """The ignorable warnings a kept document still carries, as sorted names."""
    keep = ignorable_warnings(label, cfg)
    return sorted(w.value for w in warnings if w in keep)
