"""Writing-system detection and language/script admissibility.

Character scripts come from a vendored copy of the Unicode ``Scripts.txt``
table (see ``tools/gen_script_table.py``); the interpreter's own
``unicodedata`` does not expose the Script property.
"""
from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .labels import LabelId

COMMON = "Zyyy"
INHERITED = "Zinh"
UNKNOWN = "Zzzz"
NON_SCRIPT = frozenset({COMMON, INHERITED, UNKNOWN})


class ScriptTable:
    def __init__(self, starts, ends, codes, version, names):
        self.starts = starts
        self.ends = ends
        self.codes = codes
        self.version = version
        self.names = names

    @classmethod
    def from_text(cls, text: str) -> "ScriptTable":
        starts, ends, codes, names = [], [], [], {}
        version = "unknown"
        for line in text.splitlines():
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].strip().split("\t")
                if parts[0] == "unicode-version":
                    version = parts[1]
                elif parts[0] == "name":
                    names[parts[1]] = parts[2]
                continue
            lo, hi, code = line.split("\t")
            starts.append(int(lo, 16))
            ends.append(int(hi, 16))
            codes.append(code)
        return cls(starts, ends, codes, version, names)

    def script_of(self, ch: str) -> str:
        cp = ord(ch)
        i = bisect.bisect_right(self.starts, cp) - 1
        if i >= 0 and cp <= self.ends[i]:
            return self.codes[i]
        return UNKNOWN

    def characters(self, code: str) -> list[str]:
        """Every assigned code point whose Script property is ``code``."""
        out = []
        for lo, hi, c in zip(self.starts, self.ends, self.codes):
            if c == code:
                out.extend(chr(cp) for cp in range(lo, hi + 1))
        return out

    def known(self, code: str) -> bool:
        return code in self.names


@lru_cache(maxsize=1)
def default_table() -> ScriptTable:
    text = resources.files("webcorpus").joinpath("data/scripts.tsv").read_text(encoding="utf-8")
    return ScriptTable.from_text(text)


def unicode_version() -> str:
    return default_table().version


def script_of(ch: str) -> str:
    return default_table().script_of(ch)


def script_profile(text: str) -> dict[str, float]:
    """Fraction of script-bearing characters per ISO 15924 code.

    Common, Inherited and unassigned characters are left out of both the
    counts and the total, so digits and punctuation never dilute the result.
    """
    counts = script_counts(text)
    total = sum(counts.values())
    if not total:
        return {}
    return {code: n / total for code, n in sorted(counts.items())}


def script_counts(text: str) -> Counter:
    table = default_table()
    counts: Counter = Counter()
    for ch in text:
        code = table.script_of(ch)
        if code not in NON_SCRIPT:
            counts[code] += 1
    return counts


def dominant_script(text: str) -> str | None:
    counts = script_counts(text)
    if not counts:
        return None
    return min(counts, key=lambda code: (-counts[code], code))


@dataclass
class ScriptRegistry:
    """Admissible scripts per ISO 639-3 language."""

    admissible: dict[str, frozenset[str]] = field(default_factory=dict)

    @classmethod
    def from_text(cls, text: str) -> "ScriptRegistry":
        admissible = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                lang, scripts = line.split("\t")
            except ValueError:
                raise ValueError(f"registry line {lineno}: expected '<lang>\\t<scripts>', got {raw!r}") from None
            codes = frozenset(s.strip() for s in scripts.split(",") if s.strip())
            if not codes:
                raise ValueError(f"registry line {lineno}: empty script list for {lang}")
            admissible[lang.strip()] = codes
        return cls(admissible)

    @classmethod
    def from_file(cls, path) -> "ScriptRegistry":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def scripts_for(self, label: LabelId) -> frozenset[str]:
        # the label's own script is always admissible
        return self.admissible.get(label.language, frozenset()) | {label.script}


@lru_cache(maxsize=1)
def default_registry() -> ScriptRegistry:
    text = resources.files("webcorpus").joinpath("data/script_registry.tsv").read_text(encoding="utf-8")
    return ScriptRegistry.from_text(text)


def script_consistency(text: str, label: LabelId, registry: ScriptRegistry | None = None) -> float:
    """Fraction of script-bearing characters *not* admissible for ``label``.

    Zero means fully consistent (including texts with no script-bearing
    characters at all).
    """
    counts = script_counts(text)
    total = sum(counts.values())
    if not total:
        return 0.0
    ok = (registry or default_registry()).scripts_for(label)
    bad = sum(n for code, n in counts.items() if code not in ok)
    return bad / total
