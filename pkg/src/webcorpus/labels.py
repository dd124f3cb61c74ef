"""Language-script labels such as ``rus_Cyrl``."""
from __future__ import annotations

import re
from dataclasses import dataclass

_LANG_RE = re.compile(r"^[a-z]{3}$")
_SCRIPT_RE = re.compile(r"^[A-Z][a-z]{3}$")

UND = "und"
ZXX = "zxx"


@dataclass(frozen=True, order=True)
class LabelId:
    """An ISO 639-3 language code paired with an ISO 15924 script code.

    Ordering is lexicographic on the rendered form, which is the tie-break
    order used everywhere predictions are ranked.
    """

    language: str
    script: str

    def __post_init__(self):
        if not _LANG_RE.match(self.language):
            raise ValueError(f"invalid ISO 639-3 code: {self.language!r}")
        if not _SCRIPT_RE.match(self.script):
            raise ValueError(f"invalid ISO 15924 code: {self.script!r}")

    @classmethod
    def parse(cls, text: str) -> "LabelId":
        lang, sep, script = text.partition("_")
        if not sep:
            raise ValueError(f"label must look like lang_Script, got {text!r}")
        return cls(lang, script)

    @property
    def is_und(self) -> bool:
        return self.language == UND

    @property
    def is_zxx(self) -> bool:
        return self.language == ZXX

    @property
    def is_rejection(self) -> bool:
        """True for the synthetic und/zxx labels that only ever mean "reject"."""
        return self.is_und or self.is_zxx

    def __str__(self) -> str:
        return f"{self.language}_{self.script}"


def as_label(value) -> LabelId:
    if isinstance(value, LabelId):
        return value
    return LabelId.parse(str(value))
