"""Synthetic training data for the rejection labels.

``und_<Script>`` sentences are random characters of a script nobody has
trustworthy language data for; ``zxx_*`` sentences imitate the common kinds of
web noise. Every generator is a pure function of its arguments and seed.
"""
from __future__ import annotations

import enum
import random
import unicodedata
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .labels import LabelId
from .lid.model import LabeledSentence
from .scripts import default_table

DEFAULT_UND_SENTENCES = 100_000
TOKEN_LEN = (1, 12)
TOKENS_PER_SENTENCE = (3, 15)
REPLACEMENT_CHAR = "\ufffd"
PDF_TOKENS = tuple("ijl") + tuple(a + b for a in "ijl" for b in "ijl")


class NoiseKind(str, enum.Enum):
    MISRENDERED_PDF = "misrendered_pdf"
    ANTSPEAK = "antspeak"
    BINARY = "binary"
    MOJIBAKE_LATIN = "mojibake_latin"
    MOJIBAKE_ARABIC = "mojibake_arabic"
    REPLACEMENT_CHAR = "replacement_char"

    @property
    def label(self) -> LabelId:
        if self is NoiseKind.MOJIBAKE_ARABIC:
            return LabelId("zxx", "Arab")
        if self is NoiseKind.REPLACEMENT_CHAR:
            return LabelId("zxx", "Zzzz")
        return LabelId("zxx", "Latn")

    @property
    def needs_carrier(self) -> bool:
        return self in (NoiseKind.ANTSPEAK, NoiseKind.REPLACEMENT_CHAR)


class UnknownScriptError(ValueError):
    pass


def _data_lines(name: str) -> list[str]:
    text = resources.files("webcorpus").joinpath(f"data/{name}").read_text(encoding="utf-8")
    return [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def default_und_scripts() -> list[str]:
    return [ln.strip() for ln in _data_lines("und_scripts.txt")]


@lru_cache(maxsize=1)
def mojibake_latin_alphabet() -> tuple[str, ...]:
    return tuple(ch for ln in _data_lines("mojibake_latin.txt") for ch in ln if not ch.isspace())


@lru_cache(maxsize=1)
def mojibake_arabic_alphabet() -> tuple[tuple[str, ...], tuple[str, ...]]:
    sections = {}
    for ln in _data_lines("mojibake_arabic.txt"):
        key, _, chars = ln.partition(":")
        sections[key.strip()] = tuple(ch for ch in chars if not ch.isspace())
    return sections["lead"], sections["trail"]


@lru_cache(maxsize=256)
def _inventory(script: str) -> tuple[str, ...]:
    table = default_table()
    if not table.known(script):
        raise UnknownScriptError(f"unknown ISO 15924 script code {script!r}")
    chars = tuple(ch for ch in table.characters(script) if not ch.isspace())
    if not chars:
        raise UnknownScriptError(f"script {script!r} has no assigned characters")
    return chars


def _random_tokens(rng: random.Random, make_token, tokens_range=TOKENS_PER_SENTENCE) -> str:
    return " ".join(make_token() for _ in range(rng.randint(*tokens_range)))


def gen_und(
    script: str,
    n_sentences: int = DEFAULT_UND_SENTENCES,
    len_range: tuple[int, int] = TOKEN_LEN,
    seed: int = 0,
    tokens_range: tuple[int, int] = TOKENS_PER_SENTENCE,
) -> list[LabeledSentence]:
    """Space-joined pseudo-tokens of uniformly random ``script`` characters."""
    if n_sentences < 1:
        raise ValueError("n_sentences must be >= 1")
    chars = _inventory(script)
    label = LabelId("und", script)
    rng = random.Random(f"und:{script}:{seed}")

    def token():
        return "".join(rng.choice(chars) for _ in range(rng.randint(*len_range)))

    return [LabeledSentence(_random_tokens(rng, token, tokens_range), label) for _ in range(n_sentences)]


def antspeak(text: str) -> str:
    """Insert a space between every two adjacent non-space characters."""
    out = []
    prev_visible = False
    for ch in text:
        visible = not ch.isspace()
        if visible and prev_visible:
            out.append(" ")
        out.append(ch)
        prev_visible = visible
    return "".join(out)


def replace_chars(text: str, rate: float, rng: random.Random) -> str:
    """Replace each non-space character with U+FFFD with probability ``rate``.

    At least one character is replaced whenever ``rate > 0``, so no sample
    comes out identical to its (clean) carrier.
    """
    chars = list(text)
    hit = False
    for i, ch in enumerate(chars):
        if not ch.isspace() and rng.random() < rate:
            chars[i] = REPLACEMENT_CHAR
            hit = True
    if rate > 0 and not hit:
        visible = [i for i, ch in enumerate(chars) if not ch.isspace()]
        if visible:
            chars[rng.choice(visible)] = REPLACEMENT_CHAR
    return "".join(chars)


def binary_text(rng: random.Random, n_bytes: int) -> str:
    """Random bytes as a text editor shows them (Latin-1), controls as blanks."""
    raw = bytes(rng.getrandbits(8) for _ in range(n_bytes))
    text = raw.decode("latin-1")
    cleaned = "".join(" " if ch.isspace() or unicodedata.category(ch) == "Cc" else ch for ch in text)
    return " ".join(cleaned.split())


def gen_zxx(
    kind: NoiseKind | str,
    n_sentences: int,
    seed: int = 0,
    carrier: Sequence[str] | None = None,
    rate: float = 0.5,
) -> list[LabeledSentence]:
    """Noise sentences of one kind, labelled ``zxx_Latn``/``zxx_Arab``/``zxx_Zzzz``.

    ``antspeak`` and ``replacement_char`` transform carrier sentences (drawn
    with replacement); ``rate`` only applies to ``replacement_char``.
    """
    kind = NoiseKind(kind)
    if n_sentences < 1:
        raise ValueError("n_sentences must be >= 1")
    carrier = [c for c in (carrier or []) if c.strip()]
    if kind.needs_carrier and not carrier:
        raise ValueError(f"{kind.value} noise needs a non-empty carrier corpus")
    if not 0.0 <= rate <= 1.0:
        raise ValueError("rate must be in [0, 1]")
    rng = random.Random(f"zxx:{kind.value}:{seed}")
    label = kind.label

    if kind is NoiseKind.MISRENDERED_PDF:
        def make():
            return _random_tokens(rng, lambda: rng.choice(PDF_TOKENS))
    elif kind is NoiseKind.ANTSPEAK:
        def make():
            return antspeak(rng.choice(carrier))
    elif kind is NoiseKind.BINARY:
        def make():
            text = ""
            while not text:
                text = binary_text(rng, rng.randint(24, 160))
            return text
    elif kind is NoiseKind.MOJIBAKE_LATIN:
        alphabet = mojibake_latin_alphabet()

        def token():
            motif = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 3)))
            return (motif * rng.randint(2, 4))[: TOKEN_LEN[1]]

        def make():
            return _random_tokens(rng, token)
    elif kind is NoiseKind.MOJIBAKE_ARABIC:
        lead, trail = mojibake_arabic_alphabet()

        def token():
            pairs = rng.randint(1, 5)
            return "".join(rng.choice(lead) + rng.choice(trail) for _ in range(pairs))

        def make():
            return _random_tokens(rng, token)
    else:
        def make():
            return replace_chars(rng.choice(carrier), rate, rng)

    return [LabeledSentence(make(), label) for _ in range(n_sentences)]
