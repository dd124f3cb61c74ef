"""Hashed character n-gram and word features."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..labels import LabelId
from .config import TrainConfig

# Private-use code points, so real text can never produce a boundary n-gram.
BOW = "\ue000"
EOW = "\ue001"

FNV_OFFSET = 0x811C9DC5
FNV_PRIME = 0x01000193


def fnv1a_32(data: bytes) -> int:
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & 0xFFFFFFFF
    return h


def tokenize(text: str) -> list[str]:
    """Split on Unicode whitespace; nothing is lowercased or stripped."""
    return text.split()


def char_ngrams(token: str, minn: int, maxn: int) -> list[str]:
    """All n-grams (minn <= n <= maxn) of the boundary-wrapped token.

    Emitted by start position, then by increasing length. A single sentinel
    on its own is never emitted.
    """
    wrapped = BOW + token + EOW
    out = []
    size = len(wrapped)
    for i in range(size):
        for n in range(minn, maxn + 1):
            if i + n > size:
                break
            if n == 1 and wrapped[i] in (BOW, EOW):
                continue
            out.append(wrapped[i : i + n])
    return out


@dataclass
class Vocabulary:
    """Retained words (frequency >= min_count) and the label inventory."""

    words: dict[str, int] = field(default_factory=dict)
    labels: list[LabelId] = field(default_factory=list)

    def __post_init__(self):
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def build(cls, texts: Iterable[str], labels: Iterable[LabelId], min_count: int) -> "Vocabulary":
        counts = Counter()
        for text in texts:
            counts.update(tokenize(text))
        kept = sorted((w for w, c in counts.items() if c >= min_count), key=lambda w: (-counts[w], w))
        return cls(words={w: i for i, w in enumerate(kept)}, labels=sorted(set(labels)))

    @property
    def nwords(self) -> int:
        return len(self.words)

    @property
    def nlabels(self) -> int:
        return len(self.labels)

    def label_index(self, label: LabelId) -> int:
        return self._label_index[label]

    def __eq__(self, other):
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return list(self.words.items()) == list(other.words.items()) and self.labels == other.labels


class Featurizer:
    """Maps text to feature ids; per-token results are memoised.

    Feature id ``i < nwords`` is word ``i``; ``nwords + b`` is hash bucket
    ``b``. The cache only grows with distinct tokens, and an instance is tied
    to one (config, vocabulary) pair.
    """

    def __init__(self, config: TrainConfig, vocab: Vocabulary, cache_size: int = 500_000):
        self.config = config
        self.vocab = vocab
        self._cache: dict[str, tuple[int | None, tuple[int, ...]]] = {}
        self._cache_size = cache_size

    def token_features(self, token: str) -> tuple[int | None, tuple[int, ...]]:
        hit = self._cache.get(token)
        if hit is not None:
            return hit
        cfg = self.config
        offset = self.vocab.nwords
        grams = tuple(
            offset + fnv1a_32(g.encode("utf-8")) % cfg.bucket
            for g in char_ngrams(token, cfg.minn, cfg.maxn)
        )
        result = (self.vocab.words.get(token), grams)
        if len(self._cache) >= self._cache_size:
            self._cache.clear()
        self._cache[token] = result
        return result

    def __call__(self, text: str) -> list[int]:
        word_ids: list[int] = []
        gram_ids: list[int] = []
        for token in tokenize(text):
            wid, grams = self.token_features(token)
            if wid is not None:
                word_ids.append(wid)
            gram_ids.extend(grams)
        return word_ids + gram_ids


def featurize(text: str, config: TrainConfig, vocab: Vocabulary) -> list[int]:
    """Feature ids for ``text``: in-vocabulary word ids, then n-gram bucket ids."""
    return Featurizer(config, vocab)(text)


def featurize_many(texts: Sequence[str], featurizer: Featurizer) -> list[list[int]]:
    return [featurizer(t) for t in texts]
