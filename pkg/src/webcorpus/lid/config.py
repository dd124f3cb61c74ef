from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of the n-gram softmax classifier.

    The defaults are the production settings; desk-scale experiments usually
    shrink ``bucket`` and ``dim`` to keep the embedding matrix small.
    """

    min_count: int = 1000
    min_count_label: int = 0
    word_ngrams: int = 1
    bucket: int = 1_000_000
    minn: int = 2
    maxn: int = 5
    loss: str = "softmax"
    dim: int = 256
    epoch: int = 1
    lr: float = 0.8
    lr_update_rate: int = field(default=64, repr=False)

    def __post_init__(self):
        if not 1 <= self.minn <= self.maxn:
            raise ValueError(f"need 1 <= minn <= maxn, got minn={self.minn} maxn={self.maxn}")
        if self.bucket < 1:
            raise ValueError("bucket must be >= 1")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.lr > 0:
            raise ValueError("lr must be > 0")
        if self.epoch < 1:
            raise ValueError("epoch must be >= 1")
        if self.loss != "softmax":
            raise ValueError(f"unsupported loss {self.loss!r}; only softmax is implemented")
        if self.word_ngrams != 1:
            raise ValueError("only word_ngrams=1 (unigrams) is supported")
        if self.min_count < 1 or self.min_count_label < 0 or self.lr_update_rate < 1:
            raise ValueError("min_count >= 1, min_count_label >= 0, lr_update_rate >= 1 required")

    def to_dict(self) -> dict:
        return asdict(self)
