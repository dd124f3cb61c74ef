"""Averaged-embedding softmax classifier over hashed n-gram features."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..labels import LabelId, as_label
from .config import TrainConfig
from .features import Featurizer, Vocabulary, tokenize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Prediction:
    label: LabelId
    probability: float


@dataclass(frozen=True)
class LabeledSentence:
    text: str
    label: LabelId

    def to_line(self) -> str:
        return f"__label__{self.label} {self.text}"


class UnknownLabelError(ValueError):
    pass


def softmax(scores: np.ndarray) -> np.ndarray:
    z = scores - scores.max()
    e = np.exp(z)
    return e / e.sum()


def loss_and_gradients(input_embeddings, output_weights, ids, target):
    """Negative log-likelihood of ``target`` and its gradients.

    Returns ``(loss, grad_output, rows, grad_rows)`` where ``grad_rows[k]`` is
    the gradient for input row ``rows[k]`` (duplicate ids are folded together,
    so their gradient is scaled by their multiplicity).
    """
    ids = np.asarray(ids, dtype=np.int64)
    rows, counts = np.unique(ids, return_counts=True)
    hidden = input_embeddings[ids].mean(axis=0)
    probs = softmax(output_weights @ hidden)
    loss = -np.log(probs[target])
    delta = probs.copy()
    delta[target] -= 1.0
    grad_output = np.outer(delta, hidden)
    grad_hidden = output_weights.T @ delta
    grad_rows = (counts[:, None] / len(ids)) * grad_hidden[None, :]
    return loss, grad_output, rows, grad_rows


@dataclass
class LidModel:
    """A trained classifier. Treat as immutable once built."""

    config: TrainConfig
    vocab: Vocabulary
    input_embeddings: np.ndarray
    output_weights: np.ndarray
    _featurizer: Featurizer | None = field(default=None, repr=False, compare=False)

    @property
    def labels(self) -> list[LabelId]:
        return self.vocab.labels

    @property
    def featurizer(self) -> Featurizer:
        if self._featurizer is None:
            self._featurizer = Featurizer(self.config, self.vocab)
        return self._featurizer

    def features(self, text: str) -> list[int]:
        return self.featurizer(text)

    def scores(self, text: str) -> np.ndarray | None:
        ids = self.features(text)
        if not ids:
            return None
        hidden = self.input_embeddings[ids].astype(np.float64).mean(axis=0)
        return self.output_weights.astype(np.float64) @ hidden

    def predict(self, text: str, k: int = 1) -> list[Prediction]:
        """Top-``k`` labels by probability.

        An input with no features (empty or whitespace-only) returns an empty
        list: there is nothing to average, so no label is ever asserted.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        scores = self.scores(text)
        if scores is None:
            return []
        return _rank(self.labels, softmax(scores), k)

    def predict_proba(self, text: str) -> np.ndarray | None:
        scores = self.scores(text)
        return None if scores is None else softmax(scores)

    def predict_constrained(self, text: str, allowed: Iterable, k: int | None = None) -> list[Prediction]:
        """Rank only ``allowed`` labels, with the softmax taken over that subset."""
        idx = self._allowed_indices(allowed)
        scores = self.scores(text)
        if scores is None:
            return []
        labels = [self.labels[i] for i in idx]
        return _rank(labels, softmax(scores[idx]), k or len(labels))

    def _allowed_indices(self, allowed: Iterable) -> list[int]:
        wanted = sorted({as_label(a) for a in allowed})
        if not wanted:
            raise ValueError("allowed label set is empty")
        unknown = [str(a) for a in wanted if a not in self.vocab._label_index]
        if unknown:
            raise UnknownLabelError(f"labels not in model: {', '.join(unknown)}")
        return [self.vocab.label_index(a) for a in wanted]

    def __eq__(self, other):
        if not isinstance(other, LidModel):
            return NotImplemented
        return (
            self.config == other.config
            and self.vocab == other.vocab
            and self.input_embeddings.dtype == other.input_embeddings.dtype
            and np.array_equal(self.input_embeddings, other.input_embeddings)
            and np.array_equal(self.output_weights, other.output_weights)
        )


def _rank(labels: Sequence[LabelId], probs: np.ndarray, k: int) -> list[Prediction]:
    order = sorted(range(len(labels)), key=lambda i: (-probs[i], labels[i]))
    return [Prediction(labels[i], float(probs[i])) for i in order[:k]]


def _init_embeddings(rows: int, dim: int, rng: np.random.Generator, chunk: int = 1 << 16) -> np.ndarray:
    # chunked so the default 10^6 x 256 matrix never needs a float64 temporary
    out = np.empty((rows, dim), dtype=np.float32)
    bound = 1.0 / dim
    for start in range(0, rows, chunk):
        stop = min(rows, start + chunk)
        out[start:stop] = rng.uniform(-bound, bound, size=(stop - start, dim))
    return out


def train(
    corpus: Sequence[LabeledSentence],
    config: TrainConfig | None = None,
    seed: int = 0,
    verbose: bool = False,
) -> LidModel:
    """Fit a model with plain SGD, one example at a time.

    The learning rate decays linearly from ``config.lr`` to zero over
    ``epoch`` passes, measured in whitespace tokens and refreshed every
    ``config.lr_update_rate`` tokens. Examples are shuffled once per epoch
    from ``seed``; the whole procedure is single-threaded and deterministic.
    """
    config = config or TrainConfig()
    if not corpus:
        raise ValueError("training corpus is empty")
    labels = [s.label for s in corpus]
    label_counts: dict[LabelId, int] = {}
    for lab in labels:
        label_counts[lab] = label_counts.get(lab, 0) + 1
    kept_labels = [lab for lab, c in label_counts.items() if c >= config.min_count_label]
    if not kept_labels:
        raise ValueError("corpus has no labels meeting min_count_label")

    vocab = Vocabulary.build((s.text for s in corpus), kept_labels, config.min_count)
    rng = np.random.default_rng(seed)
    model = LidModel(
        config=config,
        vocab=vocab,
        input_embeddings=_init_embeddings(vocab.nwords + config.bucket, config.dim, rng),
        output_weights=np.zeros((vocab.nlabels, config.dim), dtype=np.float32),
    )
    featurizer = model.featurizer

    examples = []
    for sent in corpus:
        if sent.label not in vocab._label_index:
            continue
        ids = featurizer(sent.text)
        if ids:
            examples.append((np.asarray(ids, dtype=np.int64), vocab.label_index(sent.label), len(tokenize(sent.text))))
    if not examples:
        raise ValueError("no training example produced any feature")

    E, W = model.input_embeddings, model.output_weights
    total_tokens = config.epoch * sum(n for _, _, n in examples)
    seen = 0
    since_update = 0
    lr = config.lr
    for epoch in range(config.epoch):
        order = rng.permutation(len(examples))
        loss_sum = 0.0
        for pos in order:
            ids, target, ntok = examples[pos]
            loss, g_out, rows, g_rows = loss_and_gradients(E, W, ids, target)
            loss_sum += float(loss)
            W -= (lr * g_out).astype(np.float32)
            E[rows] -= (lr * g_rows).astype(np.float32)
            seen += ntok
            since_update += ntok
            if since_update >= config.lr_update_rate:
                since_update = 0
                lr = config.lr * max(0.0, 1.0 - seen / total_tokens)
        if verbose:
            logger.info("epoch %d/%d mean loss %.4f lr %.4f", epoch + 1, config.epoch, loss_sum / len(order), lr)
    return model


def predict(model: LidModel, text: str, k: int = 1) -> list[Prediction]:
    return model.predict(text, k)


def predict_constrained(model: LidModel, text: str, allowed) -> list[Prediction]:
    return model.predict_constrained(text, allowed)
