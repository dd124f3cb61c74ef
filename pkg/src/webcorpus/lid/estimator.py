"""scikit-learn wrappers around the n-gram language identifier."""
from __future__ import annotations

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin

from .._validation import check_is_fitted, check_labels, check_texts
from ..labels import LabelId
from .config import TrainConfig
from .features import Featurizer, Vocabulary
from .model import LabeledSentence, LidModel, train

_DEFAULTS = TrainConfig()


class NgramLanguageIdentifier(ClassifierMixin, BaseEstimator):
    """Language identifier with the usual ``fit``/``predict`` surface.

    ``y`` holds ``lang_Script`` strings (or :class:`LabelId`). ``predict``
    returns ``None`` for inputs that carry no features at all, and the
    corresponding ``predict_proba`` row is all zeros.

    Parameters mirror :class:`TrainConfig`; ``seed`` fixes initialisation and
    example order, so two fits on the same data are bitwise identical.
    """

    def __init__(
        self,
        min_count=_DEFAULTS.min_count,
        min_count_label=_DEFAULTS.min_count_label,
        bucket=_DEFAULTS.bucket,
        minn=_DEFAULTS.minn,
        maxn=_DEFAULTS.maxn,
        dim=_DEFAULTS.dim,
        epoch=_DEFAULTS.epoch,
        lr=_DEFAULTS.lr,
        seed=0,
    ):
        self.min_count = min_count
        self.min_count_label = min_count_label
        self.bucket = bucket
        self.minn = minn
        self.maxn = maxn
        self.dim = dim
        self.epoch = epoch
        self.lr = lr
        self.seed = seed

    def _config(self) -> TrainConfig:
        return TrainConfig(
            min_count=self.min_count,
            min_count_label=self.min_count_label,
            bucket=self.bucket,
            minn=self.minn,
            maxn=self.maxn,
            dim=self.dim,
            epoch=self.epoch,
            lr=self.lr,
        )

    def fit(self, X, y):
        texts = check_texts(X)
        labels = check_labels(y, len(texts))
        corpus = [LabeledSentence(t, lab) for t, lab in zip(texts, labels)]
        self.model_ = train(corpus, self._config(), seed=self.seed)
        self.classes_ = np.array([str(lab) for lab in self.model_.labels], dtype=object)
        return self

    @classmethod
    def from_model(cls, model: LidModel) -> "NgramLanguageIdentifier":
        cfg = model.config
        est = cls(cfg.min_count, cfg.min_count_label, cfg.bucket, cfg.minn, cfg.maxn, cfg.dim, cfg.epoch, cfg.lr)
        est.model_ = model
        est.classes_ = np.array([str(lab) for lab in model.labels], dtype=object)
        return est

    def predict_proba(self, X) -> np.ndarray:
        check_is_fitted(self)
        texts = check_texts(X)
        out = np.zeros((len(texts), len(self.classes_)))
        for i, text in enumerate(texts):
            p = self.model_.predict_proba(text)
            if p is not None:
                out[i] = p
        return out

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self)
        texts = check_texts(X)
        out = np.empty(len(texts), dtype=object)
        for i, text in enumerate(texts):
            top = self.model_.predict(text, 1)
            out[i] = str(top[0].label) if top else None
        return out

    def predict_constrained(self, X, allowed) -> np.ndarray:
        check_is_fitted(self)
        allowed = list(allowed)
        texts = check_texts(X)
        out = np.empty(len(texts), dtype=object)
        for i, text in enumerate(texts):
            top = self.model_.predict_constrained(text, allowed, k=1)
            out[i] = str(top[0].label) if top else None
        return out


class HashedNgramVectorizer(TransformerMixin, BaseEstimator):
    """Sparse bag of hashed n-gram features, row-normalised to a mean.

    Column ``j`` is feature id ``j`` of the classifier's input space, so
    ``transform(X) @ model.input_embeddings`` is exactly the hidden layer.
    ``fit`` only builds the word vocabulary (``min_count`` filter).
    """

    def __init__(self, min_count=_DEFAULTS.min_count, bucket=_DEFAULTS.bucket, minn=_DEFAULTS.minn, maxn=_DEFAULTS.maxn):
        self.min_count = min_count
        self.bucket = bucket
        self.minn = minn
        self.maxn = maxn

    def fit(self, X, y=None):
        texts = check_texts(X)
        self.config_ = TrainConfig(min_count=self.min_count, bucket=self.bucket, minn=self.minn, maxn=self.maxn)
        self.vocabulary_ = Vocabulary.build(texts, [LabelId("und", "Zzzz")], self.min_count)
        self.featurizer_ = Featurizer(self.config_, self.vocabulary_)
        self.n_features_out_ = self.vocabulary_.nwords + self.bucket
        return self

    def transform(self, X):
        check_is_fitted(self, "featurizer_")
        texts = check_texts(X)
        indptr, indices, data = [0], [], []
        for text in texts:
            ids = self.featurizer_(text)
            if ids:
                uniq, counts = np.unique(ids, return_counts=True)
                indices.extend(uniq.tolist())
                data.extend((counts / len(ids)).tolist())
            indptr.append(len(indices))
        return sparse.csr_matrix((data, indices, indptr), shape=(len(texts), self.n_features_out_))
