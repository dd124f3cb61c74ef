from .config import TrainConfig
from .corpus_io import format_line, parse_line, read_corpus, write_corpus
from .estimator import HashedNgramVectorizer, NgramLanguageIdentifier
from .features import Featurizer, Vocabulary, char_ngrams, featurize, fnv1a_32, tokenize
from .model import (
    LabeledSentence,
    LidModel,
    Prediction,
    UnknownLabelError,
    loss_and_gradients,
    predict,
    predict_constrained,
    softmax,
    train,
)
from .serialization import (
    ModelFormatError,
    ModelTruncatedError,
    ModelVersionError,
    dumps,
    load,
    loads,
    save,
)

__all__ = [
    "TrainConfig",
    "Featurizer",
    "Vocabulary",
    "char_ngrams",
    "featurize",
    "fnv1a_32",
    "tokenize",
    "LabeledSentence",
    "LidModel",
    "Prediction",
    "UnknownLabelError",
    "loss_and_gradients",
    "predict",
    "predict_constrained",
    "softmax",
    "train",
    "HashedNgramVectorizer",
    "NgramLanguageIdentifier",
    "ModelFormatError",
    "ModelTruncatedError",
    "ModelVersionError",
    "dumps",
    "load",
    "loads",
    "save",
    "format_line",
    "parse_line",
    "read_corpus",
    "write_corpus",
]
