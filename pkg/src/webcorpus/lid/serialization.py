"""Versioned binary model format.

Layout (little-endian throughout)::

    b"GLFG" | u32 version
    u32 len | config JSON (utf-8)
    u32 nwords | nwords x (u32 len | utf-8 word)
    u32 nlabels | nlabels x (u32 len | utf-8 label)
    u32 rows | u32 dim | rows*dim f32      input embeddings
    u32 rows | u32 dim | rows*dim f32      output weights
"""
from __future__ import annotations

import io
import json
import os
import struct

import numpy as np

from ..labels import LabelId
from .config import TrainConfig
from .features import Vocabulary
from .model import LidModel

MAGIC = b"GLFG"
VERSION = 1


class ModelFormatError(ValueError):
    """The file is not a model file (bad magic or corrupt structure)."""


class ModelVersionError(ModelFormatError):
    pass


class ModelTruncatedError(ModelFormatError):
    pass


def _pack_str(buf: io.BufferedIOBase, s: str):
    raw = s.encode("utf-8")
    buf.write(struct.pack("<I", len(raw)))
    buf.write(raw)


def _pack_matrix(buf, m: np.ndarray):
    rows, dim = m.shape
    buf.write(struct.pack("<II", rows, dim))
    buf.write(np.ascontiguousarray(m, dtype="<f4").tobytes())


def dumps(model: LidModel) -> bytes:
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack("<I", VERSION))
    _pack_str(buf, json.dumps(model.config.to_dict(), sort_keys=True))
    buf.write(struct.pack("<I", model.vocab.nwords))
    for word in model.vocab.words:
        _pack_str(buf, word)
    buf.write(struct.pack("<I", model.vocab.nlabels))
    for label in model.vocab.labels:
        _pack_str(buf, str(label))
    _pack_matrix(buf, model.input_embeddings)
    _pack_matrix(buf, model.output_weights)
    return buf.getvalue()


def save(model: LidModel, destination) -> None:
    data = dumps(model)
    if hasattr(destination, "write"):
        destination.write(data)
        return
    tmp = f"{os.fspath(destination)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, destination)


class _Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.pos = 0

    def take(self, n: int) -> memoryview:
        if self.pos + n > len(self.data):
            raise ModelTruncatedError(f"unexpected end of model file at byte {self.pos} (wanted {n} more)")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def string(self) -> str:
        raw = bytes(self.take(self.u32()))
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ModelFormatError(f"invalid utf-8 string in model file at byte {self.pos}") from exc

    def matrix(self) -> np.ndarray:
        rows, dim = self.u32(), self.u32()
        raw = self.take(rows * dim * 4)
        return np.frombuffer(raw, dtype="<f4").astype(np.float32).reshape(rows, dim)


def loads(data: bytes) -> LidModel:
    r = _Reader(data)
    head = bytes(data[:4])
    if head != MAGIC:
        if len(head) < 4 and MAGIC.startswith(head):
            raise ModelTruncatedError("model file ends inside the magic header")
        raise ModelFormatError(f"bad magic {head!r}; not a model file")
    r.take(4)
    version = r.u32()
    if version != VERSION:
        raise ModelVersionError(f"model format version {version} is not supported (expected {VERSION})")
    try:
        config = TrainConfig(**json.loads(r.string()))
    except (TypeError, json.JSONDecodeError) as exc:
        raise ModelFormatError("corrupt config block") from exc
    words = {r.string(): i for i in range(r.u32())}
    labels = [LabelId.parse(r.string()) for _ in range(r.u32())]
    vocab = Vocabulary(words=words, labels=labels)
    inputs = r.matrix()
    outputs = r.matrix()
    if r.pos != len(r.data):
        raise ModelFormatError(f"{len(r.data) - r.pos} trailing bytes after model payload")
    if inputs.shape != (vocab.nwords + config.bucket, config.dim):
        raise ModelFormatError(f"input matrix shape {inputs.shape} does not match config/vocabulary")
    if outputs.shape != (vocab.nlabels, config.dim):
        raise ModelFormatError(f"output matrix shape {outputs.shape} does not match labels/dim")
    return LidModel(config=config, vocab=vocab, input_embeddings=inputs, output_weights=outputs)


def load(source) -> LidModel:
    if hasattr(source, "read"):
        return loads(source.read())
    with open(source, "rb") as fh:
        return loads(fh.read())
