"""Shared desk-scale corpus and model for the slow tests."""
from __future__ import annotations

import functools
from pathlib import Path

from webcorpus.evaluation import split_corpus
from webcorpus.lid import TrainConfig, read_corpus, train
from webcorpus.synth import NoiseKind, gen_und, gen_zxx

DATA = Path(__file__).parent / "data"
UND_SCRIPTS = ("Talu", "Mong", "Sylo", "Newa", "Gran")
PER_LABEL = 2500
# desk-sized hashing space and width; defaults would need ~1 GB
DESK_CONFIG = TrainConfig(bucket=1 << 18, dim=64, epoch=5, min_count=1000)


@functools.lru_cache(maxsize=1)
def natural():
    return tuple(read_corpus(DATA / "desk_natural.txt.gz"))


@functools.lru_cache(maxsize=1)
def splits():
    nat_train, nat_valid, nat_test = split_corpus(natural(), seed=0)
    carrier = [s.text for s in nat_train]
    synth = []
    for script in UND_SCRIPTS:
        synth.extend(gen_und(script, PER_LABEL, seed=0))
    per_kind = {}
    for kind in NoiseKind:
        per_kind.setdefault(kind.label, []).append(kind)
    for label, kinds in per_kind.items():
        n = PER_LABEL // len(kinds)
        for kind in kinds:
            synth.extend(gen_zxx(kind, n, seed=0, carrier=carrier))
    syn_train, syn_valid, syn_test = split_corpus(synth, seed=0)
    return nat_train + syn_train, nat_valid + syn_valid, nat_test + syn_test


@functools.lru_cache(maxsize=1)
def model():
    train_set, _, _ = splits()
    return train(train_set, DESK_CONFIG, seed=0)


def held_out_carrier():
    _, _, nat_test = split_corpus(natural(), seed=0)
    return [s.text for s in nat_test]
