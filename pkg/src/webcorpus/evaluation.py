"""F1/FPR evaluation with label-restricted prediction, sampling, splits and
word 4-gram contamination checks."""
from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .labels import LabelId, as_label
from .lid.model import LabeledSentence, LidModel

NGRAM = 4
DEFAULT_CAP = 1000


@dataclass(frozen=True)
class LabelMetrics:
    precision: float
    recall: float
    f1: float
    fpr: float


@dataclass(frozen=True)
class EvalResult:
    per_label: dict[LabelId, LabelMetrics]
    macro_f1: float
    macro_fpr: float
    n_l: dict[LabelId, int]
    n_unpredicted: int = 0

    def to_json(self) -> dict:
        return {
            "macro_f1": self.macro_f1,
            "macro_fpr": self.macro_fpr,
            "n_unpredicted": self.n_unpredicted,
            "per_label": {
                str(lab): {**vars(m), "n": self.n_l[lab]} for lab, m in sorted(self.per_label.items())
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_table(self) -> str:
        """Per-label rows, worst F1 first."""
        rows = sorted(self.per_label.items(), key=lambda kv: (kv[1].f1, kv[0]))
        width = max([5] + [len(str(lab)) for lab, _ in rows])
        out = [f"{'label':<{width}}  {'n':>6}  {'prec':>6}  {'rec':>6}  {'f1':>6}  {'fpr':>8}"]
        for lab, m in rows:
            out.append(
                f"{str(lab):<{width}}  {self.n_l[lab]:>6}  {m.precision:>6.4f}  {m.recall:>6.4f}  {m.f1:>6.4f}  {m.fpr:>8.6f}"
            )
        out.append(f"{'macro':<{width}}  {sum(self.n_l.values()):>6}  {'':>6}  {'':>6}  {self.macro_f1:>6.4f}  {self.macro_fpr:>8.6f}")
        return "\n".join(out) + "\n"


def metrics_from_predictions(gold: Sequence, predicted: Sequence) -> EvalResult:
    """Per-label metrics over the labels present in ``gold``.

    ``predicted`` entries may be ``None`` (no prediction); they count as a
    miss for the gold label and as a false positive for nobody.
    """
    if len(gold) != len(predicted):
        raise ValueError("gold and predicted differ in length")
    if not gold:
        raise ValueError("nothing to evaluate")
    gold = [as_label(g) for g in gold]
    predicted = [None if p is None else as_label(p) for p in predicted]
    n = len(gold)
    n_l = Counter(gold)
    tp: Counter = Counter()
    fp: Counter = Counter()
    for g, p in zip(gold, predicted):
        if p == g:
            tp[g] += 1
        elif p is not None:
            fp[p] += 1
    per_label = {}
    for lab in sorted(n_l):
        pred_count = tp[lab] + fp[lab]
        precision = tp[lab] / pred_count if pred_count else 0.0
        recall = tp[lab] / n_l[lab]
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        negatives = n - n_l[lab]
        fpr = fp[lab] / negatives if negatives else 0.0
        per_label[lab] = LabelMetrics(precision, recall, f1, fpr)
    k = len(per_label)
    return EvalResult(
        per_label=per_label,
        macro_f1=sum(m.f1 for m in per_label.values()) / k,
        macro_fpr=sum(m.fpr for m in per_label.values()) / k,
        n_l=dict(sorted(n_l.items())),
        n_unpredicted=sum(p is None for p in predicted),
    )


def evaluate(model: LidModel, benchmark: Sequence[LabeledSentence]) -> EvalResult:
    """Top-1 restricted to labels shared by the benchmark and the model."""
    if not benchmark:
        raise ValueError("benchmark is empty")
    allowed = {s.label for s in benchmark} & set(model.labels)
    if not allowed:
        raise ValueError("benchmark and model share no label")
    predicted = []
    for s in benchmark:
        top = model.predict_constrained(s.text, allowed, k=1)
        predicted.append(top[0].label if top else None)
    return metrics_from_predictions([s.label for s in benchmark], predicted)


def word_ngrams(text: str, n: int = NGRAM) -> set[tuple[str, ...]]:
    words = text.split()
    return {tuple(words[i : i + n]) for i in range(len(words) - n + 1)}


def contamination_mask(benchmark: Sequence[str], corpus: Sequence[str]) -> list[bool]:
    """Flag benchmark sentences whose word 4-grams all occur in one corpus sentence.

    Sentences with fewer than four words are flagged when they appear as a
    substring of some corpus sentence.
    """
    postings: dict[tuple[str, ...], set[int]] = defaultdict(set)
    corpus_grams = []
    for j, sent in enumerate(corpus):
        grams = word_ngrams(sent)
        corpus_grams.append(grams)
        for g in grams:
            postings[g].add(j)
    out = []
    for sent in benchmark:
        grams = word_ngrams(sent)
        if not grams:
            out.append(any(sent in c for c in corpus))
            continue
        # candidate sentences must hold the rarest gram
        lists = sorted((postings.get(g, set()) for g in grams), key=len)
        candidates = set(lists[0])
        for other in lists[1:]:
            candidates &= other
            if not candidates:
                break
        out.append(bool(candidates))
    return out


def _by_label(corpus: Iterable[LabeledSentence]) -> dict[LabelId, list[LabeledSentence]]:
    groups: dict[LabelId, list[LabeledSentence]] = defaultdict(list)
    for s in corpus:
        groups[s.label].append(s)
    return dict(sorted(groups.items()))


def build_test_sample(corpus_test: Sequence[LabeledSentence], cap: int = DEFAULT_CAP, seed: int = 0) -> list[LabeledSentence]:
    """At most ``cap`` sentences per label, drawn without replacement."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out = []
    for label, items in _by_label(corpus_test).items():
        rng = random.Random(f"sample:{seed}:{label}")
        if len(items) <= cap:
            out.extend(items)
        else:
            picked = sorted(rng.sample(range(len(items)), cap))
            out.extend(items[i] for i in picked)
    return out


def split_corpus(corpus: Sequence[LabeledSentence], seed: int = 0):
    """Per-label shuffle into floor(0.8 n) / floor(0.1 n) / remainder."""
    train, valid, test = [], [], []
    for label, items in _by_label(corpus).items():
        order = list(range(len(items)))
        random.Random(f"split:{seed}:{label}").shuffle(order)
        n = len(items)
        n_train = n * 8 // 10
        n_valid = n // 10
        train.extend(items[i] for i in order[:n_train])
        valid.extend(items[i] for i in order[n_train : n_train + n_valid])
        test.extend(items[i] for i in order[n_train + n_valid :])
    return train, valid, test
