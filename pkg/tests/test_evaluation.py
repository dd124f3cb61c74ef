import json
import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

import checks
from webcorpus.evaluation import (
    build_test_sample,
    contamination_mask,
    evaluate,
    metrics_from_predictions,
    split_corpus,
)
from webcorpus.labels import LabelId
from webcorpus.lid import LabeledSentence

A, B = LabelId("aaa", "Latn"), LabelId("bbb", "Latn")


def test_hand_computed_confusion():
    gold = [A] * 10 + [B] * 10
    pred = [A] * 9 + [B] + [B] * 10
    r = metrics_from_predictions(gold, pred)
    assert r.per_label[A].f1 == pytest.approx(18 / 19)
    assert r.per_label[A].fpr == 0.0
    assert r.per_label[B].f1 == pytest.approx(20 / 21)
    assert r.per_label[B].fpr == pytest.approx(0.1)
    assert r.n_l == {A: 10, B: 10}


def test_perfect_predictor():
    gold = [A, B, A, B, B]
    r = metrics_from_predictions(gold, gold)
    assert all(m.f1 == 1 and m.fpr == 0 for m in r.per_label.values())
    assert r.macro_f1 == 1 and r.macro_fpr == 0


def test_unpredicted_counts_as_miss():
    r = metrics_from_predictions([A, A, B], [A, None, B])
    assert r.per_label[A].recall == 0.5 and r.per_label[A].precision == 1.0
    assert r.n_unpredicted == 1


def test_zero_prediction_label_scores_zero():
    r = metrics_from_predictions([A, B], [A, A])
    assert r.per_label[B].f1 == 0.0
    assert r.macro_f1 == pytest.approx((2 / 3 + 0) / 2)


def test_metrics_match_naive_on_unrestricted_predictions():
    rng = random.Random(1)
    for _ in range(100):
        gold, pred = checks.random_case(rng)
        r = metrics_from_predictions(gold, pred)
        ref, f1, fpr = checks.naive_metrics(gold, pred)
        assert {lab: (m.precision, m.recall, m.f1, m.fpr) for lab, m in r.per_label.items()} == ref
        assert (r.macro_f1, r.macro_fpr) == (f1, fpr)


def test_evaluate_matches_oracle():
    assert checks.metric_mismatches(100, seed=3) == 0


def test_evaluate_restricts_to_intersection():
    model = checks.toy_model()
    bench = [LabeledSentence("абв где", checks.LABEL_B), LabeledSentence("абв", checks.LABEL_B)]
    r = evaluate(model, bench)
    assert set(r.per_label) == {checks.LABEL_B} and r.macro_f1 == 1.0


def test_evaluate_errors():
    model = checks.toy_model()
    with pytest.raises(ValueError):
        evaluate(model, [])
    with pytest.raises(ValueError):
        evaluate(model, [LabeledSentence("x", LabelId("zzz", "Latn"))])


def test_result_outputs():
    r = metrics_from_predictions([A, A, B], [A, B, B])
    payload = json.loads(r.dumps())
    assert set(payload["per_label"]) == {"aaa_Latn", "bbb_Latn"}
    table = r.to_table().splitlines()
    assert table[0].split()[:2] == ["label", "n"]
    f1s = [float(line.split()[4]) for line in table[1:-1]]
    assert f1s == sorted(f1s)


def test_contamination_examples():
    corpus = ["the cat sat on the mat today", "a b c d", "one two three four x"]
    assert contamination_mask(["the cat sat on the mat today"], corpus) == [True]
    # 4-grams "one two three four" and "two three four five" in different sentences
    corpus2 = ["one two three four", "two three four five"]
    assert contamination_mask(["one two three four five"], corpus2) == [False]
    # shares only trigrams
    assert contamination_mask(["one two three zz"], ["one two three", "two three zz"]) == [False]
    # short sentences fall back to substring containment
    assert contamination_mask(["cat sat", "dog"], corpus) == [True, False]


def test_contamination_case_sensitive_and_punctuation_kept():
    corpus = ["The cat sat down"]
    assert contamination_mask(["the cat sat down", "The cat sat down."], corpus) == [False, False]


def test_contamination_matches_naive():
    assert checks.contamination_mismatches(200, seeds=(5,)) == 0


def _corpus(sizes):
    out = []
    for k, n in enumerate(sizes):
        lab = LabelId("abcdefghij"[k] * 3, "Latn")
        out.extend(LabeledSentence(f"{lab}-{i}", lab) for i in range(n))
    return out


def test_sample_cap():
    corpus = _corpus([40, 5000])
    sample = build_test_sample(corpus, 1000, seed=0)
    counts = Counter(s.label for s in sample)
    assert counts[LabelId("aaa", "Latn")] == 40 and counts[LabelId("bbb", "Latn")] == 1000
    assert len(set(sample)) == len(sample)
    assert build_test_sample(corpus, 1000, seed=0) == sample
    assert build_test_sample(corpus, 1000, seed=1) != sample
    with pytest.raises(ValueError):
        build_test_sample(corpus, 0)


@pytest.mark.parametrize("n, expected", [(10, (8, 1, 1)), (1, (0, 0, 1)), (9, (7, 0, 2)), (100, (80, 10, 10)), (0, (0, 0, 0))])
def test_split_counts(n, expected):
    train, valid, test = split_corpus(_corpus([n]), seed=0)
    assert (len(train), len(valid), len(test)) == expected


@given(st.lists(st.integers(0, 40), min_size=1, max_size=5), st.integers(0, 5))
def test_split_is_partition(sizes, seed):
    corpus = _corpus(sizes)
    train, valid, test = split_corpus(corpus, seed)
    parts = [set(train), set(valid), set(test)]
    assert sum(map(len, parts)) == len(corpus)
    assert set().union(*parts) == set(corpus)
    for lab, n in Counter(s.label for s in corpus).items():
        assert sum(s.label == lab for s in train) == n * 8 // 10
        assert sum(s.label == lab for s in valid) == n // 10
