"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
from __future__ import annotations

import json
import time
from itertools import combinations
from pathlib import Path

import pytest

import checks
import desk
import filter_cases as fc
import golden
from webcorpus.evaluation import evaluate
from webcorpus.filters import annotate, decide_keep
from webcorpus.pii import EMAIL_SENTINELS, IP_SENTINELS
from webcorpus.pipeline import WalltimeParams, estimate_walltime
from webcorpus.synth import NoiseKind, gen_und, gen_zxx
from webcorpus.tlsh import compute_digest, digest_distance

pytestmark = pytest.mark.acceptance


@pytest.fixture
def verdict(capsys):
    def report(number: int, name: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2} {name}: {detail}")
        assert ok, detail

    return report


def test_01_walltime(verdict):
    hours = estimate_walltime(WalltimeParams(3.16e9, 48, 20, 1379, 245))
    verdict(1, "walltime", 339.4 <= hours <= 340.4, f"{hours:.3f} h, want [339.4, 340.4]")


@pytest.mark.slow
def test_02_desk_f1_fpr(verdict):
    start = time.perf_counter()
    train, _, test = desk.splits()
    model = desk.model()
    result = evaluate(model, test)
    elapsed = time.perf_counter() - start
    ok = result.macro_f1 >= 0.95 and result.macro_fpr <= 0.01 and elapsed < 600
    verdict(
        2,
        "desk macro-F1/FPR",
        ok,
        f"{len(model.labels)} labels, {len(train)} train / {len(test)} test, macro-F1 {result.macro_f1:.4f} (>= 0.95), "
        f"macro-FPR {result.macro_fpr:.6f} (<= 0.01), {elapsed:.0f} s (< 600)",
    )


@pytest.mark.slow
def test_03_open_set_rejection(verdict):
    model = desk.model()
    und = [s for script in desk.UND_SCRIPTS for s in gen_und(script, 200, seed=1)]
    und_ok = sum(model.predict(s.text, 1)[0].label.is_und for s in und) / len(und)
    carrier = desk.held_out_carrier()
    kinds = list(NoiseKind)
    zxx = []
    for i, kind in enumerate(kinds):
        zxx.extend(gen_zxx(kind, 1000 // len(kinds) + (i < 1000 % len(kinds)), seed=1, carrier=carrier))
    zxx_ok = sum(model.predict(s.text, 1)[0].label == s.label for s in zxx) / len(zxx)
    verdict(
        3,
        "und/zxx rejection",
        len(und) == 1000 and len(zxx) == 1000 and und_ok >= 0.99 and zxx_ok >= 0.95,
        f"und {und_ok:.3f} of {len(und)} (>= 0.99), zxx {zxx_ok:.3f} of {len(zxx)} (>= 0.95)",
    )


def test_04_softmax_argmax(verdict):
    model = checks.toy_model()
    norm = checks.softmax_violations(model, n=1000, tol=1e-6)
    arg = checks.argmax_violations(model, n=1000)
    verdict(4, "softmax/argmax", norm == 0 and arg == 0, f"{norm} normalisation and {arg} argmax violations in 1000 + 1000")


def test_05_gradient_check(verdict):
    err = checks.gradient_check(h=1e-4)
    verdict(5, "gradient check", err <= 1e-4, f"max relative error {err:.2e} (<= 1e-4)")


def test_06_filter_boundaries(verdict):
    failures = []
    for warning, below, at in fc.CASES:
        if warning in annotate(**below) or warning not in annotate(**at):
            failures.append(warning.value)
    for warnings, label, keep in fc.KEEP_CASES:
        if decide_keep(warnings, label) is not keep:
            failures.append(f"keep{sorted(w.value for w in warnings)}/{label}")
    covered = len({c[0] for c in fc.CASES})
    verdict(
        6,
        "filter boundaries",
        not failures and covered == 16,
        f"{len(fc.CASES)} boundary pairs over {covered} warnings, {len(fc.KEEP_CASES)} keep cases, failures: {failures or 'none'}",
    )


def test_07_metric_oracle(verdict):
    bad = checks.metric_mismatches(100, seed=0)
    verdict(7, "metric oracle", bad == 0, f"{bad} mismatches in 100 random 5-label cases")


def test_08_contamination_oracle(verdict):
    bad = checks.contamination_mismatches(200, seeds=(0,))
    verdict(8, "contamination oracle", bad == 0, f"{bad} mismatches on a 200x200 fixture")


def test_09_digest_vectors(verdict):
    vectors = json.loads((Path(__file__).parent / "data/tlsh_vectors.json").read_text(encoding="utf-8"))
    got = [compute_digest(t) for t in vectors["inputs"]]
    exact = sum(g == w for g, w in zip(got, vectors["digests_256"]))
    present = [d for d in got if d]
    self_zero = all(digest_distance(d, d) == 0 for d in present)
    symmetric = all(digest_distance(a, b) == digest_distance(b, a) for a, b in combinations(present, 2))
    ok = exact == len(vectors["inputs"]) == 10 and self_zero and symmetric
    verdict(9, "digest vectors", ok, f"{exact}/10 digests exact, self-distance 0: {self_zero}, symmetric: {symmetric}")


def test_10_golden_run(verdict, tmp_path):
    start = time.perf_counter()
    problems = golden.verify_run(tmp_path)
    elapsed = time.perf_counter() - start
    verdict(10, "golden end-to-end run", not problems, f"{len(golden.documents())} documents, {elapsed:.1f} s, problems: {problems or 'none'}")


def test_11_pii(verdict):
    props = checks.pii_property_violations(1000, seed=0)
    sentinels_ok = EMAIL_SENTINELS == ("email@example.com", "firstname.lastname@example.com") and IP_SENTINELS == (
        "22.214.171.124",
        "126.96.36.199",
        "188.8.131.52",
        "184.108.40.206",
        "220.127.116.11",
        "18.104.22.168",
    )
    verdict(11, "PII properties", sentinels_ok and not any(props.values()), f"violations {props} over 1000 texts, sentinels exact: {sentinels_ok}")
