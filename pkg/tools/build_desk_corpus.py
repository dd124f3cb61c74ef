"""Build the frozen desk-scale natural-language corpus under tests/data/.

Sentences are drawn word by word from the wordfreq frequency lists (top
3000 words per language, sampled in proportion to frequency). This is not
running text, but it has the character and word statistics the classifier
learns from, and it is permissively licensed and fully reproducible.

    pip install wordfreq
    python tools/build_desk_corpus.py
"""
from __future__ import annotations

import argparse
import gzip
import random
from pathlib import Path

import wordfreq

LANGUAGES = {
    "en": "eng_Latn",
    "de": "deu_Latn",
    "fr": "fra_Latn",
    "es": "spa_Latn",
    "pl": "pol_Latn",
    "tr": "tur_Latn",
    "ru": "rus_Cyrl",
    "el": "ell_Grek",
    "ar": "arb_Arab",
    "hi": "hin_Deva",
}
FULL_STOP = {"hi": "।"}


def _fix(lang: str, word: str) -> str:
    # wordfreq folds Greek final sigma
    if lang == "el" and word.endswith("σ"):
        return word[:-1] + "ς"
    return word


def sentences(lang: str, n: int, seed: int, top: int = 3000) -> list[str]:
    words = [_fix(lang, w) for w in wordfreq.top_n_list(lang, top)]
    weights = [wordfreq.word_frequency(w, lang) or 1e-9 for w in wordfreq.top_n_list(lang, top)]
    rng = random.Random(f"desk:{lang}:{seed}")
    out = []
    for _ in range(n):
        toks = rng.choices(words, weights, k=rng.randint(6, 18))
        text = " ".join(toks)
        out.append(text[:1].upper() + text[1:] + FULL_STOP.get(lang, "."))
    return out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-language", type=int, default=2500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", default=str(Path(__file__).resolve().parents[1] / "tests/data/desk_natural.txt.gz"))
    args = ap.parse_args(argv)
    lines = []
    for lang, label in LANGUAGES.items():
        lines.extend(f"__label__{label} {s}" for s in sentences(lang, args.per_language, args.seed))
    with open(args.output, "wb") as raw, gzip.GzipFile(fileobj=raw, mode="wb", mtime=0, filename="") as fh:
        fh.write(("\n".join(lines) + "\n").encode("utf-8"))
    print(f"wrote {len(lines)} sentences to {args.output}")


if __name__ == "__main__":
    main()
