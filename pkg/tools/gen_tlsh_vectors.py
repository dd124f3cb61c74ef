"""Freeze TLSH oracle digests into tests/data/tlsh_vectors.json.

Needs py-tlsh compiled for 256 buckets and 3-byte checksums (build the
sdist after setting BUCKETS_256 and CHECKSUM_3B in its CMake options) and
optionally the stock 128/1 wheel for the second vector set. Run each build
in turn:

    PYTHONPATH=/path/to/tlsh256 python tools/gen_tlsh_vectors.py --layout 256
    python tools/gen_tlsh_vectors.py --layout 128
"""
from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

import tlsh

OUT = Path(__file__).resolve().parents[1] / "tests/data/tlsh_vectors.json"


def inputs() -> list[str]:
    rng = random.Random("tlsh-vectors")
    words = "river stone market lantern copper harbor silent orchard velvet window ember meadow".split()
    base = " ".join(rng.choice(words) for _ in range(120))
    texts = [
        "The quick brown fox jumps over the lazy dog. " * 3,
        base,
        base[:200] + "X" + base[201:],
        " ".join(rng.choice(words) for _ in range(400)),
        "Съешь же ещё этих мягких французских булок, да выпей чаю. " * 2,
        "".join(chr(rng.randrange(0x20, 0x7F)) for _ in range(1000)),
        "ὕαλον ϕαγεῖν δύναμαι· τοῦτο οὔ με βλάπτει. " * 3,
        "\n".join(f"line {i}: {rng.choice(words)} {rng.choice(words)}" for i in range(60)),
        "私はガラスを食べられます。それは私を傷つけません。" * 3,
        "a" * 30 + "b" * 30,
    ]
    return texts


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--layout", choices=["256", "128"], required=True)
    args = ap.parse_args(argv)
    data = json.loads(OUT.read_text()) if OUT.exists() else {}
    texts = inputs()
    digests = []
    for t in texts:
        h = tlsh.hash(t.encode("utf-8"))
        digests.append(None if h in ("", "TNULL") else h[2:].lower() if h.startswith("T1") else h.lower())
    if args.layout == "256" and len(next(d for d in digests if d)) != 140 - 2:
        raise SystemExit("this tlsh build is not the 256-bucket / 3-byte-checksum variant")
    dist = {}
    for i, a in enumerate(digests):
        for j, b in enumerate(digests):
            if a and b and i < j:
                dist[f"{i},{j}"] = tlsh.diff(a.upper(), b.upper()) if args.layout == "256" else tlsh.diff("T1" + a.upper(), "T1" + b.upper())
    data["inputs"] = texts
    data[f"digests_{args.layout}"] = digests
    data[f"distances_{args.layout}"] = dist
    OUT.write_text(json.dumps(data, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {sum(d is not None for d in digests)} digests ({args.layout}) to {OUT}")


if __name__ == "__main__":
    main()
