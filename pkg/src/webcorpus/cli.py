"""Command-line entry point: ``webcorpus <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__


def _cmd_train(args) -> int:
    from .lid import TrainConfig, read_corpus, save, train

    corpus = [s for path in args.corpus for s in read_corpus(path)]
    cfg = TrainConfig(
        min_count=args.min_count,
        min_count_label=args.min_count_label,
        bucket=args.bucket,
        minn=args.minn,
        maxn=args.maxn,
        dim=args.dim,
        epoch=args.epoch,
        lr=args.lr,
    )
    model = train(corpus, cfg, seed=args.seed, verbose=True)
    save(model, args.output)
    print(f"trained on {len(corpus)} sentences, {len(model.labels)} labels -> {args.output}")
    return 0


def _cmd_predict(args) -> int:
    from .lid import load

    model = load(args.model)
    allowed = args.allowed.split(",") if args.allowed else None
    stream = open(args.input, encoding="utf-8") if args.input else sys.stdin
    with stream:
        for line in stream:
            text = line.rstrip("\n")
            preds = model.predict_constrained(text, allowed, k=args.k) if allowed else model.predict(text, args.k)
            if not preds:
                print("__empty__")
                continue
            print(" ".join(f"__label__{p.label} {p.probability:.6f}" for p in preds))
    return 0


def _cmd_synth(args) -> int:
    from .lid import write_corpus
    from .synth import gen_und, gen_zxx

    if args.what == "und":
        if not args.script:
            raise SystemExit("synth und needs --script")
        sentences = gen_und(args.script, args.n, seed=args.seed)
    else:
        carrier = None
        if args.carrier:
            carrier = Path(args.carrier).read_text(encoding="utf-8").splitlines()
        sentences = gen_zxx(args.kind, args.n, seed=args.seed, carrier=carrier, rate=args.rate)
    n = write_corpus(sentences, args.output)
    print(f"wrote {n} sentences to {args.output}")
    return 0


def _cmd_run(args) -> int:
    from .content_class import load_blocklists
    from .filters import FilterConfig
    from .lid import load
    from .pipeline import PipelineConfig, run, write_report

    cfg = PipelineConfig(
        filters=FilterConfig.from_file(args.filters_config) if args.filters_config else FilterConfig(),
        blocklists=load_blocklists(args.blocklists),
        threshold=args.threshold,
        seed=args.seed,
    )
    report = run(args.input, args.output, load(args.model), cfg, workers=args.workers)
    if args.report:
        write_report(report, args.report)
    sys.stdout.write(report.to_table())
    return 0


def _cmd_eval(args) -> int:
    from .evaluation import build_test_sample, evaluate
    from .lid import load, read_corpus

    bench = [s for path in args.benchmark for s in read_corpus(path)]
    if args.cap:
        bench = build_test_sample(bench, args.cap, args.seed)
    result = evaluate(load(args.model), bench)
    sys.stdout.write(result.to_table())
    if args.json:
        Path(args.json).write_text(result.dumps() + "\n", encoding="utf-8")
    return 0


def _read_input(path) -> str:
    if path and path != "-":
        return Path(path).read_text(encoding="utf-8")
    return sys.stdin.read()


def _cmd_hash(args) -> int:
    from .tlsh import compute_digest, digest_distance

    if args.distance:
        print(digest_distance(*args.distance))
        return 0
    for path in args.files or ["-"]:
        text = _read_input(path)
        if args.strip:
            text = text.rstrip("\n")
        print(f"{compute_digest(text) or '-'}\t{path}")
    return 0


def _cmd_scrub(args) -> int:
    from .pii import scrub

    text, report = scrub(_read_input(args.input), args.seed)
    sys.stdout.write(text)
    print(f"emails {report.emails_replaced} ips {report.ips_replaced}", file=sys.stderr)
    return 0


def _cmd_walltime(args) -> int:
    from .pipeline import WalltimeParams, estimate_walltime

    hours = estimate_walltime(
        WalltimeParams(args.documents, args.jobs, args.sentences, args.sentences_per_second, args.documents_per_second)
    )
    print(f"{hours:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    from .lid import TrainConfig
    from .pipeline import DEFAULT_THRESHOLD
    from .synth import NoiseKind

    d = TrainConfig()
    parser = argparse.ArgumentParser(prog="webcorpus", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a language identifier from __label__ lines")
    p.add_argument("corpus", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--min-count", type=int, default=d.min_count)
    p.add_argument("--min-count-label", type=int, default=d.min_count_label)
    p.add_argument("--bucket", type=int, default=d.bucket)
    p.add_argument("--minn", type=int, default=d.minn)
    p.add_argument("--maxn", type=int, default=d.maxn)
    p.add_argument("--dim", type=int, default=d.dim)
    p.add_argument("--epoch", type=int, default=d.epoch)
    p.add_argument("--lr", type=float, default=d.lr)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="top-k labels for each input line")
    p.add_argument("--model", required=True)
    p.add_argument("--input")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--allowed", help="comma-separated label subset")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("synth", help="generate und/zxx training sentences")
    p.add_argument("what", choices=["und", "zxx"])
    p.add_argument("--script")
    p.add_argument("--kind", choices=[k.value for k in NoiseKind], default=NoiseKind.MISRENDERED_PDF.value)
    p.add_argument("--carrier", help="text file, one carrier sentence per line")
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("-n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("run", help="process shards into per-language partitions")
    p.add_argument("--model", required=True)
    p.add_argument("--input", nargs="+", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--filters-config")
    p.add_argument("--blocklists")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("eval", help="F1/FPR of a model on a labelled benchmark")
    p.add_argument("--model", required=True)
    p.add_argument("benchmark", nargs="+")
    p.add_argument("--cap", type=int, default=0, help="sample at most this many sentences per label")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("hash", help="TLSH digests of files, or the distance of two digests")
    p.add_argument("files", nargs="*")
    p.add_argument("--distance", nargs=2, metavar="DIGEST")
    p.add_argument("--strip", action="store_true", help="drop trailing newlines before hashing")
    p.set_defaults(func=_cmd_hash)

    p = sub.add_parser("scrub", help="replace emails and public IPv4 addresses")
    p.add_argument("input", nargs="?")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_scrub)

    p = sub.add_parser("walltime", help="estimated LID hours for a crawl")
    p.add_argument("--documents", type=float, required=True)
    p.add_argument("--jobs", type=float, required=True)
    p.add_argument("--sentences", type=float, required=True, help="mean sentences per document")
    p.add_argument("--sentences-per-second", type=float, required=True)
    p.add_argument("--documents-per-second", type=float, required=True)
    p.set_defaults(func=_cmd_walltime)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"webcorpus {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
