"""Replay command line.

    replay eval --corpus corpus.ndjson --scorer baseline --threshold 0.5 [--json|--tsv]
    replay session --fixtures fixtures/pages --config talktriage.ini --out ranking.json

Exit codes: 0 ok, 1 validation problem, 2 runtime failure.
"""

import argparse
import sys

from talktriage.errors import ConfigurationError, CorpusValidationError, TalkTriageError
from talktriage.forecast.scorer import builtin_descriptor, external_descriptor
from talktriage.ingest.config import default_config, load_config
from talktriage.replay import (
    ConstantEvalScorer,
    DescriptorEvalScorer,
    OracleEvalScorer,
    load_corpus,
    replay_corpus,
)
from talktriage.session import run_fixture_session

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def make_eval_scorer(spec: str):
    """Scorer ids: baseline | oracle | constant:<v> | external:<url>."""
    if spec == "baseline":
        return DescriptorEvalScorer(builtin_descriptor())
    if spec == "oracle":
        return OracleEvalScorer()
    if spec.startswith(("constant:", "constant-")):
        value = float(spec[len("constant") + 1 :])
        if not 0.0 <= value <= 1.0:
            raise ConfigurationError(f"constant scorer value outside [0, 1]: {value}")
        return ConstantEvalScorer(value)
    if spec.startswith("external:"):
        return DescriptorEvalScorer(external_descriptor(spec.split(":", 1)[1]))
    raise ConfigurationError(f"unknown scorer: {spec!r}")


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        corpus = load_corpus(args.corpus)
        scorer = make_eval_scorer(args.scorer)
    except (CorpusValidationError, ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, CorpusValidationError) and exc.conversation_ids:
            for conv_id in exc.conversation_ids:
                print(f"  offending conversation: {conv_id}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        report = replay_corpus(corpus, scorer, args.threshold, parallel=args.parallel)
    except TalkTriageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(report.to_tsv() if args.tsv else report.to_json())
    return EXIT_OK


def cmd_session(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config) if args.config else default_config()
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    store_dir = args.store_dir or f"{args.out}.store"
    try:
        store = run_fixture_session(args.fixtures, config, args.out, store_dir)
        store.close()
    except TalkTriageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"ranking written to {args.out}; store persisted at {store_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="replay", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    eval_parser = sub.add_parser("eval", help="score a labeled corpus")
    eval_parser.add_argument("--corpus", required=True)
    eval_parser.add_argument("--scorer", required=True)
    eval_parser.add_argument("--threshold", type=float, required=True)
    output = eval_parser.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", default=True)
    output.add_argument("--tsv", action="store_true")
    eval_parser.add_argument("--parallel", action="store_true")
    eval_parser.set_defaults(func=cmd_eval)

    session_parser = sub.add_parser("session", help="run the pipeline over fixtures")
    session_parser.add_argument("--fixtures", required=True)
    session_parser.add_argument("--config")
    session_parser.add_argument("--out", required=True)
    session_parser.add_argument("--store-dir")
    session_parser.set_defaults(func=cmd_session)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
