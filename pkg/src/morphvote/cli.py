"""Command line front end: ``morphvote {disambiguate,evaluate,explain,distribution}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import corpus as corpus_io
from .engine import as_fraction
from .evaluation import evaluate, format_distribution, format_grid, format_records, parse_distribution
from .lattice import format_lattice
from .pipeline import PipelineConfig, explain_sentence, run_pipeline
from .ruleset import DEFAULT_WEIGHTS, load_rule_file, load_weight_file
from .stats import DEFAULT_CTX_MIN, DEFAULT_CTX_RATIO, DEFAULT_ROOT_RATIO, read_root_freq_file

log = logging.getLogger("morphvote")

DEFAULT_SWEEP = "1.0,0.95,0.8,0.6"


class ConfigError(ValueError):
    pass


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {path}")
    return p


def _fraction(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _sweep(text: str) -> list:
    try:
        return [as_fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad m list: {text!r}") from None


def _add_rule_args(p, required=True):
    p.add_argument("--rules", type=_existing, required=required, help="rule file")
    p.add_argument("--weights", type=_existing, help="weight config (default: value gen 4, stem_scale 2)")
    p.add_argument("--corpus", type=_existing, required=True, help="analyzed corpus")


def _add_stage_args(p):
    p.add_argument("--mode", choices=("token", "path"), default="token")
    p.add_argument("--root-stats", type=_existing, metavar="FILE", help="root<TAB>count table; enables root pruning")
    p.add_argument("--root-ratio", type=_fraction, default=DEFAULT_ROOT_RATIO, metavar="Q")
    p.add_argument("--context-stats", action="store_true", help="enable context resolution")
    p.add_argument("--ctx-ratio", type=_fraction, default=DEFAULT_CTX_RATIO, metavar="Q")
    p.add_argument("--ctx-min", type=int, default=DEFAULT_CTX_MIN, metavar="K")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morphvote", description="Constraint-voting morphological disambiguation.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disambiguate", help="vote and select parses")
    _add_rule_args(p)
    _add_stage_args(p)
    p.add_argument("--m", type=_fraction, default=Fraction(1))
    p.add_argument("--trace", action="store_true", help="record every rule firing")
    p.add_argument("--trace-output", type=Path, help="where to write the trace (default: stderr)")
    p.add_argument("--lattice-dump", type=Path, help="path mode: write scored lattices here")
    p.add_argument("--output", type=Path, help="output corpus (default: stdout)")

    p = sub.add_parser("evaluate", help="score against gold over an m sweep")
    _add_rule_args(p, required=False)
    _add_stage_args(p)
    p.add_argument("--gold", type=_existing, required=True)
    p.add_argument("--m-sweep", type=_sweep, default=_sweep(DEFAULT_SWEEP))
    p.add_argument("--name", help="text label in the report (default: corpus file stem)")
    p.add_argument("--output", type=Path, help="grid report (default: stdout)")
    p.add_argument("--report", type=Path, help="machine-readable JSON lines")

    p = sub.add_parser("explain", help="trace the votes on one sentence")
    _add_rule_args(p)
    p.add_argument("--sentence", type=int, required=True, help="0-based sentence index")
    p.add_argument("--m", type=_fraction, default=Fraction(1))
    p.add_argument("--trace", action="store_true")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("distribution", help="parses-per-token distribution")
    p.add_argument("--corpus", type=_existing, required=True)
    p.add_argument("--name")
    p.add_argument("--output", type=Path)
    return parser


def _load_rules(args):
    weights = load_weight_file(args.weights) if args.weights else DEFAULT_WEIGHTS
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rules = load_rule_file(args.rules, weights)
    for w in caught:
        log.warning("%s", w.message)
    return rules


def _config(args, m) -> PipelineConfig:
    root_freqs = read_root_freq_file(args.root_stats) if args.root_stats else None
    return PipelineConfig(m=m, mode=args.mode, root_freqs=root_freqs, root_ratio=args.root_ratio,
                          context=args.context_stats, ctx_ratio=args.ctx_ratio, ctx_min=args.ctx_min,
                          trace=getattr(args, "trace", False), workers=args.workers)


def _emit(path, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _format_trace(results) -> str:
    lines = []
    for si, r in enumerate(results):
        for e in r.trace or ():
            lines.append(json.dumps({"sentence": si, "rule": e.rule_id, "start": e.start,
                                     "matched": [list(h) for h in e.matched], "vote": str(e.vote)}))
        for f in r.path_trace or ():
            lines.append(json.dumps({"sentence": si, "rule": f.rule_id, "start": f.start,
                                     "combination": list(f.combination), "share": str(f.share)}))
    return "".join(line + "\n" for line in lines)


def cmd_disambiguate(args):
    if not 0 <= args.m <= 1:
        raise ConfigError(f"--m must lie in [0, 1], got {args.m}")
    rules = _load_rules(args)
    corpus = corpus_io.read_corpus_file(args.corpus)
    result = run_pipeline(rules, corpus, _config(args, args.m))
    text = corpus_io.format_corpus(result.final)
    if args.trace:
        trace = _format_trace(result.sentences)
        if args.trace_output:
            args.trace_output.write_text(trace, encoding="utf-8")
        else:
            sys.stderr.write(trace)
    if args.lattice_dump:
        if args.mode != "path":
            raise ConfigError("--lattice-dump needs --mode path")
        dump = "\n".join(format_lattice(r.lattice) for r in result.sentences)
        args.lattice_dump.write_text(dump, encoding="utf-8")
    _emit(args.output, text)


def evaluation_results(rules, corpus, gold, sweep, args) -> dict:
    results = {}
    if rules is None:
        results["input", None] = evaluate(corpus, gold)
        return results
    if not sweep:
        raise ConfigError("empty --m-sweep")
    for m in sweep:
        if not 0 <= m <= 1:
            raise ConfigError(f"m values must lie in [0, 1], got {m}")
        run = run_pipeline(rules, corpus, _config(args, m))
        for stage, sents in run.stages.items():
            results[stage, m] = evaluate(sents, gold)
    # stage-major order for the report
    return dict(sorted(results.items(), key=lambda kv: list(run.stages).index(kv[0][0])))


def cmd_evaluate(args):
    corpus = corpus_io.read_corpus_file(args.corpus)
    gold = corpus_io.read_corpus_file(args.gold)
    rules = _load_rules(args) if args.rules else None
    name = args.name or args.corpus.stem
    results = evaluation_results(rules, corpus, gold, args.m_sweep, args)
    grid = format_grid(name, results)
    records = format_records(name, results)
    if args.report:
        args.report.write_text(records, encoding="utf-8")
    _emit(args.output, grid)


def cmd_explain(args):
    if not args.trace:
        raise ConfigError("explain needs tracing; rerun with --trace")
    rules = _load_rules(args)
    corpus = corpus_io.read_corpus_file(args.corpus)
    if not 0 <= args.sentence < len(corpus):
        raise ConfigError(f"sentence index {args.sentence} out of range (corpus has {len(corpus)})")
    if not 0 <= args.m <= 1:
        raise ConfigError(f"--m must lie in [0, 1], got {args.m}")
    _emit(args.output, explain_sentence(rules, corpus[args.sentence], args.m, args.sentence))


def cmd_distribution(args):
    corpus = corpus_io.read_corpus_file(args.corpus, allow_unparsed=True)
    dist = parse_distribution(corpus)
    tokens = sum(len(s) for s in corpus)
    _emit(args.output, format_distribution(args.name or args.corpus.stem, dist, tokens))


COMMANDS = {
    "disambiguate": cmd_disambiguate,
    "evaluate": cmd_evaluate,
    "explain": cmd_explain,
    "distribution": cmd_distribution,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"morphvote: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
