"""Fixed-order pipeline: voting, then root pruning, then context resolution."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import stats
from .engine import apply_rules, as_fraction, select_parses, selection_threshold
from .lattice import apply_rules_path, best_path, build_lattice


@dataclass
class PipelineConfig:
    m: Fraction = Fraction(1)
    mode: str = "token"
    root_freqs: stats.RootFreqTable | None = None
    root_ratio: Fraction = stats.DEFAULT_ROOT_RATIO
    context: bool = False
    ctx_ratio: Fraction = stats.DEFAULT_CTX_RATIO
    ctx_min: int = stats.DEFAULT_CTX_MIN
    trace: bool = False
    workers: int = 1

    def __post_init__(self):
        self.m = as_fraction(self.m)
        self.root_ratio = as_fraction(self.root_ratio)
        self.ctx_ratio = as_fraction(self.ctx_ratio)
        if not 0 <= self.m <= 1:
            raise ValueError(f"m must lie in [0, 1], got {self.m}")
        if self.mode not in ("token", "path"):
            raise ValueError(f"mode must be 'token' or 'path', got {self.mode!r}")
        if not 0 < self.root_ratio <= 1:
            raise ValueError(f"root ratio must lie in (0, 1], got {self.root_ratio}")
        if self.ctx_ratio <= 1:
            raise ValueError(f"context ratio must exceed 1, got {self.ctx_ratio}")
        if self.ctx_min < 1:
            raise ValueError(f"context minimum count must be >= 1, got {self.ctx_min}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SentenceResult:
    sentence: tuple  # after voting/selection
    votes: list  # votes[token][parse] over the input parses
    selections: list  # kept input parse indices per token
    trace: list | None = None
    lattice: object = None
    path_trace: list | None = None


@dataclass
class PipelineResult:
    stages: dict = field(default_factory=dict)  # stage label -> list of sentences
    sentences: list = field(default_factory=list)  # SentenceResult per input sentence

    @property
    def final(self) -> list:
        return list(self.stages.values())[-1]


def vote_sentence(rules, sent, m, mode="token", trace=False) -> SentenceResult:
    if mode == "path":
        path_trace = [] if trace else None
        lat = apply_rules_path(rules, build_lattice(sent), trace=path_trace)
        choice = best_path(lat)
        selections = [[j] for j in choice.parses]
        out = tuple(t.keep(sel) for t, sel in zip(sent, selections))
        return SentenceResult(out, lat.votes(), selections, None, lat, path_trace)
    tally = apply_rules(rules, sent, trace=trace)
    selections = [select_parses(row, m) for row in tally.votes]
    out = tuple(t.keep(sel) for t, sel in zip(sent, selections))
    return SentenceResult(out, tally.votes, selections, tally.trace)


def _vote_job(args):
    return vote_sentence(*args)


def run_pipeline(rules, corpus, cfg: PipelineConfig) -> PipelineResult:
    jobs = [(rules, sent, cfg.m, cfg.mode, cfg.trace) for sent in corpus]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_vote_job, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        results = [_vote_job(j) for j in jobs]

    result = PipelineResult(sentences=results)
    current = [r.sentence for r in results]
    label = "V"
    result.stages[label] = current

    if cfg.root_freqs is not None:
        pruned = []
        for r in results:
            new = []
            for tok, votes, sel in zip(r.sentence, r.votes, r.selections):
                kept_votes = [votes[j] for j in sel]
                new.append(stats.root_prune(tok, kept_votes, cfg.root_freqs, cfg.root_ratio)[0])
            pruned.append(tuple(new))
        current = pruned
        label += "+R"
        result.stages[label] = current

    if cfg.context:
        table = stats.build_context_table(current)
        current = stats.context_pass(current, table, cfg.ctx_ratio, cfg.ctx_min)
        label += "+C"
        result.stages[label] = current
    return result


def explain_sentence(rules, sent, m, index: int = 0) -> str:
    """Human-readable account of every vote cast on one sentence."""
    m = as_fraction(m)
    res = vote_sentence(rules, sent, m, "token", trace=True)
    by_token: dict = {i: [] for i in range(len(sent))}
    for entry in res.trace:
        for k, hits in enumerate(entry.matched):
            by_token[entry.start + k].append((entry, hits))
    lines = [f"sentence {index}: {' '.join(t.surface for t in sent)}"]
    for i, tok in enumerate(sent):
        votes = res.votes[i]
        lines.append(f"token {i} {tok.surface!r} ({len(tok.parses)} parses)")
        if not by_token[i]:
            lines.append("  no rule fired")
        for entry, hits in by_token[i]:
            end = entry.start + len(entry.matched) - 1
            lines.append(f"  rule {entry.rule_id} vote {entry.vote} at positions {entry.start}-{end}"
                         f" credits parses {list(hits)}")
        for j, p in enumerate(tok.parses):
            mark = "*" if j in res.selections[i] else " "
            lines.append(f"  {mark} [{j}] vote {votes[j]}  {p.serialize()}")
        threshold = selection_threshold(votes, m)
        lines.append(f"  v_l={min(votes)} v_h={max(votes)} m={m} threshold={threshold}"
                     f" selected={res.selections[i]}")
        if min(votes) == max(votes):
            lines.append("  all votes tied: all parses retained at any m")
    return "\n".join(lines) + "\n"
