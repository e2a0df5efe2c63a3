"""Ambiguity, recall and precision against gold annotations.

    ambiguity = parses / tokens
    recall    = correctly disambiguated tokens / tokens
    precision = correctly disambiguated tokens / parses

A token is correct when its gold parse is still among its parses.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

BUCKETS = ("0", "1", "2", "3", "4", ">4")


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class EvalReport:
    token_count: int
    parse_count: int
    correct_count: int
    distribution: dict

    @property
    def ambiguity(self) -> Fraction:
        return Fraction(self.parse_count, self.token_count)

    @property
    def recall(self) -> Fraction:
        return Fraction(self.correct_count, self.token_count)

    @property
    def precision(self) -> Fraction:
        return Fraction(self.correct_count, self.parse_count)

    @property
    def fully_disambiguated(self) -> Fraction:
        return self.distribution["1"]

    def record(self, **extra) -> dict:
        rec = dict(extra)
        rec.update(
            tokens=self.token_count,
            parses=self.parse_count,
            correct=self.correct_count,
            ambiguity=str(self.ambiguity),
            recall=str(self.recall),
            precision=str(self.precision),
            ambiguity_f=round(float(self.ambiguity), 6),
            recall_f=round(float(self.recall), 6),
            precision_f=round(float(self.precision), 6),
            distribution={k: str(v) for k, v in self.distribution.items()},
        )
        return rec


def bucket(n: int) -> str:
    return ">4" if n > 4 else str(n)


def distribution_from_counts(counts) -> dict:
    """Bucket fractions from an iterable of per-token parse counts."""
    tally = dict.fromkeys(BUCKETS, 0)
    total = 0
    for n in counts:
        tally[bucket(n)] += 1
        total += 1
    if not total:
        raise EvaluationError("no tokens")
    return {k: Fraction(v, total) for k, v in tally.items()}


def parse_distribution(sents) -> dict:
    return distribution_from_counts(len(t.parses) for s in sents for t in s)


def evaluate(output, gold) -> EvalReport:
    if len(output) != len(gold):
        raise EvaluationError(f"output has {len(output)} sentences, gold has {len(gold)}")
    tokens = parses = correct = 0
    for si, (out_sent, gold_sent) in enumerate(zip(output, gold)):
        if len(out_sent) != len(gold_sent):
            raise EvaluationError(
                f"sentence {si}: output has {len(out_sent)} tokens, gold has {len(gold_sent)}")
        for ti, (tok, ref) in enumerate(zip(out_sent, gold_sent)):
            if tok.surface != ref.surface:
                raise EvaluationError(
                    f"sentence {si} token {ti}: surface {tok.surface!r} does not match gold {ref.surface!r}")
            if len(ref.parses) != 1:
                raise EvaluationError(
                    f"sentence {si} token {ti}: gold has {len(ref.parses)} parses, expected exactly 1")
            tokens += 1
            parses += len(tok.parses)
            if ref.parses[0] in tok.parses:
                correct += 1
    if not tokens:
        raise EvaluationError("no tokens")
    return EvalReport(tokens, parses, correct, parse_distribution(output))


def _m_label(m) -> str:
    if m is None:
        return "-"
    text = f"{float(m):g}"
    return text if "." in text else text + ".0"


def format_grid(text_name: str, results) -> str:
    """Rows of recall/precision (percent) and ambiguity per stage, one column per m.

    ``results`` maps ``(stage, m)`` to :class:`EvalReport`; order of first
    appearance fixes row and column order.
    """
    stages, ms = [], []
    for stage, m in results:
        if stage not in stages:
            stages.append(stage)
        if m not in ms:
            ms.append(m)
    header = f"{'TEXT':<12}{'STAGE':<8}{'':<6}" + "".join(f"{_m_label(m):>9}" for m in ms)
    lines = [header, "-" * len(header)]
    for stage in stages:
        rows = (("Rec.", lambda r: f"{100 * float(r.recall):.2f}"),
                ("Prec.", lambda r: f"{100 * float(r.precision):.2f}"),
                ("Amb.", lambda r: f"{float(r.ambiguity):.3f}"))
        for k, (label, fmt) in enumerate(rows):
            cells = "".join(f"{fmt(results[stage, m]) if (stage, m) in results else '-':>9}" for m in ms)
            name = text_name if stage == stages[0] and k == 0 else ""
            lines.append(f"{name:<12}{stage if k == 0 else '':<8}{label:<6}{cells}")
    return "\n".join(lines) + "\n"


def format_records(text_name: str, results) -> str:
    return "".join(json.dumps(r.record(text=text_name, stage=stage, m=str(m)), sort_keys=True) + "\n"
                   for (stage, m), r in results.items())


def format_distribution(text_name: str, dist: dict, token_count: int) -> str:
    cells = "".join(f"{100 * float(dist[b]):>8.2f}%" for b in BUCKETS)
    head = "".join(f"{b:>9}" for b in BUCKETS)
    return f"{'TEXT':<12}{'TOKENS':>8}{head}\n{text_name:<12}{token_count:>8}{cells}\n"
