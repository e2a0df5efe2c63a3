"""Order-independent rule voting and parallel threshold selection.

Every rule is tried at every start position of a sentence. Where each of its
constraints subsumes at least one parse of the corresponding token, all such
parses gain the rule's vote. Only once the whole tally is in does each token
keep the parses with ``vote >= v_l + m * (v_h - v_l)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .featstruct import subsumes
from .ruleset import ConstraintRule


def as_fraction(x) -> Fraction:
    """Exact rational from int/str/Fraction; floats go through their repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class TraceEntry:
    rule_id: str
    start: int
    matched: tuple  # per offset, the sorted parse indices credited
    vote: Fraction


@dataclass
class VoteTally:
    votes: list  # votes[token][parse]
    trace: list | None = field(default=None)

    def row(self, i: int) -> list:
        return self.votes[i]

    def frozen(self) -> tuple:
        return tuple(tuple(row) for row in self.votes)


def match_rule_at(rule: ConstraintRule, sent, i: int):
    """Per-offset matching parse index sets, or ``None`` if some constraint fails.

    ``i`` is the 0-based start position.
    """
    n = len(rule.constraints)
    if i < 0 or i + n > len(sent):
        return None
    matched = []
    for k, c in enumerate(rule.constraints):
        hits = tuple(j for j, p in enumerate(sent[i + k].parses) if subsumes(c, p))
        if not hits:
            return None
        matched.append(hits)
    return tuple(matched)


def apply_rules(rules, sent, trace: bool = False) -> VoteTally:
    votes = [[Fraction(0)] * len(t.parses) for t in sent]
    entries = [] if trace else None
    for rule in rules:
        vote = rule.vote
        for i in range(len(sent) - len(rule.constraints) + 1):
            matched = match_rule_at(rule, sent, i)
            if matched is None:
                continue
            for k, hits in enumerate(matched):
                row = votes[i + k]
                for j in hits:
                    row[j] += vote
            if entries is not None:
                entries.append(TraceEntry(rule.id, i, matched, vote))
    return VoteTally(votes, entries)


def selection_threshold(votes, m) -> Fraction:
    lo, hi = min(votes), max(votes)
    return lo + as_fraction(m) * (hi - lo)


def select_parses(votes, m) -> list:
    """Indices of parses whose vote reaches the interpolated threshold."""
    m = as_fraction(m)
    if not 0 <= m <= 1:
        raise ValueError(f"m must lie in [0, 1], got {m}")
    if not votes:
        raise ValueError("token has no parses")
    threshold = selection_threshold(votes, m)
    return [j for j, v in enumerate(votes) if v >= threshold]


def disambiguate(rules, sent, m=1, trace: bool = False):
    """Vote, then select on every token from the frozen tally.

    Returns ``(sentence, tally, selections)``.
    """
    tally = apply_rules(rules, sent, trace=trace)
    selections = [select_parses(row, m) for row in tally.votes]
    out = tuple(t.keep(sel) for t, sel in zip(sent, selections))
    return out, tally, selections
