"""Path voting over the sentence lattice.

States ``0..s`` sit on word boundaries and token ``i`` contributes one arc per
parse from state ``i`` to ``i + 1``. A rule of ``n`` constraints with vote ``V``
fires once for every combination of matching arcs (one per covered token) and
hands ``V / n`` to each arc of the combination. The winning reading is the
start-to-final path with the largest arc-vote sum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .engine import match_rule_at


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    token: int
    parse: int
    surface: str
    label: object  # the parse structure
    vote: Fraction = Fraction(0)


@dataclass(frozen=True)
class SentenceLattice:
    sentence: tuple
    arcs: tuple  # arcs[token] -> tuple of Arc, in parse order

    @property
    def num_states(self) -> int:
        return len(self.arcs) + 1

    @property
    def final_state(self) -> int:
        return len(self.arcs)

    def all_arcs(self):
        return [a for row in self.arcs for a in row]

    def votes(self) -> list:
        return [[a.vote for a in row] for row in self.arcs]


@dataclass(frozen=True)
class PathSelection:
    parses: tuple  # chosen parse index per token
    total: Fraction


@dataclass(frozen=True)
class PathFiring:
    rule_id: str
    start: int
    combination: tuple  # parse index per covered token
    share: Fraction

    @property
    def deposited(self) -> Fraction:
        return self.share * len(self.combination)


def build_lattice(sent) -> SentenceLattice:
    if not sent:
        raise ValueError("empty sentence")
    arcs = tuple(
        tuple(Arc(i, i + 1, i, j, tok.surface, p) for j, p in enumerate(tok.parses))
        for i, tok in enumerate(sent)
    )
    return SentenceLattice(tuple(sent), arcs)


def apply_rules_path(rules, lat: SentenceLattice, trace: list | None = None) -> SentenceLattice:
    """Return a copy of ``lat`` with every rule firing credited.

    An arc at offset ``k`` of a match is contained in as many combinations as
    the product of the other offsets' match counts, so it gains
    ``V / n`` times that product. With ``trace`` given, one
    :class:`PathFiring` per combination is appended to it.
    """
    extra = [[Fraction(0)] * len(row) for row in lat.arcs]
    sent = lat.sentence
    for rule in rules:
        n = len(rule.constraints)
        share = rule.vote / n
        for i in range(len(sent) - n + 1):
            matched = match_rule_at(rule, sent, i)
            if matched is None:
                continue
            sizes = [len(hits) for hits in matched]
            combos = 1
            for s in sizes:
                combos *= s
            for k, hits in enumerate(matched):
                gain = share * (combos // sizes[k])
                for j in hits:
                    extra[i + k][j] += gain
            if trace is not None:
                for combo in itertools.product(*matched):
                    trace.append(PathFiring(rule.id, i, combo, share))
    arcs = tuple(
        tuple(Arc(a.source, a.target, a.token, a.parse, a.surface, a.label, a.vote + extra[a.token][a.parse])
              for a in row)
        for row in lat.arcs
    )
    return SentenceLattice(sent, arcs)


def best_path(lat: SentenceLattice) -> PathSelection:
    """Max-sum start-to-final path by one forward pass over the states.

    Ties go to the lexicographically smallest parse-index sequence.
    """
    # best[state] = (total, path) over paths from the start state
    best = {0: (Fraction(0), ())}
    for state in range(lat.num_states - 1):
        incoming = best.pop(state)
        total, path = incoming
        for arc in lat.arcs[state]:
            cand = (total + arc.vote, path + (arc.parse,))
            cur = best.get(arc.target)
            if cur is None or cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1]):
                best[arc.target] = cand
    total, path = best[lat.final_state]
    return PathSelection(path, total)


def path_total(lat: SentenceLattice, parses) -> Fraction:
    return sum((lat.arcs[i][j].vote for i, j in enumerate(parses)), Fraction(0))


def format_lattice(lat: SentenceLattice) -> str:
    """One arc per line: from, to, token surface, parse, vote."""
    return "".join(f"{a.source}\t{a.target}\t{a.surface}\t{a.label.serialize()}\t{a.vote}\n"
                   for a in lat.all_arcs())
