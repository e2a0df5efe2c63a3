"""Constraint rules, their static votes, and the rule/weight file readers.

A rule is a sequence of constraints over consecutive tokens, written
``[[case:abl],[cat:postp,subcat:abl]]``, optionally followed by
``; VOTE=<int>`` to fix the vote by hand. Without an annotation the vote is the
sum of the constraint votes:

* a distinguished value ``v`` contributes ``w(v)``;
* otherwise a distinguished feature ``f`` contributes ``w(f)``;
* otherwise a nested ``stem:[...]`` contributes ``stem_scale`` times its own vote
  (at least 1, for an empty ``stem:[]``);
* otherwise a pair contributes 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .featstruct import FeatureParseError, FeatureStructure, _Scanner, format_constraint, read_constraint

MAX_CONTEXT = 5


class RuleSyntaxError(ValueError):
    pass


class RuleWarning(UserWarning):
    pass


class WeightConfigError(ValueError):
    pass


@dataclass(frozen=True)
class WeightConfig:
    value_weights: dict = field(default_factory=dict)
    feature_weights: dict = field(default_factory=dict)
    stem_scale: int = 2
    default_weight: int = 1

    def __post_init__(self):
        for kind, table in (("value", self.value_weights), ("feature", self.feature_weights)):
            for name, weight in table.items():
                if not isinstance(weight, int) or weight <= 1:
                    raise WeightConfigError(f"{kind} weight for {name!r} must be an integer > 1, got {weight!r}")
        if not isinstance(self.stem_scale, int) or self.stem_scale < 1:
            raise WeightConfigError(f"stem_scale must be an integer >= 1, got {self.stem_scale!r}")
        if self.default_weight != 1:
            raise WeightConfigError("default_weight is fixed at 1")


# Only the genitive marker is singled out as a strong cue; other distinguished
# entries are a per-corpus tuning matter.
DEFAULT_WEIGHTS = WeightConfig(value_weights={"gen": 4}, stem_scale=2)


def constraint_vote(c: FeatureStructure, w: WeightConfig = DEFAULT_WEIGHTS) -> int:
    total = 0
    for name, value in c.pairs:
        if isinstance(value, str) and value in w.value_weights:
            total += w.value_weights[value]
        elif name in w.feature_weights:
            total += w.feature_weights[name]
        elif isinstance(value, FeatureStructure):
            # a bare ``stem:[]`` still constrains (derived form), so never below 1
            total += max(w.default_weight, w.stem_scale * constraint_vote(value, w))
        else:
            total += w.default_weight
    return total


@dataclass(frozen=True)
class ConstraintRule:
    constraints: tuple
    vote: Fraction
    vote_source: str = "computed"
    id: str = "<rule>"

    def __len__(self):
        return len(self.constraints)

    def __str__(self):
        text = "[" + ",".join(format_constraint(c) for c in self.constraints) + "]"
        if self.vote_source == "manual":
            text += f" ; VOTE={self.vote}"
        return text

    @classmethod
    def make(cls, constraints, w: WeightConfig = DEFAULT_WEIGHTS, vote=None, id="<rule>"):
        """Build a rule, computing its vote unless ``vote`` is given."""
        constraints = tuple(constraints)
        if not constraints:
            raise RuleSyntaxError("empty rule")
        if vote is None:
            return cls(constraints, Fraction(sum(constraint_vote(c, w) for c in constraints)), "computed", id)
        return cls(constraints, Fraction(vote), "manual", id)


def rule_vote(r: ConstraintRule, w: WeightConfig = DEFAULT_WEIGHTS) -> Fraction:
    if r.vote_source == "manual":
        return r.vote
    return Fraction(sum(constraint_vote(c, w) for c in r.constraints))


def _strip_comment(line: str) -> str:
    quote = None
    for i, ch in enumerate(line):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "'\"":
            quote = ch
        elif ch == "#":
            return line[:i]
    return line


def parse_rule(line: str, w: WeightConfig = DEFAULT_WEIGHTS, id: str = "<rule>", lineno: int = 1) -> ConstraintRule:
    body, sep, annotation = line.partition(";")
    sc = _Scanner(body)
    try:
        sc.expect("[")
        constraints = []
        if sc.peek() != "]":
            while True:
                constraints.append(read_constraint(sc))
                nxt = sc.peek()
                if nxt == ",":
                    sc.pos += 1
                    continue
                sc.expect("]")
                break
        else:
            sc.pos += 1
        sc.skip_space()
        if sc.pos != len(body):
            raise sc.error("trailing characters after rule")
    except FeatureParseError as exc:
        raise RuleSyntaxError(f"{id}: {exc.message} (line {lineno}, column {exc.column})") from None
    if not constraints:
        raise RuleSyntaxError(f"{id}: empty rule (line {lineno})")
    vote = None
    if sep:
        key, eq, value = annotation.strip().partition("=")
        if key.strip().upper() != "VOTE" or not eq:
            raise RuleSyntaxError(f"{id}: expected '; VOTE=<integer>' (line {lineno})")
        try:
            vote = int(value.strip())
        except ValueError:
            raise RuleSyntaxError(f"{id}: manual vote must be an integer, got {value.strip()!r} (line {lineno})") from None
    return ConstraintRule.make(constraints, w, vote=vote, id=id)


def load_rules(text: str, w: WeightConfig = DEFAULT_WEIGHTS, source: str = "<rules>") -> list:
    """Parse a rule file body. Rules come back in file order."""
    rules = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        rule = parse_rule(line, w, id=f"{source}:{lineno}", lineno=lineno)
        key = (rule.constraints, rule.vote_source, rule.vote)
        if key in seen:
            warnings.warn(f"{rule.id}: duplicate of rule {seen[key]}", RuleWarning, stacklevel=2)
        else:
            seen[key] = rule.id
        if len(rule) > MAX_CONTEXT:
            warnings.warn(f"{rule.id}: {len(rule)} constraints exceeds the usual {MAX_CONTEXT}-token context",
                          RuleWarning, stacklevel=2)
        rules.append(rule)
    if not rules:
        warnings.warn(f"{source}: no rules", RuleWarning, stacklevel=2)
    return rules


def load_rule_file(path, w: WeightConfig = DEFAULT_WEIGHTS) -> list:
    path = Path(path)
    return load_rules(path.read_text(encoding="utf-8"), w, source=path.name)


def load_weights(text: str, source: str = "<weights>") -> WeightConfig:
    """Read ``value <name> <int>``, ``feature <name> <int>``, ``stem_scale <int>`` lines."""
    values, features = {}, {}
    stem_scale = 2
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] in ("value", "feature") and len(parts) == 3:
                table = values if parts[0] == "value" else features
                name = parts[1].lower()
                table[name] = int(parts[2])
            elif parts[0] == "stem_scale" and len(parts) == 2:
                stem_scale = int(parts[1])
            else:
                raise WeightConfigError(f"{source}:{lineno}: unrecognised line {line!r}")
        except ValueError as exc:
            if isinstance(exc, WeightConfigError):
                raise
            raise WeightConfigError(f"{source}:{lineno}: weight must be an integer in {line!r}") from None
    try:
        return WeightConfig(values, features, stem_scale)
    except WeightConfigError as exc:
        raise WeightConfigError(f"{source}: {exc}") from None


def load_weight_file(path) -> WeightConfig:
    path = Path(path)
    return load_weights(path.read_text(encoding="utf-8"), source=path.name)
