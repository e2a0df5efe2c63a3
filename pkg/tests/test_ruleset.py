import random
from fractions import Fraction

import pytest
from hypothesis import given

from morphvote.featstruct import STEM, FeatureStructure, parse_constraint
from morphvote.ruleset import (DEFAULT_WEIGHTS, ConstraintRule, RuleSyntaxError, RuleWarning, WeightConfig,
                               WeightConfigError, constraint_vote, load_rules, load_weights, rule_vote)

import randgen

GEN4 = WeightConfig(value_weights={"gen": 4}, stem_scale=2)
PLAIN = WeightConfig()


def test_worked_example_is_13():
    c = parse_constraint("[cat:noun, case:gen, stem:[cat:adj, stem:[cat:v], suffix=mis]]")
    assert constraint_vote(c, GEN4) == 13
    # inner pieces: stem:[cat:v] -> 2, the adj layer sums to 4 and scales to 8
    assert constraint_vote(parse_constraint("[stem:[cat:v]]"), GEN4) == 2
    assert constraint_vote(parse_constraint("[stem:[cat:adj, stem:[cat:v], suffix=mis]]"), GEN4) == 8


@pytest.mark.parametrize("text, weights, expected", [
    ("[cat:noun]", PLAIN, 1),
    ("[case:gen, agr:3sg]", GEN4, 5),
    ("[]", GEN4, 0),
    ("[stem:no]", GEN4, 1),
    ("[stem:[]]", GEN4, 1),
    ("[cat:noun,stem:no]", WeightConfig(feature_weights={"stem": 3}), 4),
    # distinguished value beats distinguished feature
    ("[case:gen]", WeightConfig(value_weights={"gen": 4}, feature_weights={"case": 3}), 4),
    ("[case:acc]", WeightConfig(value_weights={"gen": 4}, feature_weights={"case": 3}), 3),
])
def test_constraint_votes(text, weights, expected):
    assert constraint_vote(parse_constraint(text), weights) == expected


def test_rule_votes():
    r = load_rules("[[case:abl],[cat:postp,subcat:abl]]", PLAIN)[0]
    assert rule_vote(r, PLAIN) == 3
    r = load_rules("[[agr:'2SG',case:gen],[cat:noun,poss:'2SG']]", GEN4)[0]
    assert rule_vote(r, GEN4) == 7
    r = load_rules("[[cat:verb,tam1:imp]] ; VOTE=-10", GEN4)[0]
    assert r.vote_source == "manual"
    assert rule_vote(r, GEN4) == -10


def test_load_keeps_order_and_ids():
    text = "# header\n[[case:abl],[cat:postp,subcat:abl]]\n\n[[cat:noun]]  # trailing comment\n"
    rules = load_rules(text, PLAIN, source="r.txt")
    assert [r.id for r in rules] == ["r.txt:2", "r.txt:4"]
    assert len(rules[0]) == 2
    assert rules[0].constraints[1] == parse_constraint("[cat:postp,subcat:abl]")


def test_empty_file_warns():
    with pytest.warns(RuleWarning):
        assert load_rules("") == []


def test_duplicate_rule_warns():
    with pytest.warns(RuleWarning, match="duplicate"):
        rules = load_rules("[[cat:noun]]\n[[ cat : noun ]]\n")
    assert len(rules) == 2


def test_long_rule_warns():
    with pytest.warns(RuleWarning, match="context"):
        load_rules("[" + ",".join(["[cat:noun]"] * 6) + "]")


@pytest.mark.parametrize("text, message", [
    ("[]", "empty rule"),
    ("[[cat:noun]] ; VOTE=abc", "integer"),
    ("[[cat:noun]] ; VOTE=1.5", "integer"),
    ("[[cat:noun]] ; WEIGHT=3", "VOTE"),
    ("[[cat:noun]", "line 1"),
    ("[[cat:noun],[case:no]]", "'no'"),
])
def test_rule_errors(text, message):
    with pytest.raises(RuleSyntaxError, match=message):
        load_rules(text)


def test_rule_error_reports_line():
    with pytest.raises(RuleSyntaxError, match="line 3"):
        load_rules("[[cat:noun]]\n\n[[cat:noun],]\n")


def test_weights_file():
    w = load_weights("value gen 4\nfeature subcat 3  # comment\nstem_scale 3\n")
    assert w.value_weights == {"gen": 4}
    assert w.feature_weights == {"subcat": 3}
    assert w.stem_scale == 3


@pytest.mark.parametrize("text", ["value gen 1", "value gen x", "stem_scale 0", "bogus 1"])
def test_weights_errors(text):
    with pytest.raises(WeightConfigError):
        load_weights(text)


def test_default_weights():
    assert DEFAULT_WEIGHTS.value_weights == {"gen": 4}
    assert DEFAULT_WEIGHTS.stem_scale == 2


def test_rule_str_round_trips():
    for text in ["[[case:abl],[cat:postp,subcat:abl]]", "[[cat:verb,tam1:imp]] ; VOTE=-10",
                 "[[cat:adj,stem:[tam1:narr]],[cat:noun,stem:no]]"]:
        r = load_rules(text)[0]
        again = load_rules(str(r))[0]
        assert again.constraints == r.constraints and again.vote == r.vote


@given(randgen.constraints, randgen.seeds)
def test_adding_a_pair_raises_vote(c, seed):
    rng = random.Random(seed)
    free = [n for n in randgen.FEATURES if n not in c]
    if not free:
        return
    name = rng.choice(free)
    bigger = c.replace(name, rng.choice(randgen.FEATURES[name]))
    w = WeightConfig(value_weights={"gen": 4, "abl": 2}, feature_weights={"case": 3})
    assert constraint_vote(bigger, w) >= constraint_vote(c, w) + 1
    assert constraint_vote(c, w) >= len(c)


@given(randgen.constraints)
def test_stem_wrapping_scales(c):
    if not len(c):
        return
    for scale in (1, 2, 5):
        w = WeightConfig(value_weights={"gen": 4}, stem_scale=scale)
        assert constraint_vote(FeatureStructure(((STEM, c),)), w) == scale * constraint_vote(c, w)


def _pair_count(c, scale=2):
    total = 0
    for _, v in c.pairs:
        total += max(1, scale * _pair_count(v, scale)) if isinstance(v, FeatureStructure) else 1
    return total


@given(randgen.seeds)
def test_default_weights_count_pairs(seed):
    rng = random.Random(seed)
    cs = [randgen.random_constraint(rng) for _ in range(rng.randint(1, 4))]
    r = ConstraintRule.make(cs, PLAIN)
    assert rule_vote(r, PLAIN) == Fraction(sum(_pair_count(c) for c in cs))
