"""Constraint-voting morphological disambiguation."""
from .corpus import Token, read_corpus, read_corpus_file
from .engine import apply_rules, disambiguate, match_rule_at, select_parses
from .evaluation import EvalReport, evaluate, parse_distribution
from .featstruct import NO, FeatureStructure, parse_constraint, parse_feature_structure, subsumes
from .lattice import apply_rules_path, best_path, build_lattice
from .ruleset import ConstraintRule, WeightConfig, constraint_vote, load_rules, load_weights, rule_vote
from .stats import build_context_table, context_resolve, root_prune, signature

__version__ = "0.1.0"
