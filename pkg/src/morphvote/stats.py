"""Statistical post-passes run after voting.

Root pruning drops parses whose root is much rarer than the root of the best
voted parse. Context resolution picks, for an ambiguous token flanked by
unambiguous ones, the reading seen most often unambiguously in the same
flanking context elsewhere in the text. Context comparison works on
signatures that ignore roots and keep only the category/suffix chain of stems.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .engine import as_fraction
from .featstruct import CAT, ROOT, STEM, SUFFIX, FeatureStructure

BOUNDARY_LEFT = "<s>"
BOUNDARY_RIGHT = "</s>"

DEFAULT_ROOT_RATIO = Fraction(1, 5)
DEFAULT_CTX_RATIO = Fraction(2)
DEFAULT_CTX_MIN = 2


@dataclass(frozen=True)
class RootFreqTable:
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        for root, n in self.counts.items():
            if n < 0:
                raise ValueError(f"negative count for root {root!r}")

    def __getitem__(self, root) -> int:
        return self.counts.get(root, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def read_root_freqs(text: str, source: str = "<root-stats>") -> RootFreqTable:
    counts: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        root, sep, count = line.rstrip("\n").partition("\t")
        if not sep:
            raise ValueError(f"{source}:{lineno}: expected root<TAB>count")
        try:
            n = int(count)
        except ValueError:
            raise ValueError(f"{source}:{lineno}: count {count!r} is not an integer") from None
        if n < 0:
            raise ValueError(f"{source}:{lineno}: negative count")
        counts[root] = counts.get(root, 0) + n
    return RootFreqTable(counts)


def read_root_freq_file(path) -> RootFreqTable:
    path = Path(path)
    return read_root_freqs(path.read_text(encoding="utf-8"), source=path.name)


def root_prune(token, votes, freqs: RootFreqTable, ratio=DEFAULT_ROOT_RATIO):
    """Drop parses whose root frequency is below ``ratio * freq(best root)``.

    ``votes`` is aligned with ``token.parses``. The best parse is the top
    voted one; among ties, the one whose root is most frequent, then the
    first. Returns ``(token, kept_indices)``.
    """
    everything = list(range(len(token.parses)))
    roots = [p.root() for p in token.parses]
    if len(set(roots)) <= 1:
        return token, everything
    top = max(votes)
    best = min((j for j in everything if votes[j] == top), key=lambda j: (-freqs[roots[j]], j))
    floor = as_fraction(ratio) * freqs[roots[best]]
    keep = [j for j in everything if j == best or freqs[roots[j]] >= floor]
    if len(keep) == len(everything):
        return token, everything
    return token.keep(keep), keep


def _skeleton(stem: FeatureStructure) -> FeatureStructure:
    pairs = [(n, v) for n, v in stem.pairs if n in (CAT, SUFFIX)]
    inner = stem.stem
    if isinstance(inner, FeatureStructure):
        pairs.append((STEM, _skeleton(inner)))
    return FeatureStructure(tuple(pairs))


def signature(parse: FeatureStructure) -> str:
    """Parse serialization with roots dropped and stems reduced to cat/suffix."""
    pairs = []
    for name, value in parse.pairs:
        if name == ROOT:
            continue
        if isinstance(value, FeatureStructure):
            value = _skeleton(value)
        pairs.append((name, value))
    return FeatureStructure(tuple(pairs)).serialize()


def _context_sig(sent, i: int):
    if i < 0:
        return BOUNDARY_LEFT
    if i >= len(sent):
        return BOUNDARY_RIGHT
    tok = sent[i]
    if tok.ambiguous:
        return None
    return signature(tok.parses[0])


@dataclass
class ContextCountTable:
    counts: Counter = field(default_factory=Counter)

    def __getitem__(self, key) -> int:
        return self.counts.get(key, 0)

    def __len__(self):
        return len(self.counts)

    def merge(self, other: "ContextCountTable") -> "ContextCountTable":
        return ContextCountTable(self.counts + other.counts)


def build_context_table(text) -> ContextCountTable:
    """Count unambiguous tokens between unambiguous neighbours (or boundaries)."""
    counts: Counter = Counter()
    for sent in text:
        for i, tok in enumerate(sent):
            if tok.ambiguous or not tok.parses:
                continue
            left = _context_sig(sent, i - 1)
            right = _context_sig(sent, i + 1)
            if left is None or right is None:
                continue
            counts[(left, signature(tok.parses[0]), right)] += 1
    return ContextCountTable(counts)


def context_resolve(token, left, right, table: ContextCountTable,
                    ratio=DEFAULT_CTX_RATIO, min_count: int = DEFAULT_CTX_MIN):
    """Keep the reading whose context count clearly dominates.

    ``left``/``right`` are the neighbouring tokens, or ``None`` at a sentence
    boundary. Returns ``(token, kept_indices)``; the token comes back
    unchanged when the context is ambiguous or no reading wins.
    """
    everything = list(range(len(token.parses)))
    if not token.ambiguous:
        return token, everything
    if (left is not None and left.ambiguous) or (right is not None and right.ambiguous):
        return token, everything
    lsig = BOUNDARY_LEFT if left is None else signature(left.parses[0])
    rsig = BOUNDARY_RIGHT if right is None else signature(right.parses[0])
    sigs = [signature(p) for p in token.parses]
    per_sig = {s: table[(lsig, s, rsig)] for s in sigs}
    if len(per_sig) < 2:
        return token, everything
    ratio = as_fraction(ratio)
    for sig, count in per_sig.items():
        if count < min_count:
            continue
        if all(count >= ratio * other for s, other in per_sig.items() if s != sig):
            keep = [j for j, s in enumerate(sigs) if s == sig]
            return token.keep(keep), keep
    return token, everything


def context_pass(text, table: ContextCountTable, ratio=DEFAULT_CTX_RATIO, min_count: int = DEFAULT_CTX_MIN):
    """Apply :func:`context_resolve` everywhere against the frozen input.

    Neighbour ambiguity is judged on the input text, so the result does not
    depend on the order tokens are visited in.
    """
    out = []
    for sent in text:
        new = []
        for i, tok in enumerate(sent):
            left = sent[i - 1] if i > 0 else None
            right = sent[i + 1] if i + 1 < len(sent) else None
            resolved, _ = context_resolve(tok, left, right, table, ratio, min_count)
            new.append(resolved)
        out.append(tuple(new))
    return out
