"""Tokens, sentences, and the tab-separated analyzed-corpus format.

One token per line, ``surface<TAB>parse1<TAB>parse2...``; a blank line ends a
sentence. Gold files use the same layout with exactly one parse per token.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .featstruct import FeatureParseError, FeatureStructure, parse_feature_structure


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Token:
    surface: str
    parses: tuple

    def __post_init__(self):
        object.__setattr__(self, "parses", tuple(self.parses))

    @property
    def ambiguous(self) -> bool:
        return len(self.parses) > 1

    def keep(self, indices) -> "Token":
        """Subset of parses at ``indices``, original order preserved."""
        keep = set(indices)
        return Token(self.surface, tuple(p for i, p in enumerate(self.parses) if i in keep))


Sentence = tuple


def make_sentence(tokens) -> Sentence:
    return tuple(tokens)


def _format_token(token: Token) -> str:
    return "\t".join([token.surface, *(p.serialize() for p in token.parses)])


def format_corpus(sentences) -> str:
    return "".join("".join(_format_token(t) + "\n" for t in sent) + "\n" for sent in sentences)


def read_corpus(text: str, source: str = "<corpus>", allow_unparsed: bool = False) -> list:
    """Parse corpus text into a list of sentences (tuples of :class:`Token`).

    Tokens with no parses are rejected unless ``allow_unparsed`` is set; they
    only make sense for distribution counts.
    """
    sentences, current = [], []
    cache: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if current:
                sentences.append(tuple(current))
                current = []
            continue
        fields = line.split("\t")
        surface = fields[0]
        if not surface:
            raise CorpusFormatError(f"{source}:{lineno}: empty surface form")
        parses = []
        column = len(surface) + 2
        for raw in fields[1:]:
            if not raw.strip():
                column += len(raw) + 1
                continue
            parse = cache.get(raw)
            if parse is None:
                try:
                    parse = parse_feature_structure(raw)
                except FeatureParseError as exc:
                    raise CorpusFormatError(
                        f"{source}:{lineno}:{column + exc.column - 1}: {exc.message}") from None
                cache[raw] = parse
            parses.append(parse)
            column += len(raw) + 1
        if not parses and not allow_unparsed:
            raise CorpusFormatError(f"{source}:{lineno}: token {surface!r} has no parses")
        current.append(Token(surface, tuple(parses)))
    if current:
        sentences.append(tuple(current))
    return sentences


def read_corpus_file(path, allow_unparsed: bool = False) -> list:
    path = Path(path)
    return read_corpus(path.read_text(encoding="utf-8"), source=path.name, allow_unparsed=allow_unparsed)


def write_corpus_file(path, sentences) -> None:
    Path(path).write_text(format_corpus(sentences), encoding="utf-8")


def token(surface: str, *parses) -> Token:
    """Convenience constructor accepting bracket strings or structures."""
    return Token(surface, tuple(p if isinstance(p, FeatureStructure) else parse_feature_structure(p)
                                for p in parses))
