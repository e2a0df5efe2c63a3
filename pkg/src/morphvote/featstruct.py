"""Hierarchical morphological feature structures and one-way subsumption.

A parse is a ground feature structure; derivational history lives under a
nested ``stem`` feature. Constraints use the same type but may carry the
:data:`NO` marker under ``stem`` (the parse must be underived).

Two textual forms are understood:

* analyzer/bracket form, ``[[CAT=NOUN][ROOT=ev][CASE=GEN]]``, where a
  ``[CONV=<cat>=<suffix>]`` group pushes everything to its left into a nested
  stem, and ``[STEM=[[...]]]`` spells a nested stem out explicitly;
* rule form, ``[cat:noun, case:gen, stem:[cat:adj], suffix=mis]``.

Names and values are lower-cased on load, except ``root`` values, whose case
carries the special-character transliteration (``taS`` is not ``tas``). The
canonical serialization is the lower-cased bracket form with stems spelled
out, e.g. ``[[cat=noun][stem=[[cat=adj][root=koyu]]][suffix=none][case=nom]]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

STEM = "stem"
ROOT = "root"
CAT = "cat"
SUFFIX = "suffix"
CONV = "conv"


class _No:
    """Marker for ``stem:no`` in constraints."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NO"

    def __reduce__(self):
        return (_No, ())


NO = _No()

Value = Union[str, "FeatureStructure", _No]


class FeatureParseError(ValueError):
    """Malformed bracket text; carries a 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


def canonical_value(name: str, value: str) -> str:
    value = value.strip()
    return value if name == ROOT else value.lower()


@dataclass(frozen=True, eq=False)
class FeatureStructure:
    """Ordered attribute/value map; immutable and hashable by serialization."""

    pairs: tuple = ()
    _index: dict = field(init=False, repr=False, compare=False)
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for name, value in self.pairs:
            if not name:
                raise ValueError("empty feature name")
            if name in index:
                raise ValueError(f"duplicate feature {name!r}")
            if value is NO and name != STEM:
                raise ValueError(f"'no' is only allowed under {STEM!r}, not {name!r}")
            if isinstance(value, FeatureStructure):
                if name != STEM:
                    raise ValueError(f"nested value only allowed under {STEM!r}")
            elif value is not NO and (not isinstance(value, str) or not value):
                raise ValueError(f"empty value for feature {name!r}")
            index[name] = value
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_text", _serialize(self))

    @classmethod
    def from_pairs(cls, *pairs) -> "FeatureStructure":
        return cls(tuple(pairs))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.pairs)

    def __contains__(self, name):
        return name in self._index

    def get(self, name, default=None):
        return self._index.get(name, default)

    def __eq__(self, other):
        if not isinstance(other, FeatureStructure):
            return NotImplemented
        return self._text == other._text

    def __hash__(self):
        return hash(self._text)

    def __str__(self):
        return self._text

    def __repr__(self):
        return f"FeatureStructure({self._text})"

    def serialize(self) -> str:
        return self._text

    @property
    def stem(self):
        return self._index.get(STEM)

    @property
    def is_ground(self) -> bool:
        for _, value in self.pairs:
            if value is NO:
                return False
            if isinstance(value, FeatureStructure) and not value.is_ground:
                return False
        return True

    @property
    def depth(self) -> int:
        stem = self.stem
        return 1 + stem.depth if isinstance(stem, FeatureStructure) else 0

    def root(self):
        """Root of the innermost derivation layer carrying one."""
        stem = self.stem
        if isinstance(stem, FeatureStructure):
            inner = stem.root()
            if inner is not None:
                return inner
        return self._index.get(ROOT)

    def without(self, *names) -> "FeatureStructure":
        return FeatureStructure(tuple(p for p in self.pairs if p[0] not in names))

    def replace(self, name, value) -> "FeatureStructure":
        if name in self._index:
            pairs = tuple((n, value if n == name else v) for n, v in self.pairs)
        else:
            pairs = self.pairs + ((name, value),)
        return FeatureStructure(pairs)


def _serialize(fs: FeatureStructure) -> str:
    parts = []
    for name, value in fs.pairs:
        if isinstance(value, FeatureStructure):
            value = value._text
        elif value is NO:
            value = "no"
        parts.append(f"[{name}={value}]")
    return "[" + "".join(parts) + "]"


def subsumes(constraint: FeatureStructure, parse: FeatureStructure) -> bool:
    """True iff every pair in ``constraint`` is satisfied by ``parse``."""
    for name, want in constraint.pairs:
        have = parse.get(name)
        if want is NO:
            if have is not None:
                return False
        elif isinstance(want, FeatureStructure):
            if not isinstance(have, FeatureStructure) or not subsumes(want, have):
                return False
        elif have != want:
            return False
    return True


# -- bracket (analyzer) form ------------------------------------------------

_RESERVED = set("[]=\t\n\r")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def location(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, column

    def error(self, message, pos=None):
        return FeatureParseError(message, *self.location(pos))

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self):
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char):
        if self.peek() != char:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            if char == "]" and not found.startswith("'"):
                raise self.error("unbalanced brackets: expected ']'")
            raise self.error(f"expected {char!r}, found {found}")
        self.pos += 1

    def atom(self, stop):
        self.skip_space()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stop:
            self.pos += 1
        return self.text[start:self.pos].strip(), start


def _read_structure(sc: _Scanner) -> FeatureStructure:
    sc.expect("[")
    layer: list = []
    seen: set = set()

    def add(name, value, at):
        if name in seen:
            raise sc.error(f"duplicate feature {name!r}", at)
        seen.add(name)
        layer.append((name, value))

    while sc.peek() == "[":
        sc.pos += 1
        name, at = sc.atom(_RESERVED)
        if not name:
            raise sc.error("empty feature name", at)
        name = name.lower()
        sc.expect("=")
        if name == STEM:
            if sc.peek() != "[":
                raise sc.error("STEM value must be a bracketed structure")
            add(STEM, _read_structure(sc), at)
        elif name == CONV:
            raw, vat = sc.atom("[]\t\n\r")
            target, _, suffix = raw.partition("=")
            target = target.strip().lower()
            if not target:
                raise sc.error("empty CONV category", vat)
            if not layer:
                raise sc.error("CONV with nothing to derive from", at)
            stem = FeatureStructure(tuple(layer))
            layer = [(CAT, target), (STEM, stem)]
            seen = {CAT, STEM}
            if suffix.strip():
                add(SUFFIX, suffix.strip().lower(), vat)
        else:
            raw, vat = sc.atom(_RESERVED)
            if not raw:
                raise sc.error(f"empty value for feature {name!r}", vat)
            add(name, canonical_value(name, raw), at)
        sc.expect("]")
    sc.expect("]")
    return FeatureStructure(tuple(layer))


def parse_feature_structure(text: str) -> FeatureStructure:
    """Read one parse in bracket form; see the module docstring."""
    sc = _Scanner(text)
    fs = _read_structure(sc)
    sc.skip_space()
    if sc.pos != len(text):
        raise sc.error("trailing characters after parse")
    return fs


# -- rule (constraint) form -------------------------------------------------

_ATOM_STOP = set("[],:=;'\" \t\r\n#")


def read_constraint(sc: _Scanner) -> FeatureStructure:
    """Read ``[f:v, f:v, ...]`` at the scanner position."""
    sc.expect("[")
    pairs = []
    seen = set()
    if sc.peek() == "]":
        sc.pos += 1
        return FeatureStructure(())
    while True:
        name, at = sc.atom(_ATOM_STOP)
        if not name:
            raise sc.error("expected feature name", at)
        name = name.lower()
        if sc.peek() not in (":", "="):
            raise sc.error(f"expected ':' after feature {name!r}")
        sc.pos += 1
        nxt = sc.peek()
        if nxt == "[":
            if name != STEM:
                raise sc.error(f"nested constraint only allowed under {STEM!r}", at)
            value = read_constraint(sc)
        elif nxt in ("'", '"'):
            quote = nxt
            end = sc.text.find(quote, sc.pos + 1)
            if end < 0:
                raise sc.error("unterminated quoted value")
            value = canonical_value(name, sc.text[sc.pos + 1:end])
            if not value:
                raise sc.error(f"empty value for feature {name!r}")
            sc.pos = end + 1
        else:
            raw, vat = sc.atom(_ATOM_STOP)
            if not raw:
                raise sc.error(f"empty value for feature {name!r}", vat)
            if raw.lower() == "no":
                if name != STEM:
                    raise sc.error(f"'no' is only allowed under {STEM!r}", vat)
                value = NO
            else:
                value = canonical_value(name, raw)
        if name in seen:
            raise sc.error(f"duplicate feature {name!r}", at)
        if name == STEM and value is not NO and not isinstance(value, FeatureStructure):
            raise sc.error("stem value must be 'no' or a nested constraint", at)
        seen.add(name)
        pairs.append((name, value))
        sep = sc.peek()
        if sep == ",":
            sc.pos += 1
            continue
        if sep == "]":
            sc.pos += 1
            return FeatureStructure(tuple(pairs))
        raise sc.error("expected ',' or ']' in constraint")


def parse_constraint(text: str) -> FeatureStructure:
    sc = _Scanner(text)
    c = read_constraint(sc)
    sc.skip_space()
    if sc.pos != len(text):
        raise sc.error("trailing characters after constraint")
    return c


def format_constraint(c: FeatureStructure) -> str:
    """Inverse of :func:`parse_constraint` (lower-case rule notation)."""
    items = []
    for name, value in c.pairs:
        if isinstance(value, FeatureStructure):
            items.append(f"{name}:{format_constraint(value)}")
        elif value is NO:
            items.append(f"{name}:no")
        else:
            text = value if set(value).isdisjoint(_ATOM_STOP) and value.lower() != "no" else f"'{value}'"
            items.append(f"{name}:{text}")
    return "[" + ",".join(items) + "]"
