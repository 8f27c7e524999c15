"""Symbols, patterns, the knowledge base and its symbol cost model.

Knowledge-base files are line oriented::

    # comment
    P1 1 : !Nr !5 k i t t e n !#Nr
    NEW : t w o k i t t e n s p l a y

A token prefixed with ``!`` is an identification symbol; anything else is
a contents symbol.  At most one ``NEW`` line may appear in a file.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from .errors import ConfigurationError, KBSyntaxError, KBValidationError

NEW_ID = "NEW"


class SymbolClass(enum.Enum):
    IDENTIFICATION = "identification"
    CONTENTS = "contents"


class Role(enum.Enum):
    NEW = "New"
    OLD = "Old"


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: SymbolClass = SymbolClass.CONTENTS

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise KBValidationError(f"invalid symbol name {self.name!r}")
        if self.name.startswith("!"):
            raise KBValidationError(
                f"symbol name {self.name!r} may not start with '!'")

    @property
    def is_id(self) -> bool:
        return self.kind is SymbolClass.IDENTIFICATION

    @classmethod
    def from_token(cls, token: str) -> "Symbol":
        if token.startswith("!"):
            return cls(token[1:], SymbolClass.IDENTIFICATION)
        return cls(token, SymbolClass.CONTENTS)

    def token(self) -> str:
        return "!" + self.name if self.is_id else self.name

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Pattern:
    id: str
    symbols: tuple
    frequency: int = 1
    role: Role = Role.OLD

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise KBValidationError(f"empty pattern {self.id!r}")
        if not isinstance(self.frequency, int) or self.frequency < 1:
            raise KBValidationError(
                f"pattern {self.id!r}: frequency must be a positive integer")
        if self.role is Role.NEW and any(s.is_id for s in self.symbols):
            raise KBValidationError(
                "a New pattern may contain only contents symbols")

    @classmethod
    def from_tokens(cls, id, tokens, frequency=1, role=Role.OLD):
        if isinstance(tokens, str):
            tokens = tokens.split()
        return cls(id, tuple(Symbol.from_token(t) for t in tokens),
                   frequency, role)

    @classmethod
    def new(cls, symbols) -> "Pattern":
        """New pattern from a whitespace string or a sequence of names."""
        if isinstance(symbols, str):
            symbols = symbols.split()
        return cls(NEW_ID, tuple(Symbol(s) for s in symbols), 1, Role.NEW)

    @property
    def names(self) -> tuple:
        return tuple(s.name for s in self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return " ".join(s.token() for s in self.symbols)


def code_pattern(names: Sequence[str]) -> Pattern:
    """New-row pattern for decoding: every symbol is identification-class.

    Only the decoder builds these; they bypass the contents-only rule
    for ordinary New patterns.
    """
    syms = tuple(Symbol(n, SymbolClass.IDENTIFICATION) for n in names)
    p = object.__new__(Pattern)
    if not syms:
        raise KBValidationError("empty code")
    object.__setattr__(p, "id", NEW_ID)
    object.__setattr__(p, "symbols", syms)
    object.__setattr__(p, "frequency", 1)
    object.__setattr__(p, "role", Role.NEW)
    return p


@dataclass(frozen=True)
class KnowledgeBase:
    patterns: tuple = ()
    new: Optional[Pattern] = None

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        seen = set()
        for p in self.patterns:
            if p.role is not Role.OLD:
                raise KBValidationError(f"pattern {p.id!r} is not Old")
            if p.id in seen:
                raise KBValidationError(f"duplicate pattern id {p.id!r}")
            seen.add(p.id)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(s.name for p in self.patterns for s in p.symbols)

    def __getitem__(self, pattern_id):
        for p in self.patterns:
            if p.id == pattern_id:
                return p
        raise KeyError(pattern_id)

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self):
        return len(self.patterns)

    def dumps(self) -> str:
        for p in self.patterns + ((self.new,) if self.new else ()):
            for sym in p.symbols:
                if not sym.is_id and sym.name.startswith("#"):
                    # the file would read it back as a comment
                    raise KBValidationError(
                        f"contents symbol {sym.name!r} in {p.id!r} "
                        f"cannot be written")
        lines = [f"{p.id} {p.frequency} : {p}" for p in self.patterns]
        if self.new is not None:
            lines.append(f"{NEW_ID} : {self.new}")
        return "".join(line + "\n" for line in lines)


def _split_tokens(line: str):
    """Yield (token, 1-based column) pairs."""
    i, n = 0, len(line)
    while i < n:
        while i < n and line[i].isspace():
            i += 1
        if i >= n:
            break
        start = i
        while i < n and not line[i].isspace():
            i += 1
        yield line[start:i], start + 1


def load_kb(text: str) -> KnowledgeBase:
    """Parse knowledge-base file content.

    Raises KBSyntaxError (with line and column) for malformed lines and
    KBValidationError for duplicate ids, empty patterns or bad frequencies.
    """
    patterns = []
    new = None
    ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = []
        for tok, col in _split_tokens(raw):
            # '#' opens a comment at a token start; '!#Nr' is a symbol
            if tok.startswith("#"):
                break
            toks.append((tok, col))
        if not toks:
            continue
        try:
            colon = [t for t, _ in toks].index(":")
        except ValueError:
            raise KBSyntaxError("expected ':' after pattern header",
                                lineno, toks[-1][1] + len(toks[-1][0]))
        head, body = toks[:colon], toks[colon + 1:]
        if head and head[0][0] == NEW_ID:
            if len(head) != 1:
                raise KBSyntaxError("NEW takes no frequency", lineno, head[1][1])
            if new is not None:
                raise KBSyntaxError("more than one NEW pattern", lineno, 1)
            if not body:
                raise KBValidationError(f"line {lineno}: empty pattern")
            for tok, col in body:
                if tok.startswith("!"):
                    raise KBSyntaxError(
                        "NEW may contain only contents symbols", lineno, col)
            new = Pattern.new([t for t, _ in body])
            continue
        if len(head) != 2:
            col = head[0][1] if head else toks[0][1]
            raise KBSyntaxError("expected '<id> <frequency> :'", lineno, col)
        (pid, _), (freq_tok, freq_col) = head
        try:
            freq = int(freq_tok)
        except ValueError:
            raise KBSyntaxError(f"frequency {freq_tok!r} is not an integer",
                                lineno, freq_col)
        if freq < 1:
            raise KBValidationError(
                f"line {lineno}: zero/negative frequency for {pid!r}")
        if pid in ids:
            raise KBValidationError(
                f"line {lineno}: duplicate pattern id {pid!r}")
        if not body:
            raise KBValidationError(f"line {lineno}: empty pattern {pid!r}")
        syms = []
        for tok, col in body:
            if tok == "!":
                raise KBSyntaxError("bare '!' is not a symbol", lineno, col)
            if tok == ":":
                raise KBSyntaxError("unexpected ':'", lineno, col)
            syms.append(Symbol.from_token(tok))
        ids.add(pid)
        patterns.append(Pattern(pid, tuple(syms), freq))
    return KnowledgeBase(tuple(patterns), new)


def dump_kb(kb: KnowledgeBase) -> str:
    return kb.dumps()


@dataclass(frozen=True)
class CostModel:
    """Bits per symbol name.

    ``fallback`` prices names absent from ``bits`` (e.g. unseen New
    symbols); when it is None such names are a configuration error.
    """
    bits: Mapping[str, float] = field(default_factory=dict)
    mode: str = "uniform"
    fallback: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "bits", MappingProxyType(dict(self.bits)))
        for name, c in self.bits.items():
            if not c > 0:
                raise ConfigurationError(f"cost of {name!r} must be > 0")

    def cost(self, name: str) -> float:
        try:
            return self.bits[name]
        except KeyError:
            if self.fallback is None:
                raise ConfigurationError(f"no cost for symbol {name!r}")
            return self.fallback

    __getitem__ = cost

    def __contains__(self, name):
        return name in self.bits or self.fallback is not None

    def scaled(self, factor: float) -> "CostModel":
        fb = None if self.fallback is None else self.fallback * factor
        return CostModel({k: v * factor for k, v in self.bits.items()},
                         self.mode, fb)


def derive_costs(kb: KnowledgeBase, mode: str = "uniform") -> CostModel:
    """Cost model for ``kb``.

    uniform: every name costs log2(alphabet size), never below 1 bit.
    frequency: cost(s) = -log2(f(s)/F) with f(s) the frequency-weighted
    occurrence count; unseen names cost log2(F + 1), at least 1 bit.
    """
    alphabet = sorted(kb.alphabet)
    if mode == "uniform":
        c = math.log2(len(alphabet)) if len(alphabet) > 2 else 1.0
        return CostModel({a: c for a in alphabet}, mode, c)
    if mode == "frequency":
        counts = Counter()
        for p in kb.patterns:
            for s in p.symbols:
                counts[s.name] += p.frequency
        total = sum(counts.values())
        bits = {a: -math.log2(counts[a] / total) for a in alphabet}
        # a single-name alphabet has probability 1, i.e. zero bits
        bits = {a: (b if b > 0 else 1.0) for a, b in bits.items()}
        return CostModel(bits, mode, max(1.0, math.log2(total + 1)))
    raise ConfigurationError(f"unknown cost mode {mode!r}")

