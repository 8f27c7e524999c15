"""Encoding, decoding, completion and recognition on top of the aligner."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional

from .alignment import (Alignment, Candidate, SearchParams, build_alignments,
                        column_is_contents, projection)
from .patterns import (CostModel, KnowledgeBase, Pattern, SymbolClass,
                       code_pattern)
from .scoring import ScoreBreakdown, relative_probabilities


@dataclass(frozen=True)
class Code:
    """Unmatched identification symbols of an alignment, in column order.

    ``residue`` holds the New symbols the alignment left unmatched as
    ``(position in New, name)`` pairs, so partially matched inputs still
    decode losslessly.
    """
    symbols: tuple = ()
    source: tuple = ()
    residue: tuple = ()

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return " ".join(self.symbols)


@dataclass(frozen=True)
class EncodeResult:
    code: Code
    score: ScoreBreakdown
    alignment: Alignment
    compressed: bool


@dataclass(frozen=True)
class DecodeResult:
    symbols: tuple
    alignment: Optional[Alignment]
    ok: bool


@dataclass(frozen=True)
class Completion:
    projection: tuple
    inferred: tuple
    probability: float
    score: ScoreBreakdown
    alignment: Alignment = field(repr=False)

    @property
    def cd(self):
        return self.score.cd


@dataclass(frozen=True)
class Recognition:
    pattern_ids: tuple          # sorted multiset
    cd: float
    probability: float
    alignment: Alignment = field(repr=False)


def _unmatched(a: Alignment, want_id: bool) -> tuple:
    out = []
    for col in a.columns:
        if len(col.entries) == 1:
            r, p = col.entries[0]
            if r > 0 and a.symbol(r, p).is_id == want_id:
                out.append(col.name)
    return tuple(out)


def alignment_code(a: Alignment) -> Code:
    residue = tuple((p, col.name) for col in a.columns
                    for r, p in col.entries
                    if r == 0 and len(col.entries) == 1)
    return Code(_unmatched(a, True), a.pattern_ids, residue)


def inferred_symbols(a: Alignment) -> tuple:
    """Contents symbols supplied by Old rows and not present in New."""
    return _unmatched(a, False)


def encode(new: Pattern, kb: KnowledgeBase, costs: CostModel,
           params: Optional[SearchParams] = None) -> EncodeResult:
    """Code for ``new`` from its best alignment.

    When nothing beats the New-only alignment the code is empty and
    ``compressed`` is False.
    """
    top = build_alignments(new, kb, costs, params)[0]
    a = top.alignment
    if len(a.rows) == 1:
        residue = tuple(enumerate(new.names))
        return EncodeResult(Code((), (), residue), top.score, a, False)
    return EncodeResult(alignment_code(a), top.score, a, True)


def decode(code, kb: KnowledgeBase, costs: CostModel,
           params: Optional[SearchParams] = None) -> DecodeResult:
    """Rebuild the contents symbols a code stands for.

    ``code`` is a Code or a sequence of identification names.  The code
    becomes the New row and is aligned against identification symbols;
    the contents columns of the best alignment, in order, are the output.
    Residue held by a Code is spliced back at its original positions.
    """
    residue = ()
    if isinstance(code, Code):
        residue = code.residue
        names = code.symbols
    elif isinstance(code, str):
        names = code.split()
    else:
        names = tuple(code)
    if not names:
        out = [n for _, n in sorted(residue)]
        return DecodeResult(tuple(out), None, False)
    new = code_pattern(names)
    top = build_alignments(new, kb, costs, params,
                           target=SymbolClass.IDENTIFICATION)[0]
    a = top.alignment
    if len(a.rows) == 1:
        return DecodeResult(tuple(n for _, n in sorted(residue)), a, False)
    out = [col.name for col in a.columns if column_is_contents(a, col)]
    for pos, name in sorted(residue):
        out.insert(pos, name)
    return DecodeResult(tuple(out), a, True)


def complete(partial_new: Pattern, kb: KnowledgeBase, costs: CostModel,
             params: Optional[SearchParams] = None,
             top_n: Optional[int] = None) -> List[Completion]:
    """Candidate completions of ``partial_new``, ranked by cd.

    Probabilities are normalized over the returned candidates.
    """
    cands = build_alignments(partial_new, kb, costs, params)
    if top_n is not None:
        cands = cands[:top_n]
    probs = relative_probabilities(cands)
    return [Completion(projection(c.alignment), inferred_symbols(c.alignment),
                       pr, c.score, c.alignment)
            for c, pr in zip(cands, probs)]


def recognize(new: Pattern, kb: KnowledgeBase, costs: CostModel,
              params: Optional[SearchParams] = None,
              top_n: int = 5) -> List[Recognition]:
    """Distinct multisets of Old patterns behind the best alignments.

    The best alignment stands for each multiset; the empty multiset is the
    New-only baseline.  Probabilities are normalized over the entries
    returned.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    picked: List[Candidate] = []
    keys = set()
    for c in build_alignments(new, kb, costs, params):
        key = tuple(sorted(Counter(c.alignment.pattern_ids).elements()))
        if key in keys:
            continue
        keys.add(key)
        picked.append((key, c))
        if len(picked) == top_n:
            break
    probs = relative_probabilities([c for _, c in picked])
    return [Recognition(key, c.cd, pr, c.alignment)
            for (key, c), pr in zip(picked, probs)]
