"""Compression difference of an alignment and relative probabilities.

For an alignment, ``b_new`` is the cost of the New symbols that were
unified with something, and ``b_code`` the cost of the identification
symbols of Old rows left unmatched: those symbols are the code from which
the matched New symbols can be rebuilt.  ``cd = b_new - b_code`` is the
ranking score.  Unmatched contents symbols of Old rows are free since
decoding regenerates them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError


@dataclass(frozen=True)
class ScoreBreakdown:
    b_new: float = 0.0
    b_code: float = 0.0
    cd: float = 0.0


def _terms(alignment, costs):
    new_terms, code_terms = [], []
    rows = alignment.rows
    for col in alignment.columns:
        entries = col.entries
        if len(entries) > 1:
            if entries[0][0] == 0:
                new_terms.append(costs.cost(col.name))
        else:
            r, p = entries[0]
            if r > 0 and rows[r].symbols[p].is_id:
                code_terms.append(costs.cost(col.name))
    return new_terms, code_terms


def compression_difference(alignment, costs) -> ScoreBreakdown:
    """ScoreBreakdown for ``alignment`` under ``costs``.

    Sums are correctly rounded (math.fsum), so equal multisets of costs
    give bit-identical totals whatever the column order.
    """
    new_terms, code_terms = _terms(alignment, costs)
    b_new = math.fsum(new_terms)
    b_code = math.fsum(code_terms)
    return ScoreBreakdown(b_new, b_code, b_new - b_code)


def code_cost(names: Sequence[str], costs) -> float:
    return math.fsum(costs.cost(n) for n in names)


def relative_probabilities(cands) -> list:
    """p_i proportional to 2**-b_code_i, normalized over ``cands``.

    Accepts ScoreBreakdowns, objects with a ``score`` ScoreBreakdown, or
    bare b_code floats; input order is kept.
    """
    codes = []
    for c in cands:
        if isinstance(c, (int, float)):
            codes.append(float(c))
        else:
            s = getattr(c, "score", c)
            codes.append(s.b_code)
    if not codes:
        raise ConfigurationError("no candidates to normalize over")
    # shift by the minimum so the best code has weight 1 (no underflow)
    lo = min(codes)
    weights = [2.0 ** (lo - b) for b in codes]
    total = math.fsum(weights)
    return [w / total for w in weights]
