"""Bioinformatics-style multiple alignment of plain sequences.

The first sequence drives (row 0); the others are added once each as
Old rows.  No row has to touch New and an added row may match nothing.
Alignments are ranked by the matched-pair score: for every matched
column, the name's cost times (entries - 1).
"""
from __future__ import annotations

import math
from dataclasses import replace
from typing import Optional, Sequence

from .alignment import Alignment, Objective, SearchParams, search
from .errors import ConfigurationError
from .pairwise import kbest_grid
from .patterns import (CostModel, KnowledgeBase, Pattern, Role, Symbol,
                       derive_costs)
from .scoring import compression_difference


def matched_pair_score(a: Alignment, costs: CostModel) -> float:
    return math.fsum(costs.cost(col.name) * (len(col.entries) - 1)
                     for col in a.columns if len(col.entries) > 1)


class MSAObjective(Objective):

    def __init__(self, costs: CostModel):
        super().__init__(costs, target=None, require_match=False)

    def weight(self, a, c, p, j):
        return self.costs.cost(p.symbols[j].name)

    def can_add(self, a, p):
        return p.id not in a.pattern_ids

    def predict(self, value, p, gain):
        return value + gain

    def evaluate(self, a):
        return matched_pair_score(a, self.costs), compression_difference(
            a, self.costs)

    def bound(self, a, value, patterns, rows_left):
        # any later row may add matched pairs anywhere: no useful bound
        return math.inf

    def matchings(self, a, p, k, exhaustive):
        # long sequences: k-best chains over the current column order
        cols = a.columns
        costs = self.costs

        def weight_at(c, j):
            name = p.symbols[j].name
            if cols[c].name != name:
                return None
            return costs.cost(name)

        return kbest_grid(len(cols), len(p), weight_at, k)


def msa(sequences: Sequence, costs: Optional[CostModel] = None,
        params: Optional[SearchParams] = None) -> Alignment:
    """Top alignment holding every sequence exactly once as a row.

    ``sequences`` are Patterns (contents-only), whitespace strings or
    name lists; bare sequences get ids S0, S1, ...  Without ``costs`` a
    uniform model over all the sequences is used.
    """
    pats = []
    for n, item in enumerate(sequences):
        if isinstance(item, Pattern):
            if any(s.is_id for s in item.symbols):
                raise ConfigurationError("msa sequences must be contents-only")
            pats.append(Pattern(item.id, item.symbols))
        else:
            names = item.split() if isinstance(item, str) else tuple(item)
            pats.append(Pattern(f"S{n}", tuple(Symbol(x) for x in names)))
    if len(pats) < 2:
        raise ConfigurationError("msa needs at least two sequences")
    if costs is None:
        costs = derive_costs(KnowledgeBase(tuple(pats)))
    new = Pattern(pats[0].id, pats[0].symbols, 1, Role.NEW)
    olds = pats[1:]
    params = params or SearchParams()
    params = replace(params, max_iterations=len(olds))
    ranked = search(new, olds, MSAObjective(costs), params)
    return next(a for _, _, a in ranked if len(a.rows) == len(pats))
