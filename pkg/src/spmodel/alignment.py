"""Multiple alignments of one New pattern against instances of Old patterns.

An alignment is a set of rows (row 0 is New) and an ordered list of
columns; each column unifies equal-named symbols from distinct rows.
Alignments grow one row at a time by :func:`merge`, and
:func:`build_alignments` searches the space of merges with a beam.

Two structural rules hold throughout:

* rows are complete patterns, each occurrence in exactly one column;
* a column never holds two symbols from instances of the same Old
  pattern (a pattern is not unified with itself).
"""
from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional

from .errors import AlignmentError, ConfigurationError
from .pairwise import MatchSet, kbest_partial
from .patterns import CostModel, KnowledgeBase, Pattern, Role, SymbolClass
from .scoring import ScoreBreakdown, compression_difference


@dataclass(frozen=True)
class Column:
    entries: tuple      # ((row, position), ...) ordered by row
    name: str

    @property
    def matched(self) -> bool:
        return len(self.entries) > 1

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __len__(self):
        return len(self.entries)


class Alignment:
    """Immutable alignment; derived lookups are computed lazily."""

    __slots__ = ("rows", "columns", "_cells", "_reach", "_pids", "_sig",
                 "_by_name")

    def __init__(self, rows, columns):
        self.rows = tuple(rows)
        self.columns = tuple(columns)
        self._cells = None
        self._reach = None
        self._pids = None
        self._sig = None
        self._by_name = None

    @classmethod
    def new_only(cls, new: Pattern) -> "Alignment":
        cols = [Column(((0, i),), s.name) for i, s in enumerate(new.symbols)]
        return cls((new,), cols)

    @property
    def new(self) -> Pattern:
        return self.rows[0]

    @property
    def pattern_ids(self) -> tuple:
        return tuple(r.id for r in self.rows[1:])

    def __len__(self):
        return len(self.columns)

    def __eq__(self, other):
        return (isinstance(other, Alignment) and self.rows == other.rows
                and self.columns == other.columns)

    def __hash__(self):
        return hash((self.rows, self.columns))

    def __repr__(self):
        return (f"Alignment(rows={list(self.pattern_ids)}, "
                f"columns={len(self.columns)})")

    def symbol(self, row: int, pos: int):
        return self.rows[row].symbols[pos]

    def cells(self) -> list:
        """cells[row][pos] -> column index."""
        if self._cells is None:
            cells = [[None] * len(r) for r in self.rows]
            for c, col in enumerate(self.columns):
                for r, p in col.entries:
                    cells[r][p] = c
            self._cells = cells
        return self._cells

    def column_pattern_ids(self) -> list:
        if self._pids is None:
            self._pids = [frozenset(self.rows[r].id for r, _ in col.entries)
                          for col in self.columns]
        return self._pids

    def columns_named(self, name: str) -> tuple:
        if self._by_name is None:
            idx = {}
            for c, col in enumerate(self.columns):
                idx.setdefault(col.name, []).append(c)
            self._by_name = {k: tuple(v) for k, v in idx.items()}
        return self._by_name.get(name, ())

    def reach(self) -> list:
        """reach[c] is a bitmask of the columns forced to follow column c."""
        if self._reach is None:
            cells = self.cells()
            reach = [0] * len(self.columns)
            for c in range(len(self.columns) - 1, -1, -1):
                mask = 0
                for r, p in self.columns[c].entries:
                    if p + 1 < len(cells[r]):
                        s = cells[r][p + 1]
                        mask |= (1 << s) | reach[s]
                reach[c] = mask
            self._reach = reach
        return self._reach

    def signature(self):
        """Identity up to column linearization and row insertion order."""
        if self._sig is None:
            ids = [r.id for r in self.rows]
            dup = {i for i in ids if ids.count(i) > 1}
            labels = [(i, n) if i in dup else i for n, i in enumerate(ids)]
            # singleton columns are implied by the matched ones
            cols = frozenset(frozenset((labels[r], p) for r, p in col.entries)
                             for col in self.columns if len(col.entries) > 1)
            self._sig = (tuple(sorted(ids)), cols)
        return self._sig


def projection(a: Alignment) -> tuple:
    """Unified symbol names, one per column."""
    return tuple(col.name for col in a.columns)


def column_is_contents(a: Alignment, col: Column) -> bool:
    return any(not a.symbol(r, p).is_id for r, p in col.entries if r > 0)


def merge(a: Alignment, p: Pattern, m) -> Alignment:
    """Add ``p`` as a new row, unifying the pairs in ``m``.

    ``m`` is a MatchSet (or pair list) of ``(column index, position in p)``.
    Unmatched symbols of ``p`` get fresh columns placed immediately after
    the previous anchored column, or immediately before the first one
    when no anchor precedes them.  Raises AlignmentError on a name
    mismatch, reuse of a column or position, self-unification, or an
    ordering that contradicts the existing rows.
    """
    pairs = tuple(m.pairs if isinstance(m, MatchSet) else m)
    ncols = len(a.columns)
    pids = a.column_pattern_ids()
    colmap = {}
    used = set()
    for c, j in pairs:
        if not (0 <= c < ncols and 0 <= j < len(p)):
            raise AlignmentError(f"pair {(c, j)} out of range")
        if c in used or j in colmap:
            raise AlignmentError(f"pair {(c, j)} reuses a column or symbol")
        if a.columns[c].name != p.symbols[j].name:
            raise AlignmentError(
                f"name mismatch: column {c} is {a.columns[c].name!r}, "
                f"symbol {j} is {p.symbols[j].name!r}")
        if p.id in pids[c]:
            raise AlignmentError(
                f"column {c} already holds a symbol of pattern {p.id!r}")
        used.add(c)
        colmap[j] = c

    anchored = sorted(colmap)
    order = [colmap[j] for j in anchored]
    monotone = all(x < y for x, y in zip(order, order[1:]))
    if not monotone:
        reach = a.reach()
        for x in range(len(order)):
            for y in range(x + 1, len(order)):
                if reach[order[y]] >> order[x] & 1:
                    raise AlignmentError(
                        f"crossing: column {order[y]} must precede "
                        f"column {order[x]}")

    r = len(a.rows)
    rows = a.rows + (p,)
    # leading symbols sit just before the first anchor, the rest just
    # after the anchor that precedes them
    before, after = {}, {}
    first = colmap[anchored[0]] if anchored else ncols
    prev = None
    for j, sym in enumerate(p.symbols):
        if j in colmap:
            prev = colmap[j]
            continue
        slot = before.setdefault(first, []) if prev is None else \
            after.setdefault(prev, [])
        slot.append(Column(((r, j),), sym.name))
    joined = {c: j for j, c in colmap.items()}
    own = frozenset((p.id,))
    columns, new_pids = [], []
    for c in range(ncols + 1):
        for col in before.get(c, ()):
            columns.append(col)
            new_pids.append(own)
        if c == ncols:
            break
        col = a.columns[c]
        if c in joined:
            columns.append(Column(col.entries + ((r, joined[c]),), col.name))
            new_pids.append(pids[c] | own)
        else:
            columns.append(col)
            new_pids.append(pids[c])
        for col in after.get(c, ()):
            columns.append(col)
            new_pids.append(own)
    if not monotone:
        return Alignment(rows, _linearize(rows, columns))
    out = Alignment(rows, columns)
    out._pids = new_pids
    return out


def _linearize(rows, columns) -> list:
    """Topological order of columns, preferring their current order."""
    n = len(columns)
    cells = [[None] * len(rw) for rw in rows]
    for c, col in enumerate(columns):
        for r, p in col.entries:
            cells[r][p] = c
    succ = [set() for _ in range(n)]
    indeg = [0] * n
    for chain in cells:
        for x, y in zip(chain, chain[1:]):
            if y not in succ[x]:
                succ[x].add(y)
                indeg[y] += 1
    heap = [c for c in range(n) if indeg[c] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        c = heapq.heappop(heap)
        out.append(columns[c])
        for s in succ[c]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, s)
    if len(out) != n:
        raise AlignmentError("cyclic column order")
    return out


def validate_alignment(a: Alignment) -> List[str]:
    """Every broken invariant, one message per violation; [] when valid."""
    out = []
    if not a.rows or a.rows[0].role is not Role.NEW:
        out.append("row 0: not a New pattern")
    seen = {}
    for c, col in enumerate(a.columns):
        if not col.entries:
            out.append(f"column {c}: empty column")
            continue
        rows_here = [r for r, _ in col.entries]
        if len(set(rows_here)) != len(rows_here):
            out.append(f"column {c}: more than one entry per row")
        names = set()
        old_ids = []
        ok = True
        for r, p in col.entries:
            if not (0 <= r < len(a.rows) and 0 <= p < len(a.rows[r])):
                out.append(f"column {c}: entry {(r, p)} out of range")
                ok = False
                continue
            names.add(a.rows[r].symbols[p].name)
            if r > 0:
                old_ids.append(a.rows[r].id)
            seen.setdefault((r, p), []).append(c)
        if ok and (len(names) > 1 or names != {col.name}):
            out.append(f"column {c}: column name mismatch "
                       f"{sorted(names | {col.name})}")
        if len(set(old_ids)) != len(old_ids):
            out.append(f"column {c}: self unification of a pattern")
    for r, row in enumerate(a.rows):
        for p in range(len(row)):
            cols = seen.get((r, p), [])
            if len(cols) != 1:
                out.append(f"row {r}: row completeness, position {p} "
                           f"in {len(cols)} columns")
        positions = [p for col in a.columns for rr, p in col.entries
                     if rr == r]
        if any(x >= y for x, y in zip(positions, positions[1:])):
            out.append(f"row {r}: order preservation violated")
    return out


@dataclass(frozen=True)
class SearchParams:
    beam_width: int = 200
    max_iterations: int = 20
    k_pairwise: int = 10
    exhaustive: bool = False
    workers: int = 1

    def __post_init__(self):
        for name in ("beam_width", "max_iterations", "k_pairwise", "workers"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ConfigurationError(f"{name} must be a positive integer")


@dataclass(frozen=True)
class Candidate:
    alignment: Alignment
    score: ScoreBreakdown

    @property
    def cd(self) -> float:
        return self.score.cd


def rank_key(alignment: Alignment, value: float):
    return (-value, len(alignment.rows), alignment.pattern_ids,
            projection(alignment))


class Objective:
    """What the search maximizes and which merges it may make.

    The default reproduces parsing/encoding: New matches Old symbols of
    class ``target``, every added row must unify at least one symbol, and
    alignments are ranked by compression difference.
    """

    def __init__(self, costs: CostModel,
                 target: Optional[SymbolClass] = SymbolClass.CONTENTS,
                 require_match: bool = True):
        self.costs = costs
        self.target = target
        self.require_match = require_match
        self._id_cost = {}

    def allowed(self, a: Alignment, c: int, p: Pattern, j: int) -> bool:
        col = a.columns[c]
        if col.name != p.symbols[j].name or p.id in a.column_pattern_ids()[c]:
            return False
        if self.target is not None and col.entries[0][0] == 0:
            return p.symbols[j].kind is self.target
        return True

    def weight(self, a: Alignment, c: int, p: Pattern, j: int) -> float:
        """Exact compression-difference gain of unifying p[j] with column c."""
        cost = self.costs.cost(p.symbols[j].name)
        gain = cost if p.symbols[j].is_id else 0.0
        col = a.columns[c]
        if len(col.entries) == 1:
            r, q = col.entries[0]
            if r == 0 or a.symbol(r, q).is_id:
                gain += cost
        return gain

    def can_add(self, a: Alignment, p: Pattern) -> bool:
        return True

    def matchings(self, a: Alignment, p: Pattern, k: int,
                  exhaustive: bool) -> list:
        return candidate_matchings(a, p, self, k, exhaustive)

    def predict(self, value: float, p: Pattern, gain: float) -> float:
        """Ranking value of a child before it is built."""
        idc = self._id_cost.get(p.id)
        if idc is None:
            idc = self._id_cost[p.id] = math.fsum(
                self.costs.cost(s.name) for s in p.symbols if s.is_id)
        return value + gain - idc

    def evaluate(self, a: Alignment):
        """(ranking value, score object)."""
        s = compression_difference(a, self.costs)
        return s.cd, s

    def bound(self, a: Alignment, value: float, patterns, rows_left: int):
        """Upper bound on the value of any alignment grown from ``a``.

        Later rows can only raise cd by unifying a New singleton or an
        identification singleton; each new row touches at most ``len(p)``
        existing columns and its own new columns are worth <= 0.
        """
        if rows_left <= 0 or not patterns:
            return value
        names = {}
        for q in patterns:
            for sym in q.symbols:
                names.setdefault(sym.name, set()).add(
                    (q.id, sym.kind))
        gains = []
        for col in a.columns:
            if len(col.entries) != 1:
                continue
            r, pos = col.entries[0]
            who = names.get(col.name, ())
            if r == 0:
                if any(self.target is None or k is self.target
                       for _, k in who):
                    gains.append(self.costs.cost(col.name))
            elif a.symbol(r, pos).is_id:
                pid = a.rows[r].id
                if any(i != pid for i, _ in who):
                    gains.append(self.costs.cost(col.name))
        room = rows_left * max(len(q) for q in patterns)
        gains.sort(reverse=True)
        ub = value + math.fsum(gains[:room])
        if rows_left == 1:
            # one more row: its best gain per symbol, ignoring order
            best = 0.0
            for q in patterns:
                if not self.can_add(a, q):
                    continue
                total = 0.0
                for j, sym in enumerate(q.symbols):
                    total += max((self.weight(a, c, q, j)
                                  for c in a.columns_named(sym.name)
                                  if self.allowed(a, c, q, j)), default=0.0)
                best = max(best, self.predict(0.0, q, total))
            ub = min(ub, value + best)
        return ub


def candidate_matchings(a: Alignment, p: Pattern, objective: Objective,
                        k: int, exhaustive: bool) -> list:
    """(pairs, gain) matchings of ``p`` against the columns of ``a``.

    Matchings need only respect the partial order the existing rows put
    on the columns, not the current linearization.  Beam mode keeps the
    ``k`` best by gain; exhaustive mode returns all of them.
    """
    pts = [(c, j) for j, sym in enumerate(p.symbols)
           for c in a.columns_named(sym.name)
           if objective.allowed(a, c, p, j)]
    reach = a.reach()

    def weight(pt):
        return objective.weight(a, pt[0], p, pt[1])

    if exhaustive:
        # A pair worth nothing only adds order constraints, so dropping it
        # never lowers the reachable optimum; such pairs are tried alone,
        # for rows that would otherwise match nothing.
        useful = [pt for pt in pts if weight(pt) > 0]
        out = []
        for pairs in _all_consistent(a, useful, objective.require_match):
            gain = 0.0
            for pt in sorted(pairs, key=lambda q: q[1]):
                gain += weight(pt)
            out.append((pairs, gain))
        if objective.require_match:
            out.extend(((pt,), 0.0) for pt in pts if not weight(pt) > 0)
        return out

    def before(c_early, c_late):
        return not reach[c_late] >> c_early & 1

    extra = 1 if objective.require_match else 0
    chains = kbest_partial(pts, weight, k + extra, before)
    out = [(pairs, gain) for pairs, gain in chains
           if pairs or not objective.require_match]
    return out[:k]


def _all_consistent(a: Alignment, pts, require_match: bool) -> list:
    """All matchings consistent with the alignment's partial column order."""
    reach = a.reach()
    by_j = {}
    for c, j in pts:
        by_j.setdefault(j, []).append(c)
    js = sorted(by_j)
    out = []

    def rec(idx, chosen):
        if idx == len(js):
            if chosen or not require_match:
                out.append(tuple(sorted(chosen)))
            return
        rec(idx + 1, chosen)
        j = js[idx]
        for c in by_j[j]:
            # every earlier choice c2 must be allowed to precede c
            if all(c2 != c and not reach[c] >> c2 & 1 for c2, _ in chosen):
                chosen.append((c, j))
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def search(new: Pattern, patterns, objective: Objective,
           params: SearchParams) -> List[tuple]:
    """Beam search over merges; returns ranked (value, score, alignment).

    Level ``i`` of the beam holds the best ``beam_width`` alignments with
    ``i`` Old rows, each grown from level ``i - 1``; results pool every
    level and keep the best ``beam_width``.  The search stops when a
    level produces nothing new or after ``max_iterations`` levels.  With
    ``exhaustive`` every consistent matching is tried and the only
    pruning is branch-and-bound on ``objective.bound`` against the best
    value seen (a beam run seeds it), so the top-1 value is the best over
    all alignments with up to ``max_iterations`` rows.  Subtrees that can
    at most tie are cut, so lower ranks hold only what was explored.
    """
    patterns = tuple(patterns)
    base = Alignment.new_only(new)
    value, score = objective.evaluate(base)
    base_item = (rank_key(base, value), value, score, base)
    seen = {base.signature()}
    frontier = [(value, base)]
    width = None if params.exhaustive else params.beam_width

    def expand(task):
        value, a, p = task
        if not objective.can_add(a, p):
            return []
        return [(objective.predict(value, p, gain), a, p, pairs)
                for pairs, gain in objective.matchings(
                    a, p, params.k_pairwise, params.exhaustive)]

    incumbent = value
    quick = []
    if params.exhaustive:
        # a beam run supplies the starting bound for branch-and-bound
        quick = search(new, patterns, objective,
                       replace(params, exhaustive=False))
        incumbent = quick[0][0]
    pool = ThreadPoolExecutor(params.workers) if params.workers > 1 else None
    found = [base_item]
    try:
        for level in range(params.max_iterations):
            # branch-and-bound: drop alignments that cannot beat the best
            best = max(incumbent, max(it[1] for it in found))
            tol = 1e-9 * max(1.0, abs(best))
            left = params.max_iterations - level
            frontier = [(v, a) for v, a in frontier
                        if objective.bound(a, v, patterns, left) > best + tol]
            if not frontier:
                break
            tasks = [(v, a, p) for v, a in frontier for p in patterns]
            if pool is None:
                results = [expand(t) for t in tasks]
            else:
                results = list(pool.map(expand, tasks))
            proposals = [prop for group in results for prop in group]
            # stable sort: equal predictions keep task order
            proposals.sort(key=lambda q: -q[0])
            children = []
            cutoff = None
            if params.exhaustive and level == params.max_iterations - 1:
                # leaves: only children that beat the best are built
                cutoff = best + tol
            for pred, a, p, pairs in proposals:
                if cutoff is not None and pred < cutoff:
                    break
                child = merge(a, p, pairs)
                sig = child.signature()
                if sig in seen:
                    continue
                seen.add(sig)
                v, s = objective.evaluate(child)
                children.append((rank_key(child, v), v, s, child))
                if width is not None and len(children) == width:
                    worst = min(it[1] for it in children)
                    cutoff = worst - 1e-9 * max(1.0, abs(worst))
            if not children:
                break
            children.sort(key=lambda it: it[0])
            if width is not None:
                children = children[:width]
            found.extend(children)
            frontier = [(it[1], it[3]) for it in children]
    finally:
        if pool is not None:
            pool.shutdown()
    if quick:
        have = {it[3].signature() for it in found}
        found.extend((rank_key(a, v), v, s, a) for v, s, a in quick
                     if a.signature() not in have)
    found.sort(key=lambda it: it[0])
    if width is not None:
        found = found[:width]
    if all(it[3] is not base for it in found):
        found.append(base_item)
        found.sort(key=lambda it: it[0])
    return [(v, s, a) for _, v, s, a in found]


def build_alignments(new: Pattern, kb: KnowledgeBase, costs: CostModel,
                     params: Optional[SearchParams] = None,
                     target: SymbolClass = SymbolClass.CONTENTS
                     ) -> List[Candidate]:
    """Alignments of ``new`` against ``kb`` ranked by compression difference.

    The New-only alignment (score 0) is always present.  ``target`` is the
    Old symbol class New symbols may unify with: contents when parsing,
    identification when decoding a code.
    """
    if new.role is not Role.NEW:
        raise ConfigurationError("build_alignments needs a New pattern")
    params = params or SearchParams()
    objective = Objective(costs, target)
    ranked = search(new, kb.patterns, objective, params)
    return [Candidate(a, s) for _, s, a in ranked]
