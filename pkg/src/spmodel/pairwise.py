"""k-best order-preserving matchings between two symbol sequences.

A matching is a chain of index pairs ``(i, j)`` strictly increasing in both
coordinates, each pairing equal names.  It scores the sum of the matched
names' costs.  The search runs over the sparse set of equal-name points:
the best chains ending at each point are extended from the best chains
ending at points it dominates, which keeps the k-best lists exact.
"""
from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from .patterns import CostModel


@dataclass(frozen=True)
class MatchSet:
    pairs: tuple = ()
    score: float = 0.0
    names: tuple = ()

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def _names(seq) -> list:
    seq = getattr(seq, "symbols", seq)
    return [getattr(s, "name", s) for s in seq]


def score_matchset(m: MatchSet, costs: CostModel) -> float:
    """Sum of matched-name costs in pair order; 0.0 when empty."""
    total = 0.0
    for name in m.names:
        total += costs.cost(name)
    return total


def _key(item):
    pairs, score = item
    return (-score, pairs)


def kbest_chains(points: Sequence[tuple], weight: Callable[[tuple], float],
                 k: int) -> List[tuple]:
    """Top ``k`` chains over ``points`` as (pairs, score), best first.

    The empty chain is always a candidate.  Ordering is score descending
    then lexicographically smallest pair tuple.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    points = sorted(set(points))
    ending = []
    for idx, p in enumerate(points):
        w = weight(p)
        cands = [((p,), w)]
        for q_idx in range(idx):
            q = points[q_idx]
            if q[0] < p[0] and q[1] < p[1]:
                for pairs, s in ending[q_idx]:
                    cands.append((pairs + (p,), s + w))
        ending.append(heapq.nsmallest(k, cands, key=_key))
    pool = [((), 0.0)]
    for lst in ending:
        pool.extend(lst)
    return heapq.nsmallest(k, pool, key=_key)


def all_chains(points: Sequence[tuple], weight: Callable[[tuple], float]):
    """Every chain over ``points`` (including the empty one), unranked."""
    points = sorted(set(points))
    out = [((), 0.0)]

    def extend(pairs, score, start):
        last = pairs[-1] if pairs else (-1, -1)
        for idx in range(start, len(points)):
            p = points[idx]
            if p[0] > last[0] and p[1] > last[1]:
                chain = (pairs + (p,), score + weight(p))
                out.append(chain)
                extend(chain[0], chain[1], idx + 1)

    extend((), 0.0, 0)
    return out


def _merge_k(k, lists):
    out, seen = [], set()
    for item in heapq.merge(*lists):
        if id(item) in seen:
            continue
        seen.add(id(item))
        out.append(item)
        if len(out) == k:
            break
    return out


def kbest_grid(n_a: int, n_b: int,
               weight_at: Callable[[int, int], Optional[float]],
               k: int) -> List[tuple]:
    """Same result as :func:`kbest_chains` for dense inputs.

    ``weight_at(i, j)`` is the weight of pairing ``a[i]`` with ``b[j]``,
    or None when they cannot pair.  Weights must be strictly positive.
    Keeps the k best chains inside every prefix rectangle, so the cost is
    O(n_a * n_b * k) however many points match.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    prev = [[] for _ in range(n_b + 1)]
    for i in range(n_a):
        row = [[]]
        for j in range(n_b):
            up, left = prev[j + 1], row[j]
            w = weight_at(i, j)
            if w is None:
                if not up:
                    row.append(left)
                elif not left:
                    row.append(up)
                else:
                    row.append(_merge_k(k, (up, left)))
                continue
            pt = (i, j)
            ext = [(-w, (pt,))]
            ext.extend((neg - w, pairs + (pt,)) for neg, pairs in prev[j])
            ext.sort()
            row.append(_merge_k(k, (up, left, ext)))
        prev = row
    best = prev[n_b][:k] if n_a else []
    out = [(pairs, -neg) for neg, pairs in best]
    if len(out) < k:
        out.append(((), 0.0))
    return out


def kbest_partial(points: Sequence[tuple], weight: Callable[[tuple], float],
                  k: int, before: Callable[[int, int], bool]) -> List[tuple]:
    """Top ``k`` chains when the first coordinate is only partially ordered.

    A chain takes at most one point per second coordinate ``j``, in
    increasing ``j``, and every earlier point ``(i1, j1)`` must satisfy
    ``before(i1, i2)`` against every later one.  With ``before`` a total
    order this returns exactly what :func:`kbest_chains` returns.  Branch
    and bound over ``j``; weights must be non-negative.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    groups = {}
    for i, j in sorted(set(points)):
        groups.setdefault(j, []).append(i)
    js = sorted(groups)
    wmax = [max(weight((i, j)) for i in groups[j]) for j in js]
    suffix = [0.0] * (len(js) + 1)
    for idx in range(len(js) - 1, -1, -1):
        suffix[idx] = suffix[idx + 1] + max(0.0, wmax[idx])
    best = [(0.0, ())]          # (-score, pairs sorted by i)

    def offer(score, chosen):
        key = (-score, tuple(sorted(chosen)))
        if len(best) == k and key >= best[-1]:
            return
        bisect.insort(best, key)
        del best[k:]

    def rec(idx, score, chosen):
        if len(best) == k and score + suffix[idx] < -best[-1][0]:
            return
        if idx == len(js):
            return
        j = js[idx]
        for i in groups[j]:
            if all(c != i and before(c, i) for c, _ in chosen):
                chosen.append((i, j))
                s2 = score + weight((i, j))
                offer(s2, chosen)
                rec(idx + 1, s2, chosen)
                chosen.pop()
        rec(idx + 1, score, chosen)

    rec(0, 0.0, [])
    return [(pairs, -neg) for neg, pairs in best]


def match_points(a, b, allowed: Optional[Callable[[int, int], bool]] = None):
    an, bn = _names(a), _names(b)
    by_name = {}
    for j, name in enumerate(bn):
        by_name.setdefault(name, []).append(j)
    pts = []
    for i, name in enumerate(an):
        for j in by_name.get(name, ()):
            if allowed is None or allowed(i, j):
                pts.append((i, j))
    return pts


def align_pairwise(a, b, costs: CostModel, k: int = 1,
                   method: str = "dp") -> List[MatchSet]:
    """Ranked k-best matchings of ``a`` against ``b`` (length <= k).

    ``a`` and ``b`` are sequences of names, Symbols or Patterns.
    ``method="exhaustive"`` enumerates every chain instead of running the
    DP; both give identical rankings.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    an = _names(a)
    pts = match_points(a, b)

    def weight(p):
        return costs.cost(an[p[0]])

    if method == "dp":
        ranked = kbest_chains(pts, weight, k)
    elif method == "exhaustive":
        ranked = heapq.nsmallest(k, all_chains(pts, weight), key=_key)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [MatchSet(pairs, score, tuple(an[i] for i, _ in pairs))
            for pairs, score in ranked]
