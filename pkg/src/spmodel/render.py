"""Text and JSON views of alignments.

Text layout: one line per row (row 0, New, on top) framed by the row
index at both margins, with a connector line between adjacent rows.
Every column is ``max(name length) + 1`` characters wide and a connector
line has ``|`` in a column exactly when both neighbouring rows have an
entry there.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List


@dataclass(frozen=True)
class RenderedAlignment:
    lines: tuple

    def __str__(self):
        return "\n".join(self.lines)


def render(a) -> RenderedAlignment:
    widths = [max(len(a.symbol(r, p).name) for r, p in col.entries) + 1
              for col in a.columns]
    nrows = len(a.rows)
    margin = len(str(nrows - 1)) + 1
    grid = [[None] * len(a.columns) for _ in range(nrows)]
    for c, col in enumerate(a.columns):
        for r, p in col.entries:
            grid[r][c] = a.symbol(r, p).name
    lines: List[str] = []
    for r in range(nrows):
        if r:
            cells = ["|".ljust(w) if grid[r - 1][c] is not None
                     and grid[r][c] is not None else " " * w
                     for c, w in enumerate(widths)]
            lines.append((" " * margin + "".join(cells)).rstrip())
        cells = [(grid[r][c] or "").ljust(w) for c, w in enumerate(widths)]
        lines.append(str(r).ljust(margin) + "".join(cells) + str(r))
    return RenderedAlignment(tuple(lines))


def parse_rendered_row(line: str) -> tuple:
    """Symbol names of one rendered symbol line, margins stripped."""
    toks = line.split()
    return tuple(toks[1:-1])


def alignment_dict(a) -> dict:
    return {
        "rows": [{"pattern_id": row.id,
                  "symbols": [s.token() for s in row.symbols]}
                 for row in a.rows],
        "columns": [{"entries": {str(r): p for r, p in col.entries},
                     "name": col.name,
                     "matched": len(col.entries) > 1}
                    for col in a.columns],
    }


def candidate_dict(a, score, probability, code) -> dict:
    d = alignment_dict(a)
    d.update(cd=score.cd, b_new=score.b_new, b_code=score.b_code,
             probability=probability, code=list(code))
    return d
