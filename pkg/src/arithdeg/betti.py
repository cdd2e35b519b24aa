"""Graded Betti tables with the derived homological invariants."""

from __future__ import annotations

import json


class BettiTable:
    """Map (homological index i, internal degree j) -> beta_{i,j} for a quotient S/I.

    Derived data: projective dimension, regularity of the quotient, depth via
    the Auslander-Buchsbaum formula depth = nvars - pd.
    """

    def __init__(self, entries: dict, nvars: int):
        self.entries = {k: v for k, v in entries.items() if v}
        self.nvars = nvars

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def pd(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def reg(self) -> int:
        """Regularity of the quotient: max(j - i) over nonzero entries."""
        return max((j - i for i, j in self.entries), default=0)

    def depth(self) -> int:
        return self.nvars - self.pd()

    def __eq__(self, other):
        return (
            isinstance(other, BettiTable)
            and self.entries == other.entries
            and self.nvars == other.nvars
        )

    def __repr__(self):
        return f"BettiTable({self.entries})"

    def render(self) -> str:
        """Macaulay-style grid: rows are j - i, columns are i."""
        if not self.entries:
            return "(empty)"
        cols = range(self.pd() + 1)
        rows = range(min(j - i for i, j in self.entries), self.reg() + 1)
        width = max(len(str(v)) for v in self.entries.values())
        width = max(width, len(str(self.pd())), 2)
        head = "      " + " ".join(f"{i:>{width}}" for i in cols)
        lines = [head]
        for r in rows:
            cells = []
            for i in cols:
                v = self.beta(i, i + r)
                cells.append(f"{v:>{width}}" if v else f"{'.':>{width}}")
            lines.append(f"{r:>4}: " + " ".join(cells))
        return "\n".join(lines)

    def to_jsonable(self) -> dict:
        table: dict = {}
        for (i, j), v in sorted(self.entries.items()):
            table.setdefault(str(j - i), {})[str(i)] = v
        return {
            "rows": table,
            "pd": self.pd(),
            "reg": self.reg(),
            "depth": self.depth(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)
