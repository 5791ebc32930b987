"""Pure-Python GF(2) elimination engine using int bitsets.

Columns are Python integers: bit i set means the column has a 1 in row i.
Pivoting is deterministic, lowest row index first, so echelon columns,
kernel combinations and canonical residues are reproducible across runs
and identical to the compiled engine in ratslice._gf2core.

A column added to the engine is reduced against existing pivot columns
until its lowest set bit is a fresh row (then it becomes a pivot) or it
vanishes (then its combination mask is a kernel vector of the column set
added so far).  Every stored pivot column has its pivot row as the lowest
set bit, so reducing a target by repeatedly clearing its lowest pivot bit
terminates and yields the unique coset representative supported away from
all pivot rows.  With rows ordered by priority (bit 0 strongest), that
representative is lexicographically minimal in its coset.
"""

from __future__ import annotations


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


class Elimination:
    """Incremental column echelon over GF(2) with combination tracking."""

    def __init__(self, nrows: int, track: bool = True):
        self.nrows = nrows
        self.track = track
        self.ncols = 0
        self._pivot_of_row: dict[int, int] = {}
        self._cols: list[int] = []
        self._combos: list[int] = []
        self.kernel_combos: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._cols)

    def add_column(self, col: int) -> None:
        """Feed one column; may create a pivot or a kernel combination."""
        if col >> self.nrows:
            raise ValueError("column has bits outside the row range")
        combo = 1 << self.ncols
        self.ncols += 1
        while col:
            row = _lsb(col)
            idx = self._pivot_of_row.get(row)
            if idx is None:
                self._pivot_of_row[row] = len(self._cols)
                self._cols.append(col)
                self._combos.append(combo)
                return
            col ^= self._cols[idx]
            if self.track:
                combo ^= self._combos[idx]
        if self.track:
            self.kernel_combos.append(combo)

    def reduce(self, target: int) -> int:
        """Canonical representative of target modulo the column span."""
        if target >> self.nrows:
            raise ValueError("target has bits outside the row range")
        out = 0
        cur = target
        while cur:
            row = _lsb(cur)
            idx = self._pivot_of_row.get(row)
            if idx is None:
                bit = 1 << row
                out |= bit
                cur ^= bit
            else:
                cur ^= self._cols[idx]
        return out

    def solve(self, target: int) -> int | None:
        """Combination mask c with XOR of added columns in c == target."""
        if not self.track:
            raise ValueError("engine built without tracking")
        if target >> self.nrows:
            raise ValueError("target has bits outside the row range")
        combo = 0
        cur = target
        while cur:
            row = _lsb(cur)
            idx = self._pivot_of_row.get(row)
            if idx is None:
                return None
            cur ^= self._cols[idx]
            combo ^= self._combos[idx]
        return combo

    def contains(self, target: int) -> bool:
        return self.reduce(target) == 0
