"""Canonical normal forms modulo an integer row lattice.

Relations in the truncated quotient rings span a sublattice of Z^n; a
Hermite-style echelon basis of that lattice gives every coset a unique
representative.  Leading-term rewriting alone is not enough because 2 is
not invertible in the rings of interest, so vectors are reduced
coordinate by coordinate against the echelon pivots, taking
least-absolute-value residues (ties resolved to the positive one).

Rows are sparse ``{column: value}`` dicts; the generator sets that arise
here (monomial multiples of a 2-series) have only a handful of entries
each, so the echelon pass stays cheap even for a few hundred columns.
"""

from __future__ import annotations

Row = dict[int, int]


def _least_abs_quotient(value: int, modulus: int) -> int:
    """q such that value - q*modulus lies in (-modulus/2, modulus/2]."""
    r = value % modulus
    if 2 * r > modulus:
        r -= modulus
    return (value - r) // modulus


def _row_subtract(row: Row, factor: int, other: Row) -> None:
    if not factor:
        return
    for col, val in other.items():
        new = row.get(col, 0) - factor * val
        if new:
            row[col] = new
        else:
            row.pop(col, None)


class IntegerLattice:
    """Row lattice in Z^ncols with a canonical echelon basis."""

    def __init__(self, rows: list[Row], ncols: int):
        self.ncols = ncols
        self.pivots: list[tuple[int, Row]] = []
        self._build([dict(r) for r in rows if r])

    def _build(self, rows: list[Row]) -> None:
        buckets: dict[int, list[Row]] = {}
        for r in rows:
            buckets.setdefault(min(r), []).append(r)
        for col in range(self.ncols):
            live = buckets.pop(col, None)
            if not live:
                continue
            while len(live) > 1:
                live.sort(key=lambda r: abs(r[col]))
                base = live[0]
                survivors = [base]
                for r in live[1:]:
                    _row_subtract(r, r[col] // base[col], base)
                    if not r:
                        continue
                    if r.get(col):
                        survivors.append(r)
                    else:
                        buckets.setdefault(min(r), []).append(r)
                live = survivors
            pivot = live[0]
            if pivot[col] < 0:
                pivot = {c: -v for c, v in pivot.items()}
            self.pivots.append((col, pivot))
        # Back-reduce entries of earlier pivot rows to canonical residues.
        for idx in range(len(self.pivots) - 1, -1, -1):
            col, prow = self.pivots[idx]
            g = prow[col]
            for jdx in range(idx):
                _, upper = self.pivots[jdx]
                if upper.get(col):
                    _row_subtract(upper, _least_abs_quotient(upper[col], g), prow)

    def reduce(self, vector: Row) -> Row:
        """The canonical representative of vector + lattice."""
        vec = {c: v for c, v in vector.items() if v}
        for col, prow in self.pivots:
            val = vec.get(col)
            if val:
                _row_subtract(vec, _least_abs_quotient(val, prow[col]), prow)
        return vec

    def contains(self, vector: Row) -> bool:
        return not self.reduce(vector)
