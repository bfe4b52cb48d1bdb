"""Exact Gaussian elimination over a cyclotomic field.

Vectors are plain sequences of :class:`Cyc`.  Rows are kept sparse
(``{column: entry}``) and fully reduced, pivot = first nonzero entry.
"""
from __future__ import annotations

from typing import Sequence

from .exact_arith import Cyc, cyc_inv


class EchelonBasis:
    """Incrementally grown reduced row-echelon basis of a subspace of K^dim."""

    def __init__(self, order: int, dim: int):
        self.order = order
        self.dim = dim
        self._rows: dict[int, dict[int, Cyc]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _sparse(self, vec: Sequence[Cyc]) -> dict[int, Cyc]:
        if len(vec) != self.dim:
            raise ValueError(f"expected length {self.dim}, got {len(vec)}")
        return {i: x for i, x in enumerate(vec) if x}

    def _reduce(self, row: dict[int, Cyc]) -> dict[int, Cyc]:
        for p, prow in self._rows.items():
            c = row.get(p)
            if c is None:
                continue
            for j, y in prow.items():
                v = row.get(j)
                v = -(c * y) if v is None else v - c * y
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        return row

    def reduce(self, vec: Sequence[Cyc]) -> list[Cyc]:
        """Remainder of ``vec`` modulo the current span."""
        row = self._reduce(self._sparse(vec))
        zero = Cyc.zero(self.order)
        return [row.get(i, zero) for i in range(self.dim)]

    def contains(self, vec: Sequence[Cyc]) -> bool:
        return not self._reduce(self._sparse(vec))

    def insert(self, vec: Sequence[Cyc]) -> bool:
        """Add ``vec`` to the span.  Returns False if it was already inside."""
        row = self._reduce(self._sparse(vec))
        if not row:
            return False
        p = min(row)
        inv = cyc_inv(row[p])
        row = {j: x * inv for j, x in row.items()}
        # keep the basis fully reduced
        for q, qrow in self._rows.items():
            c = qrow.get(p)
            if c is None:
                continue
            for j, y in row.items():
                v = qrow.get(j)
                v = -(c * y) if v is None else v - c * y
                if v:
                    qrow[j] = v
                else:
                    qrow.pop(j, None)
        self._rows[p] = row
        return True

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[list[Cyc]]:
        zero = Cyc.zero(self.order)
        return [
            [self._rows[p].get(i, zero) for i in range(self.dim)]
            for p in sorted(self._rows)
        ]


def rank(order: int, vectors: Sequence[Sequence[Cyc]]) -> int:
    if not vectors:
        return 0
    eb = EchelonBasis(order, len(vectors[0]))
    for v in vectors:
        eb.insert(v)
    return eb.rank


def solve(order: int, rows: Sequence[Sequence[Cyc]], rhs: Sequence[Cyc]) -> list[Cyc]:
    """Solve the square system ``rows @ x = rhs``; raises if singular."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = cyc_inv(aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]
