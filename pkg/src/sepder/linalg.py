"""Exact linear algebra over Q.

Two independent routes are kept on purpose: a dense fraction-free rank on
rational matrices, and a sparse incremental echelon form on integer rows that
the oracle uses for its large, very sparse systems.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

__all__ = ["rational_rank", "integer_row", "SparseEchelon", "sparse_nullspace"]


def integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational sparse row to a primitive integer row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def rational_rank(m: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination after clearing denominators."""
    rows = []
    for r in m:
        den = 1
        for v in r:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        rows.append([int(Fraction(v) * den) for v in r])
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, n_rows):
            lead = rows[r][col]
            row = rows[r]
            prow = rows[rank]
            for c in range(col, n_cols):
                row[c] = (p * row[c] - lead * prow[c]) // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class SparseEchelon:
    """Row echelon basis built one sparse integer row at a time.

    Columns are integers; the pivot of a stored row is its smallest column.
    ``add`` returns True when the row was independent of everything so far.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, int]) -> dict[int, int]:
        row = {k: v for k, v in row.items() if v}
        pivots = self.pivots
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                return row
            a = p[c]
            b = row[c]
            if a == 1 or a == -1:
                f = b * a
                for k, v in p.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        del row[k]
            else:
                g = gcd(a, b)
                ma, mb = a // g, b // g
                new = {k: v * ma for k, v in row.items()}
                for k, v in p.items():
                    nv = new.get(k, 0) - mb * v
                    if nv:
                        new[k] = nv
                    else:
                        del new[k]
                row = _primitive(new)
        return row

    def add(self, row: Mapping[int, int]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = _primitive(r)
        return True

    def contains(self, row: Mapping[int, int]) -> bool:
        return not self.reduce(row)


def sparse_nullspace(rows: Iterable[Mapping[int, int]], columns: Sequence[int]) -> list[dict[int, Fraction]]:
    """Basis of {v : row . v = 0 for every row}, over the given column ids.

    Free columns are visited in ascending order; each basis vector has a 1 in
    its free column and zeros in the other free columns.
    """
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    # back-substitute into reduced echelon form, largest pivot first
    piv_cols = sorted(ech.pivots)
    reduced: dict[int, dict[int, Fraction]] = {}
    for c in reversed(piv_cols):
        row = ech.pivots[c]
        lead = row[c]
        vec = {k: Fraction(v, lead) for k, v in row.items()}
        for k in [k for k in vec if k != c and k in reduced]:
            f = vec.pop(k)
            for kk, vv in reduced[k].items():
                if kk == k:
                    continue
                nv = vec.get(kk, 0) - f * vv
                if nv:
                    vec[kk] = nv
                else:
                    vec.pop(kk, None)
        reduced[c] = vec
    pivset = set(piv_cols)
    free = [c for c in columns if c not in pivset]
    # column -> list of (pivot column, coefficient) for fast assembly
    uses: dict[int, list[tuple[int, Fraction]]] = {}
    for c, vec in reduced.items():
        for k, v in vec.items():
            if k != c:
                uses.setdefault(k, []).append((c, v))
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for c, v in uses.get(f, ()):
            vec[c] = -v
        basis.append(vec)
    return basis
