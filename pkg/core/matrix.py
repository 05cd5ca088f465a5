# core/matrix.py
"""
Sparse exact-rational matrices with fraction-free rank and an exact kernel basis.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

logger = logging.getLogger(__name__)

Entries = Dict[Tuple[int, int], Fraction]


def _primitive(vec: Dict[int, int]) -> Dict[int, int]:
    """Divides an integer vector by the gcd of its entries; leading entry made positive."""
    if not vec:
        return vec
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            break
    if vec[min(vec)] < 0:
        g = -g
    if g == 1:
        return vec
    return {k: v // g for k, v in vec.items()}


def _integer_vectors(vectors: Iterable[Mapping[int, Fraction]]) -> List[Dict[int, int]]:
    out = []
    for vec in vectors:
        if not vec:
            continue
        scale = 1
        for v in vec.values():
            scale = lcm(scale, Fraction(v).denominator)
        out.append(_primitive({k: int(Fraction(v) * scale) for k, v in vec.items()}))
    return out


def echelon_rank(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    """
    Fraction-free incremental elimination. Vectors are scaled to primitive
    integer vectors and processed sparsest first (ties by position); each one
    is reduced on its lowest nonzero index against the stored pivots, and the
    result is divided by its content after every step to keep entries small.
    """
    ints = _integer_vectors(vectors)
    order = sorted(range(len(ints)), key=lambda i: (len(ints[i]), i))
    pivots: Dict[int, Dict[int, int]] = {}
    for i in order:
        vec = ints[i]
        while vec:
            lead = min(vec)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = vec
                break
            a, b = vec[lead], pivot[lead]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            reduced = {k: v * ma for k, v in vec.items()}
            for k, v in pivot.items():
                t = reduced.get(k, 0) - v * mb
                if t:
                    reduced[k] = t
                else:
                    reduced.pop(k, None)
            vec = _primitive(reduced)
    return len(pivots)


class RationalMatrix:
    """A rows x cols matrix stored as {(i, j): Fraction} without zeros."""

    def __init__(self, rows: int, cols: int, entries: Mapping[Tuple[int, int], object] = None):
        self.rows = rows
        self.cols = cols
        self.entries: Entries = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            v = Fraction(v)
            if v:
                self.entries[(i, j)] = v

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row)})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def to_dense(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            dense[i][j] = v
        return dense

    def row_vectors(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_vectors(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def apply(self, vec: Mapping[int, object]) -> Dict[int, Fraction]:
        """Matrix times a sparse column vector."""
        cols = self.column_vectors()
        out: Dict[int, Fraction] = {}
        for j, x in vec.items():
            x = Fraction(x)
            for i, v in cols[j].items():
                t = out.get(i, 0) + v * x
                if t:
                    out[i] = t
                else:
                    out.pop(i, None)
        return out

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        rows = self.row_vectors()
        other_rows = other.row_vectors()
        entries: Entries = {}
        for i, row in enumerate(rows):
            for k, a in row.items():
                for j, b in other_rows[k].items():
                    entries[(i, j)] = entries.get((i, j), 0) + a * b
        return RationalMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries

    def rank(self) -> int:
        """Exact rank over Q; eliminates along the shorter side."""
        if not self.entries:
            return 0
        vectors = self.row_vectors() if self.rows <= self.cols else self.column_vectors()
        return echelon_rank(vectors)

    def nullity(self) -> int:
        return self.cols - self.rank()

    def kernel_basis(self) -> List[Dict[int, Fraction]]:
        """A basis of {v : Mv = 0}, one vector per free column of the reduced row echelon form."""
        rows = [dict(r) for r in self.row_vectors() if r]
        pivot_rows: Dict[int, Dict[int, Fraction]] = {}
        for row in rows:
            for col, prow in pivot_rows.items():
                c = row.get(col)
                if c:
                    for k, v in prow.items():
                        t = row.get(k, 0) - c * v
                        if t:
                            row[k] = t
                        else:
                            row.pop(k, None)
            if not row:
                continue
            lead = min(row)
            inv = 1 / row[lead]
            row = {k: v * inv for k, v in row.items()}
            for col, prow in pivot_rows.items():
                c = prow.get(lead)
                if c:
                    for k, v in row.items():
                        t = prow.get(k, 0) - c * v
                        if t:
                            prow[k] = t
                        else:
                            prow.pop(k, None)
            pivot_rows[lead] = row
        basis = []
        for free in range(self.cols):
            if free in pivot_rows:
                continue
            vec = {free: Fraction(1)}
            for col, prow in pivot_rows.items():
                c = prow.get(free)
                if c:
                    vec[col] = -c
            basis.append(vec)
        return basis
