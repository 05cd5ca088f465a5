# core/semilattice.py
"""
Finite semigroups as multiplication tables: validation, the standard
families (free unital semilattices, chains), unitisation, homomorphisms
and the formal-substitution morphisms out of free unital semilattices.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .config import Caps, resolve_caps
from .errors import (
    BaseMismatch,
    BadUnit,
    IndexOutOfRange,
    MalformedTable,
    NonAssociative,
    NotHomomorphism,
    NotIdempotent,
    NotUnital,
    UnitNotPreserved,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SemigroupTable:
    """A validated finite semigroup. Build it with validate_table()."""

    elements: Tuple[str, ...]
    product: Tuple[Tuple[int, ...], ...]
    unit: Optional[int]
    commutative: bool
    idempotent: bool

    @property
    def size(self) -> int:
        return len(self.elements)

    def mul(self, x: int, y: int) -> int:
        return self.product[x][y]

    @property
    def is_semilattice(self) -> bool:
        return self.commutative and self.idempotent

    @property
    def is_unital_semilattice(self) -> bool:
        return self.is_semilattice and self.unit is not None

    def check_index(self, s: int) -> int:
        if not isinstance(s, int) or not 0 <= s < self.size:
            raise IndexOutOfRange(s, self.size)
        return s

    def describe(self) -> str:
        kind = "unital semilattice" if self.is_unital_semilattice else (
            "semilattice" if self.is_semilattice else "semigroup"
        )
        return f"{kind} of size {self.size}"


def _first_non_associative(product_rows: Sequence[Sequence[int]]) -> Optional[Tuple[int, int, int]]:
    n = len(product_rows)
    for x in range(n):
        row_x = product_rows[x]
        for y in range(n):
            xy = row_x[y]
            row_xy = product_rows[xy]
            row_y = product_rows[y]
            for z in range(n):
                if row_xy[z] != row_x[row_y[z]]:
                    return x, y, z
    return None


def _unit_witness(product_rows: Sequence[Sequence[int]], u: int) -> Optional[int]:
    for x in range(len(product_rows)):
        if product_rows[u][x] != x or product_rows[x][u] != x:
            return x
    return None


def find_unit(product_rows: Sequence[Sequence[int]]) -> Optional[int]:
    """Index of an identity element of a raw table, or None."""
    for u in range(len(product_rows)):
        if _unit_witness(product_rows, u) is None:
            return u
    return None


def validate_table(
    elements: Sequence[str],
    product_rows: Sequence[Sequence[int]],
    unit: Optional[int] = None,
    caps: Optional[Caps] = None,
) -> SemigroupTable:
    """
    Checks a raw table exhaustively (associativity is O(n^3)) and returns the
    immutable SemigroupTable with its commutative/idempotent flags derived.
    """
    caps = resolve_caps(caps)
    labels = tuple(str(e) for e in elements)
    n = len(labels)
    if n == 0:
        raise MalformedTable("a semigroup table needs at least one element")
    caps.check_elements(n)
    if len(set(labels)) != n:
        raise MalformedTable("element labels must be distinct")
    if len(product_rows) != n:
        raise MalformedTable(f"expected {n} rows, got {len(product_rows)}")
    rows = []
    for i, row in enumerate(product_rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has {len(row)} entries, expected {n}")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTable(f"row {i} holds {v!r}, which is not an element index")
        rows.append(tuple(row))
    rows = tuple(rows)

    bad = _first_non_associative(rows)
    if bad is not None:
        x, y, z = bad
        raise NonAssociative(x, y, z, (labels[x], labels[y], labels[z]))

    if unit is not None:
        if isinstance(unit, bool) or not isinstance(unit, int) or not 0 <= unit < n:
            raise BadUnit(unit)
        witness = _unit_witness(rows, unit)
        if witness is not None:
            raise BadUnit(unit, witness)

    commutative = all(rows[x][y] == rows[y][x] for x in range(n) for y in range(x + 1, n))
    idempotent = all(rows[x][x] == x for x in range(n))
    table = SemigroupTable(labels, rows, unit, commutative, idempotent)
    logger.debug(f"Validated {table.describe()}.")
    return table


# --- Free unital semilattices -------------------------------------------------


@lru_cache(maxsize=None)
def canonical_subsets(k: int) -> Tuple[Tuple[int, ...], ...]:
    """Subsets of {0..k-1} ordered by size, then lexicographically."""
    return tuple(c for r in range(k + 1) for c in combinations(range(k), r))


def subset_label(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


def generator_index(k: int, i: int) -> int:
    """Index of the singleton {i} inside free_unital_semilattice(k)."""
    if not 0 <= i < k:
        raise IndexOutOfRange(i, k)
    return 1 + i


@lru_cache(maxsize=None)
def _subset_positions(k: int) -> Dict[frozenset, int]:
    return {frozenset(s): idx for idx, s in enumerate(canonical_subsets(k))}


@lru_cache(maxsize=None)
def _free_table(k: int) -> SemigroupTable:
    subsets = canonical_subsets(k)
    positions = _subset_positions(k)
    rows = [
        [positions[frozenset(a) | frozenset(b)] for b in subsets] for a in subsets
    ]
    return validate_table(
        [subset_label(s) for s in subsets], rows, unit=0, caps=Caps(max_elements=2 ** k)
    )


def free_unital_semilattice(k: int, caps: Optional[Caps] = None) -> SemigroupTable:
    """The powerset 2^{0..k-1} under union, unit = empty set."""
    if k < 0:
        raise ValueError("generator count must be non-negative")
    resolve_caps(caps).check_elements(2 ** k, f"free unital semilattice on {k} generators")
    return _free_table(k)


def chain_semilattice(n: int, caps: Optional[Caps] = None) -> SemigroupTable:
    """{0..n-1} under max; 0 is the unit."""
    if n < 1:
        raise ValueError("a chain needs at least one element")
    resolve_caps(caps).check_elements(n, f"chain of length {n}")
    rows = [[max(a, b) for b in range(n)] for a in range(n)]
    return validate_table([str(i) for i in range(n)], rows, unit=0, caps=caps)


def null_monoid() -> SemigroupTable:
    """{1, n, z}: n*n = z, z absorbing. Its algebra has non-vanishing H_1."""
    # indices: 0 = 1, 1 = n, 2 = z
    rows = [[0, 1, 2], [1, 2, 2], [2, 2, 2]]
    return validate_table(["1", "n", "z"], rows, unit=0)


def null_semigroup() -> SemigroupTable:
    """{n, z}: n*n = z, z absorbing; no unit."""
    return validate_table(["n", "z"], [[1, 1], [1, 1]])


def left_zero_band() -> SemigroupTable:
    """{a, b} with xy = x: an idempotent, non-commutative semigroup."""
    return validate_table(["a", "b"], [[0, 0], [1, 1]])


# --- Unitisation --------------------------------------------------------------


def unitize(table: SemigroupTable) -> SemigroupTable:
    """
    Adjoins a fresh identity (appended last) when the table declares none.
    A table that already declares a unit is returned unchanged.
    """
    if table.unit is not None:
        logger.info("Table is already unital; unitize returns it unchanged.")
        return table
    label = "1"
    while label in table.elements:
        label += "'"
    n = table.size
    rows = [list(row) + [i] for i, row in enumerate(table.product)]
    rows.append(list(range(n)) + [n])
    result = validate_table(
        list(table.elements) + [label], rows, unit=n, caps=Caps(max_elements=n + 1)
    )
    logger.info(f"Adjoined unit '{label}': size {n} -> {n + 1}.")
    return result


# --- Morphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    source: SemigroupTable
    target: SemigroupTable
    map: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def apply_tuple(self, key: Tuple[int, ...]) -> Tuple[int, ...]:
        m = self.map
        return tuple(m[i] for i in key)

    def compose(self, first: "Morphism") -> "Morphism":
        """self o first: apply `first`, then self."""
        if first.target != self.source:
            raise BaseMismatch("cannot compose: target of the first map is not the source of the second")
        return Morphism(first.source, self.target, tuple(self.map[i] for i in first.map))


def validate_morphism(
    source: SemigroupTable, target: SemigroupTable, mapping: Sequence[int]
) -> Morphism:
    """Checks the homomorphism law on all pairs and unit preservation."""
    images = tuple(mapping)
    if len(images) != source.size:
        raise MalformedTable(
            f"morphism map has {len(images)} entries, source has {source.size}"
        )
    for v in images:
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < target.size:
            raise IndexOutOfRange(v, target.size)
    for x in range(source.size):
        for y in range(source.size):
            if images[source.mul(x, y)] != target.mul(images[x], images[y]):
                raise NotHomomorphism(x, y)
    if source.unit is not None and target.unit is not None:
        if images[source.unit] != target.unit:
            raise UnitNotPreserved(images[source.unit], target.unit)
    return Morphism(source, target, images)


def identity_morphism(table: SemigroupTable) -> Morphism:
    return Morphism(table, table, tuple(range(table.size)))


def _require_unital_semilattice(table: SemigroupTable) -> None:
    if table.unit is None:
        raise NotUnital("formal substitution needs a unital target")
    if not table.is_semilattice:
        raise NotIdempotent("formal substitution needs a commutative idempotent target")


def substitution_map(table: SemigroupTable, x: Sequence[int]) -> Tuple[int, ...]:
    """
    Images of every subset J of {0..j} (canonical order) under J -> prod_{i in J} x_i.
    No checks; callers guarantee `table` is a unital semilattice.
    """
    rows = table.product
    out = []
    for subset in canonical_subsets(len(x)):
        acc = table.unit
        for i in subset:
            acc = rows[acc][x[i]]
        out.append(acc)
    return tuple(out)


def substitution_morphism(
    table: SemigroupTable, x: Sequence[int], caps: Optional[Caps] = None
) -> Morphism:
    """The unique monoid morphism 2^{[j+1]} -> S sending the generator f_i to x_i."""
    _require_unital_semilattice(table)
    x = tuple(table.check_index(i) for i in x)
    source = free_unital_semilattice(len(x), caps)
    return Morphism(source, table, substitution_map(table, x))


def threshold_morphism(chain: SemigroupTable, cut: int) -> Morphism:
    """Collapse of a chain onto the 2-chain: i -> 0 if i < cut else 1."""
    two = chain_semilattice(2)
    return validate_morphism(chain, two, [0 if i < cut else 1 for i in range(chain.size)])


def collapse_morphism(k: int) -> Morphism:
    """2^{[k]} -> 2-chain sending the empty set to 0 and everything else to 1."""
    free = free_unital_semilattice(k)
    two = chain_semilattice(2)
    return validate_morphism(free, two, [0] + [1] * (free.size - 1))


def relabel(table: SemigroupTable, perm: Sequence[int]) -> Tuple[SemigroupTable, Morphism]:
    """
    An isomorphic copy of `table` in which element i sits at position perm[i],
    together with the relabeling isomorphism table -> copy.
    """
    n = table.size
    if sorted(perm) != list(range(n)):
        raise MalformedTable("relabeling must be a permutation of the indices")
    inverse = [0] * n
    for i, p in enumerate(perm):
        inverse[p] = i
    labels = [table.elements[inverse[p]] for p in range(n)]
    rows = [
        [perm[table.mul(inverse[p], inverse[q])] for q in range(n)] for p in range(n)
    ]
    unit = None if table.unit is None else perm[table.unit]
    copy = validate_table(labels, rows, unit=unit)
    return copy, validate_morphism(table, copy, perm)


# --- Enumeration of small tables ---------------------------------------------


def _consistent(rows: List[List[Optional[int]]]) -> bool:
    n = len(rows)
    for x in range(n):
        for y in range(n):
            xy = rows[x][y]
            if xy is None:
                continue
            for z in range(n):
                yz = rows[y][z]
                if yz is None:
                    continue
                left = rows[xy][z]
                right = rows[x][yz]
                if left is not None and right is not None and left != right:
                    return False
    return True


def _fill(rows, pairs, pos, values) -> Iterator[List[List[int]]]:
    if pos == len(pairs):
        yield [list(r) for r in rows]
        return
    i, j = pairs[pos]
    for v in values:
        rows[i][j] = rows[j][i] = v
        if _consistent(rows):
            yield from _fill(rows, pairs, pos + 1, values)
    rows[i][j] = rows[j][i] = None


def enumerate_unital_semilattices(size: int) -> Iterator[SemigroupTable]:
    """
    Every raw unital semilattice table on the labels 0..size-1, by backtracking
    over the upper triangle with the unit row/column and diagonal fixed.
    Not reduced up to isomorphism.
    """
    values = range(size)
    for unit in range(size):
        rows: List[List[Optional[int]]] = [[None] * size for _ in range(size)]
        for i in range(size):
            rows[i][i] = i
            rows[unit][i] = rows[i][unit] = i
        pairs = [
            (i, j)
            for i in range(size)
            for j in range(i + 1, size)
            if unit not in (i, j)
        ]
        for filled in _fill(rows, pairs, 0, values):
            yield validate_table([str(i) for i in range(size)], filled, unit=unit)


def enumerate_commutative_semigroups(size: int) -> Iterator[SemigroupTable]:
    """Every raw commutative semigroup table of the given size; the unit is declared when one exists."""
    values = range(size)
    rows: List[List[Optional[int]]] = [[None] * size for _ in range(size)]
    pairs = [(i, j) for i in range(size) for j in range(i, size)]
    for filled in _fill(rows, pairs, 0, values):
        yield validate_table([str(i) for i in range(size)], filled, unit=find_unit(filled))
