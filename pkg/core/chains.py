# core/chains.py
"""
Hochschild chains and cochains of l1(S) with coefficients in a finite
dimensional bimodule, the (co)boundary operators, induced maps of
morphisms and extraction of their matrices in the primitive-tensor basis.

A degree-n chain is a sparse map from (n+1)-tuples to Fractions. Without a
module the tuple is (x, a_1, ..., a_n) with x in S; with a module slot 0
holds a module-basis index instead.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .config import Caps, resolve_caps
from .errors import (
    ArityMismatch,
    BaseMismatch,
    BimoduleError,
    DegreeTooLow,
    IndexOutOfRange,
    NotSymmetric,
    NotUnital,
)
from .matrix import RationalMatrix
from .reports import ModuleMapReport
from .semilattice import Morphism, SemigroupTable
from .sparse import add_into, canonical, combine, l1, scaled

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


# --- Bimodules ----------------------------------------------------------------


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols))
        for i in range(n)
    )


def _identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


@dataclass(frozen=True)
class Bimodule:
    """
    A finite dimensional l1(S)-bimodule given by the matrices of the basis
    actions: left[s] is L(s) with L(s)v = e_s . v, right[s] is R(s) with
    R(s)v = v . e_s. Build it with validate_bimodule().
    """

    base: SemigroupTable
    dim: int
    left: Tuple[Matrix, ...]
    right: Tuple[Matrix, ...]
    name: str = "M"

    @property
    def symmetric(self) -> bool:
        return self.left == self.right

    @property
    def unit_linked(self) -> bool:
        unit = self.base.unit
        if unit is None:
            return False
        eye = _identity(self.dim)
        return self.left[unit] == eye and self.right[unit] == eye

    @cached_property
    def left_columns(self) -> Tuple[Tuple[Dict[int, Fraction], ...], ...]:
        """left_columns[s][m] = column m of L(s) as {row: value}."""
        return tuple(_columns(mat, self.dim) for mat in self.left)

    @cached_property
    def right_columns(self) -> Tuple[Tuple[Dict[int, Fraction], ...], ...]:
        return tuple(_columns(mat, self.dim) for mat in self.right)

    @cached_property
    def left_rows(self) -> Tuple[Tuple[Dict[int, Fraction], ...], ...]:
        """left_rows[s][m'] = row m' of L(s) as {column: value}."""
        return tuple(_rows(mat) for mat in self.left)

    @cached_property
    def right_rows(self) -> Tuple[Tuple[Dict[int, Fraction], ...], ...]:
        return tuple(_rows(mat) for mat in self.right)


def _columns(mat: Matrix, d: int) -> Tuple[Dict[int, Fraction], ...]:
    return tuple({i: mat[i][j] for i in range(d) if mat[i][j]} for j in range(d))


def _rows(mat: Matrix) -> Tuple[Dict[int, Fraction], ...]:
    return tuple({j: v for j, v in enumerate(row) if v} for row in mat)


def _as_matrix(raw, d: int, what: str) -> Matrix:
    if len(raw) != d or any(len(row) != d for row in raw):
        raise BimoduleError(f"{what} must be a {d}x{d} matrix")
    return tuple(tuple(Fraction(v) for v in row) for row in raw)


def validate_bimodule(
    base: SemigroupTable,
    dim: int,
    left: Sequence[Sequence[Sequence[object]]],
    right: Sequence[Sequence[Sequence[object]]],
    name: str = "M",
) -> Bimodule:
    """Checks L(st) = L(s)L(t), R(st) = R(t)R(s) and L(s)R(t) = R(t)L(s) on every basis pair."""
    if dim < 0:
        raise BimoduleError("bimodule dimension must be non-negative")
    if len(left) != base.size or len(right) != base.size:
        raise BimoduleError(f"need one action matrix per element ({base.size})")
    lmats = tuple(_as_matrix(m, dim, f"L({s})") for s, m in enumerate(left))
    rmats = tuple(_as_matrix(m, dim, f"R({s})") for s, m in enumerate(right))
    for s in range(base.size):
        for t in range(base.size):
            st = base.mul(s, t)
            if _matmul(lmats[s], lmats[t]) != lmats[st]:
                raise BimoduleError("left action is not multiplicative", (s, t))
            if _matmul(rmats[t], rmats[s]) != rmats[st]:
                raise BimoduleError("right action is not anti-multiplicative", (s, t))
            if _matmul(lmats[s], rmats[t]) != _matmul(rmats[t], lmats[s]):
                raise BimoduleError("left and right actions do not commute", (s, t))
    module = Bimodule(base, dim, lmats, rmats, name)
    logger.debug(
        f"Validated bimodule {name} of dim {dim} "
        f"(symmetric={module.symmetric}, unit_linked={module.unit_linked})."
    )
    return module


def _indicator(d: int, hit: Callable[[int, int], bool]) -> List[List[int]]:
    return [[1 if hit(b, t) else 0 for t in range(d)] for b in range(d)]


def regular_bimodule(table: SemigroupTable) -> Bimodule:
    """l1(S) acting on itself by multiplication."""
    n = table.size
    left = [_indicator(n, lambda b, t, s=s: table.mul(s, t) == b) for s in range(n)]
    right = [_indicator(n, lambda b, t, s=s: table.mul(t, s) == b) for s in range(n)]
    return validate_bimodule(table, n, left, right, name="A")


def dual_bimodule(table: SemigroupTable) -> Bimodule:
    """
    The coordinate dual A' with basis the dual functionals delta_b:
    (s . phi)(a) = phi(a s) and (phi . s)(a) = phi(s a).
    """
    n = table.size
    left = [_indicator(n, lambda b, t, s=s: table.mul(b, s) == t) for s in range(n)]
    right = [_indicator(n, lambda b, t, s=s: table.mul(s, b) == t) for s in range(n)]
    return validate_bimodule(table, n, left, right, name="A'")


def zero_bimodule(table: SemigroupTable, dim: int = 0) -> Bimodule:
    zero = [[0] * dim for _ in range(dim)]
    mats = [zero] * table.size
    return validate_bimodule(table, dim, mats, mats, name="0")


def character_bimodule(table: SemigroupTable, character: Sequence[int]) -> Bimodule:
    """C with both actions given by a semigroup character S -> {0, 1}."""
    chi = tuple(character)
    if len(chi) != table.size or any(v not in (0, 1) for v in chi):
        raise BimoduleError("a character assigns 0 or 1 to every element")
    mats = [[[chi[s]]] for s in range(table.size)]
    return validate_bimodule(table, 1, mats, mats, name=f"chi{list(chi)}")


def extend_unit_linked(module: Bimodule, unitized: SemigroupTable) -> Bimodule:
    """
    The forced unitisation M_1 over S^1 = unitize(S): the adjoined unit acts
    as the identity on both sides, (a + t1).x = ax + tx.
    """
    if module.base.unit is not None:
        raise BimoduleError("module already lives over a unital table")
    n = module.base.size
    if unitized.size != n + 1 or unitized.unit != n:
        raise NotUnital("expected the unitisation of the module's table")
    for s in range(n):
        if unitized.product[s][:n] != module.base.product[s]:
            raise BaseMismatch("unitized table does not extend the module's table")
    eye = _identity(module.dim)
    return validate_bimodule(
        unitized,
        module.dim,
        list(module.left) + [eye],
        list(module.right) + [eye],
        name=f"{module.name}_1",
    )


def require_symmetric(module: Bimodule) -> None:
    for s in range(module.base.size):
        if module.left[s] != module.right[s]:
            raise NotSymmetric("left and right actions differ", (s,))


# --- Chains -------------------------------------------------------------------


def _check_key(base: SemigroupTable, module: Optional[Bimodule], degree: int, key: Key) -> None:
    if len(key) != degree + 1:
        raise ArityMismatch(f"degree-{degree} keys have {degree + 1} slots, got {key}")
    if module is not None:
        if not isinstance(key[0], int) or not 0 <= key[0] < module.dim:
            raise IndexOutOfRange(key[0], module.dim)
        rest = key[1:]
    else:
        rest = key
    for s in rest:
        base.check_index(s)


class Chain:
    """A Hochschild chain in canonical sparse form. Treated as an immutable value."""

    __slots__ = ("base", "degree", "coeffs", "module")

    def __init__(
        self,
        base: SemigroupTable,
        degree: int,
        coeffs: Optional[Mapping[Key, object]] = None,
        module: Optional[Bimodule] = None,
    ):
        if degree < 0:
            raise ArityMismatch("chain degree must be non-negative")
        if module is not None and module.base != base:
            raise BaseMismatch("module lives over a different table")
        self.base = base
        self.degree = degree
        self.module = module
        self.coeffs: Dict[Key, Fraction] = canonical(
            (tuple(k), v) for k, v in (coeffs or {}).items()
        )
        for key in self.coeffs:
            _check_key(base, module, degree, key)

    @classmethod
    def _trusted(cls, base, degree, coeffs, module=None) -> "Chain":
        obj = cls.__new__(cls)
        obj.base = base
        obj.degree = degree
        obj.coeffs = coeffs
        obj.module = module
        return obj

    def _like(self, coeffs: Dict[Key, Fraction]) -> "Chain":
        return Chain._trusted(self.base, self.degree, coeffs, self.module)

    def _compatible(self, other: "Chain") -> None:
        if self.degree != other.degree:
            raise ArityMismatch(f"cannot combine degrees {self.degree} and {other.degree}")
        if self.base != other.base or self.module != other.module:
            raise BaseMismatch("chains live over different tables or modules")

    def __add__(self, other: "Chain") -> "Chain":
        self._compatible(other)
        return self._like(combine(self.coeffs, other.coeffs))

    def __sub__(self, other: "Chain") -> "Chain":
        self._compatible(other)
        return self._like(combine(self.coeffs, other.coeffs, -1))

    def __neg__(self) -> "Chain":
        return self._like(scaled(self.coeffs, -1))

    def __mul__(self, scalar) -> "Chain":
        return self._like(scaled(self.coeffs, scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.coeffs == other.coeffs
            and self.base == other.base
            and self.module == other.module
        )

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self) -> List[Tuple[Key, Fraction]]:
        return sorted(self.coeffs.items())

    def norm(self) -> Fraction:
        return l1(self.coeffs)

    def __repr__(self) -> str:
        where = f" in {self.module.name}" if self.module else ""
        return f"Chain(degree={self.degree}{where}, terms={len(self.coeffs)})"


def zero_chain(base: SemigroupTable, degree: int, module: Optional[Bimodule] = None) -> Chain:
    return Chain._trusted(base, degree, {}, module)


def primitive_tensor(
    base: SemigroupTable,
    key: Sequence[int],
    degree: Optional[int] = None,
    module: Optional[Bimodule] = None,
) -> Chain:
    key = tuple(key)
    if not key:
        raise ArityMismatch("a primitive tensor needs at least one slot")
    if degree is None:
        degree = len(key) - 1
    _check_key(base, module, degree, key)
    return Chain._trusted(base, degree, {key: Fraction(1)}, module)


def chain_basis(
    base: SemigroupTable, degree: int, module: Optional[Bimodule] = None
) -> Iterator[Key]:
    """Basis tuples of C_degree in canonical (row-major) order."""
    first = range(module.dim) if module is not None else range(base.size)
    return product(first, *([range(base.size)] * degree))


def chain_dim(base: SemigroupTable, degree: int, module: Optional[Bimodule] = None) -> int:
    first = module.dim if module is not None else base.size
    return first * base.size ** degree


def tuple_index(key: Key, size: int) -> int:
    """Position of a basis tuple in the canonical order; slot 0 is the leading digit."""
    idx = key[0]
    for a in key[1:]:
        idx = idx * size + a
    return idx


# --- Face maps and the boundary -----------------------------------------------


def _face_of_tuple(
    base: SemigroupTable, module: Optional[Bimodule], key: Key, i: int
) -> Dict[Key, Fraction]:
    """The i-th face of a primitive tensor of degree n+1 (i = 0 .. n+1)."""
    last = len(key) - 1
    rows = base.product
    x = key[0]
    if 0 < i < last:
        return {key[:i] + (rows[key[i]][key[i + 1]],) + key[i + 2:]: Fraction(1)}
    if i == 0:
        rest = key[2:]
        if module is None:
            return {(rows[x][key[1]],) + rest: Fraction(1)}
        return {(m,) + rest: v for m, v in module.right_columns[key[1]][x].items()}
    middle = key[1:last]
    if module is None:
        return {(rows[key[last]][x],) + middle: Fraction(1)}
    return {(m,) + middle: v for m, v in module.left_columns[key[last]][x].items()}


def face_map(c: Chain, i: int) -> Chain:
    """The unsigned face d_i: C_{n+1} -> C_n."""
    if c.degree < 1:
        raise DegreeTooLow("face maps start in degree 1")
    if not 0 <= i <= c.degree:
        raise IndexOutOfRange(i, c.degree + 1)
    acc: Dict[Key, Fraction] = {}
    for key, coeff in c.coeffs.items():
        for k, v in _face_of_tuple(c.base, c.module, key, i).items():
            add_into(acc, k, coeff * v)
    return Chain._trusted(c.base, c.degree - 1, acc, c.module)


def boundary_of_tuple(
    base: SemigroupTable, key: Key, module: Optional[Bimodule] = None
) -> Dict[Key, Fraction]:
    """d applied to one primitive tensor, as a sparse map."""
    acc: Dict[Key, Fraction] = {}
    for i in range(len(key)):
        sign = 1 if i % 2 == 0 else -1
        for k, v in _face_of_tuple(base, module, key, i).items():
            add_into(acc, k, sign * v)
    return acc


def boundary(c: Chain) -> Chain:
    """d_n: C_{n+1} -> C_n, the alternating sum of the faces."""
    if c.degree < 1:
        raise DegreeTooLow("the boundary is defined on chains of degree >= 1")
    acc: Dict[Key, Fraction] = {}
    for key, coeff in c.coeffs.items():
        for k, v in boundary_of_tuple(c.base, key, c.module).items():
            add_into(acc, k, coeff * v)
    return Chain._trusted(c.base, c.degree - 1, acc, c.module)


def left_action(b: int, c: Chain) -> Chain:
    """e_b acting on slot 0: e_b . (x (x) a_1 (x) ... ) = bx (x) a_1 (x) ..."""
    c.base.check_index(b)
    acc: Dict[Key, Fraction] = {}
    for key, coeff in c.coeffs.items():
        rest = key[1:]
        if c.module is None:
            add_into(acc, (c.base.mul(b, key[0]),) + rest, coeff)
        else:
            for m, v in c.module.left_columns[b][key[0]].items():
                add_into(acc, (m,) + rest, coeff * v)
    return c._like(acc)


def induced_map(theta: Morphism, c: Chain, n: Optional[int] = None) -> Chain:
    """theta applied entrywise to every tuple key (the map theta^{(x) n+1})."""
    if c.module is not None:
        raise BimoduleError("induced maps act on chains with coefficients in the algebra")
    if n is not None and n != c.degree:
        raise ArityMismatch(f"expected a degree-{n} chain, got degree {c.degree}")
    if c.base != theta.source:
        raise BaseMismatch("chain does not live over the morphism's source")
    m = theta.map
    acc: Dict[Key, Fraction] = {}
    for key, coeff in c.coeffs.items():
        add_into(acc, tuple(m[i] for i in key), coeff)
    return Chain._trusted(theta.target, c.degree, acc)


def boundary_matrix(
    base: SemigroupTable,
    n: int,
    module: Optional[Bimodule] = None,
    caps: Optional[Caps] = None,
) -> RationalMatrix:
    """
    Matrix of d_n: C_{n+1} -> C_n; columns are degree-(n+1) tuples and rows
    degree-n tuples, both in canonical order.
    """
    caps = resolve_caps(caps)
    cols = chain_dim(base, n + 1, module)
    rows = chain_dim(base, n, module)
    caps.check_dim(cols, f"C_{n + 1} of a size-{base.size} table")
    size = base.size
    entries: Dict[Tuple[int, int], Fraction] = {}
    for j, key in enumerate(chain_basis(base, n + 1, module)):
        for k, v in boundary_of_tuple(base, key, module).items():
            entries[(tuple_index(k, size), j)] = v
    logger.debug(f"Assembled d_{n}: {rows}x{cols}, {len(entries)} nonzeros.")
    return RationalMatrix(rows, cols, entries)


def module_map_check(
    base: SemigroupTable, n: int, b: int, module: Optional[Bimodule] = None
) -> ModuleMapReport:
    """Checks d_n(b.c) = b.d_n(c) on every primitive tensor c of degree n+1."""
    base.check_index(b)
    checked = 0
    witness = None
    for key in chain_basis(base, n + 1, module):
        c = Chain._trusted(base, n + 1, {key: Fraction(1)}, module)
        checked += 1
        if boundary(left_action(b, c)) != left_action(b, boundary(c)):
            witness = key
            break
    passed = witness is None
    if not passed:
        logger.info(f"d_{n} is not a left module map for e_{b}: witness {witness}.")
    return ModuleMapReport(
        table=base.describe(), degree=n, element=b, checked=checked,
        passed=passed, witness=witness,
    )


# --- Cochains -----------------------------------------------------------------


class Cochain:
    """
    A Hochschild n-cochain stored densely: every n-tuple of element indices
    maps to a coordinate vector of length module.dim.
    """

    __slots__ = ("base", "degree", "module", "values")

    def __init__(
        self,
        base: SemigroupTable,
        degree: int,
        module: Bimodule,
        values: Mapping[Key, Sequence[object]],
    ):
        if module.base != base:
            raise BaseMismatch("module lives over a different table")
        self.base = base
        self.degree = degree
        self.module = module
        vals: Dict[Key, Tuple[Fraction, ...]] = {}
        for key in product(range(base.size), repeat=degree):
            if key not in values:
                raise ArityMismatch(f"cochain has no value at {key}")
            vec = tuple(Fraction(v) for v in values[key])
            if len(vec) != module.dim:
                raise ArityMismatch(f"value at {key} has {len(vec)} coordinates, expected {module.dim}")
            vals[key] = vec
        if len(values) != len(vals):
            raise ArityMismatch(f"degree-{degree} cochains take {degree}-tuples")
        self.values = vals

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.module == other.module
            and self.values == other.values
        )

    __hash__ = None

    def __call__(self, *args: int) -> Tuple[Fraction, ...]:
        return self.values[tuple(args)]

    def is_zero(self) -> bool:
        return not any(any(vec) for vec in self.values.values())

    def to_vector(self) -> Dict[int, Fraction]:
        """Coordinates indexed by (m, a_1..a_n) in canonical order."""
        size = self.base.size
        out: Dict[int, Fraction] = {}
        for key, vec in self.values.items():
            for m, v in enumerate(vec):
                if v:
                    out[tuple_index((m,) + key, size)] = v
        return out

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, module={self.module.name})"


def cochain_from_function(
    base: SemigroupTable, degree: int, module: Bimodule, fn: Callable[..., Sequence[object]]
) -> Cochain:
    values = {key: fn(*key) for key in product(range(base.size), repeat=degree)}
    return Cochain(base, degree, module, values)


def coboundary(f: Cochain) -> Cochain:
    """
    (delta F)(a_1..a_{n+1}) = a_1.F(a_2..) + sum_j (-1)^j F(.., a_j a_{j+1}, ..)
    + (-1)^{n+1} F(a_1..a_n).a_{n+1}.
    """
    base, module, n = f.base, f.module, f.degree
    d = module.dim
    rows = base.product
    last_sign = 1 if (n + 1) % 2 == 0 else -1
    values: Dict[Key, Tuple[Fraction, ...]] = {}
    for key in product(range(base.size), repeat=n + 1):
        acc = [Fraction(0)] * d
        head = f.values[key[1:]]
        for mp, row in enumerate(module.left_rows[key[0]]):
            for m, v in row.items():
                acc[mp] += v * head[m]
        for j in range(1, n + 1):
            merged = key[: j - 1] + (rows[key[j - 1]][key[j]],) + key[j + 1:]
            vec = f.values[merged]
            sign = 1 if j % 2 == 0 else -1
            for m in range(d):
                acc[m] += sign * vec[m]
        tail = f.values[key[:n]]
        for mp, row in enumerate(module.right_rows[key[n]]):
            for m, v in row.items():
                acc[mp] += last_sign * v * tail[m]
        values[key] = tuple(acc)
    return Cochain(base, n + 1, module, values)


def coboundary_matrix(
    base: SemigroupTable, n: int, module: Bimodule, caps: Optional[Caps] = None
) -> RationalMatrix:
    """
    Matrix of delta_n: C^n -> C^{n+1}. Coordinates are (m, a_1..a_n) in
    canonical order, so for M = A' this is the transpose of boundary_matrix.
    """
    caps = resolve_caps(caps)
    rows = chain_dim(base, n + 1, module)
    cols = chain_dim(base, n, module)
    caps.check_dim(rows, f"C^{n + 1} of a size-{base.size} table")
    size = base.size
    mul = base.product
    last_sign = 1 if (n + 1) % 2 == 0 else -1
    entries: Dict[Tuple[int, int], Fraction] = {}
    for r, key in enumerate(chain_basis(base, n + 1, module)):
        mp, b = key[0], key[1:]
        for m, v in module.left_rows[b[0]][mp].items():
            add_into(entries, (r, tuple_index((m,) + b[1:], size)), v)
        for j in range(1, n + 1):
            merged = b[: j - 1] + (mul[b[j - 1]][b[j]],) + b[j + 1:]
            add_into(entries, (r, tuple_index((mp,) + merged, size)), 1 if j % 2 == 0 else -1)
        for m, v in module.right_rows[b[n]][mp].items():
            add_into(entries, (r, tuple_index((m,) + b[:n], size)), last_sign * v)
    logger.debug(f"Assembled delta_{n}: {rows}x{cols}, {len(entries)} nonzeros.")
    return RationalMatrix(rows, cols, entries)
