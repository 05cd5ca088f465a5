# core/algebra.py
"""The convolution algebra l1(S) with exact rational coefficients."""

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .config import Caps
from .errors import BaseMismatch, NotUnital
from .semilattice import (
    Morphism,
    SemigroupTable,
    free_unital_semilattice,
    generator_index,
)
from .sparse import add_into, canonical, combine, l1, scaled

logger = logging.getLogger(__name__)


class AlgebraElement:
    """
    A finitely supported element of l1(S): a canonical sparse map from element
    index to Fraction. Treated as an immutable value.
    """

    __slots__ = ("base", "coeffs")

    def __init__(self, base: SemigroupTable, coeffs: Optional[Mapping[int, object]] = None):
        self.base = base
        self.coeffs: Dict[int, Fraction] = canonical((coeffs or {}).items())
        for s in self.coeffs:
            base.check_index(s)

    @classmethod
    def _trusted(cls, base: SemigroupTable, coeffs: Dict[int, Fraction]) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.base = base
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, base: SemigroupTable) -> "AlgebraElement":
        return cls._trusted(base, {})

    def _same_base(self, other: "AlgebraElement") -> None:
        if self.base is not other.base and self.base != other.base:
            raise BaseMismatch("algebra elements live over different tables")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same_base(other)
        return AlgebraElement._trusted(self.base, combine(self.coeffs, other.coeffs))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same_base(other)
        return AlgebraElement._trusted(self.base, combine(self.coeffs, other.coeffs, -1))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._trusted(self.base, scaled(self.coeffs, -1))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return AlgebraElement._trusted(self.base, scaled(self.coeffs, other))

    def __rmul__(self, scalar):
        return AlgebraElement._trusted(self.base, scaled(self.coeffs, scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.base is other.base or self.base == other.base) and self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def norm(self) -> Fraction:
        return l1(self.coeffs)

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*e[{self.base.elements[s]}]" for s, c in self.items())
        return f"AlgebraElement({terms or '0'})"


def basis_element(table: SemigroupTable, s: int) -> AlgebraElement:
    table.check_index(s)
    return AlgebraElement._trusted(table, {s: Fraction(1)})


def unit_element(table: SemigroupTable) -> AlgebraElement:
    if table.unit is None:
        raise NotUnital("the table declares no unit")
    return basis_element(table, table.unit)


def convolve(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of e_s * e_t = e_{st}."""
    a._same_base(b)
    rows = a.base.product
    acc: Dict[int, Fraction] = {}
    for s, cs in a.coeffs.items():
        row = rows[s]
        for t, ct in b.coeffs.items():
            add_into(acc, row[t], cs * ct)
    return AlgebraElement._trusted(a.base, acc)


def l1_norm(a: AlgebraElement) -> Fraction:
    return a.norm()


def pushforward(theta: Morphism, a: AlgebraElement) -> AlgebraElement:
    """The contractive algebra homomorphism l1(S) -> l1(T) induced by theta."""
    if a.base is not theta.source and a.base != theta.source:
        raise BaseMismatch("element does not live over the morphism's source")
    acc: Dict[int, Fraction] = {}
    for s, c in a.coeffs.items():
        add_into(acc, theta.map[s], c)
    return AlgebraElement._trusted(theta.target, acc)


def u_element(k: int, subset: Iterable[int], caps: Optional[Caps] = None) -> AlgebraElement:
    """
    u_J = prod_{i in J} e_i * prod_{k not in J} (e_empty - e_k) in l1(2^{[k]}),
    expanded into canonical sparse form.
    """
    free = free_unital_semilattice(k, caps)
    subset = frozenset(subset)
    for i in subset:
        generator_index(k, i)
    result = basis_element(free, free.unit)
    for i in range(k):
        e_i = basis_element(free, generator_index(k, i))
        factor = e_i if i in subset else basis_element(free, free.unit) - e_i
        result = convolve(result, factor)
    return result


def tensor(*factors: AlgebraElement) -> Dict[Tuple[int, ...], Fraction]:
    """Expands an elementary tensor a_0 (x) ... (x) a_n into primitive tuples."""
    if not factors:
        return {}
    for f in factors[1:]:
        factors[0]._same_base(f)
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for combo in product(*(f.coeffs.items() for f in factors)):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        add_into(acc, tuple(s for s, _ in combo), coeff)
    return acc
