# core/homotopy_free.py
"""
The explicit contracting homotopy of the simplicial chain complex of
l1(2^X), X = {0..k-1}:

    s_n(a_0 (x) ... (x) a_n) = sum_J a_0 u_J (x) u_J (x) a_1 (x) ... (x) a_n,   s_0 = 0,

where u_J = prod_{i in J} e_i * prod_{i not in J} (e_empty - e_i).
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from .algebra import AlgebraElement, basis_element, convolve, u_element
from .chains import Chain, boundary_of_tuple, chain_basis, zero_chain
from .config import Caps, resolve_caps
from .errors import ArityMismatch, BaseMismatch, DiagonalPropertyFailed
from .reports import HomotopyReport
from .semilattice import canonical_subsets, free_unital_semilattice
from .sparse import add_into, format_fraction, l1

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


class HomotopyFree:
    """s_n for the free unital semilattice on k generators, with the u_J cached."""

    def __init__(self, k: int, caps: Optional[Caps] = None):
        self.k = k
        self.caps = resolve_caps(caps)
        self.free = free_unital_semilattice(k, self.caps)
        self.subsets = canonical_subsets(k)
        self.u: Tuple[AlgebraElement, ...] = tuple(
            u_element(k, J, self.caps) for J in self.subsets
        )
        self._check_diagonal()
        # left[a][J] = e_a * u_J as a sparse map
        self._left: List[List[Dict[int, Fraction]]] = [
            [convolve(basis_element(self.free, a), u).coeffs for u in self.u]
            for a in range(self.free.size)
        ]
        self._memo: Dict[Key, Dict[Key, Fraction]] = {}

    def _check_diagonal(self) -> None:
        free = self.free
        unit = basis_element(free, free.unit)
        total = AlgebraElement.zero(free)
        for J, u in zip(self.subsets, self.u):
            square = u * u
            if square != u:
                raise DiagonalPropertyFailed(f"u_{set(J)} is not idempotent")
            total = total + square
            if u.norm() > 2 ** (self.k - len(J)):
                raise DiagonalPropertyFailed(f"||u_{set(J)}|| exceeds 2^(k-|J|)")
            for a in range(free.size):
                e_a = basis_element(free, a)
                left = _outer(convolve(e_a, u), u)
                right = _outer(u, convolve(u, e_a))
                if left != right:
                    raise DiagonalPropertyFailed(f"flip property fails for u_{set(J)} at e_{a}")
        if total != unit:
            raise DiagonalPropertyFailed("sum of u_J^2 is not the unit")
        logger.debug(f"Diagonal identities hold for k={self.k} ({len(self.u)} elements).")

    def diagonal_square_sum(self) -> Fraction:
        """sum_J ||u_J||^2, which is at most 5^k."""
        return sum((u.norm() ** 2 for u in self.u), Fraction(0))

    def s_on_tuple(self, key: Key) -> Dict[Key, Fraction]:
        """s_n on one primitive tensor of degree n = len(key) - 1 >= 1."""
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        rest = key[1:]
        acc: Dict[Key, Fraction] = {}
        row = self._left[key[0]]
        for left, u in zip(row, self.u):
            if not left:
                continue
            for p, cp in left.items():
                for q, cq in u.coeffs.items():
                    add_into(acc, (p, q) + rest, cp * cq)
        self._memo[key] = acc
        return acc

    def apply(self, n: int, coeffs: Mapping[Key, Fraction]) -> Dict[Key, Fraction]:
        if n == 0:
            return {}
        acc: Dict[Key, Fraction] = {}
        for key, coeff in coeffs.items():
            for k, v in self.s_on_tuple(key).items():
                add_into(acc, k, coeff * v)
        return acc


def _outer(left: AlgebraElement, right: AlgebraElement) -> Dict[Key, Fraction]:
    acc: Dict[Key, Fraction] = {}
    for p, cp in left.coeffs.items():
        for q, cq in right.coeffs.items():
            add_into(acc, (p, q), cp * cq)
    return acc


def apply_s(h: HomotopyFree, n: int, c: Chain) -> Chain:
    """s_n: C_n(l1(F)) -> C_{n+1}(l1(F)); s_0 = 0."""
    if c.module is not None or c.base != h.free:
        raise BaseMismatch("s_n acts on simplicial chains over the free semilattice")
    if c.degree != n:
        raise ArityMismatch(f"expected a degree-{n} chain, got degree {c.degree}")
    if n == 0:
        return zero_chain(h.free, 1)
    h.caps.check_dim(h.free.size ** (n + 2), f"C_{n + 1} of the free semilattice on {h.k} generators")
    return Chain._trusted(h.free, n + 1, h.apply(n, c.coeffs))


def operator_l1_norm(
    fn: Callable[[Key], Mapping[Key, Fraction]], domain: Iterable[Key]
) -> Fraction:
    """Exact l1 -> l1 operator norm: the largest l1 norm of the image of a basis vector."""
    best = Fraction(0)
    for key in domain:
        value = l1(fn(key))
        if value > best:
            best = value
    return best


def _boundary_coeffs(base, coeffs: Mapping[Key, Fraction]) -> Dict[Key, Fraction]:
    acc: Dict[Key, Fraction] = {}
    for key, coeff in coeffs.items():
        for k, v in boundary_of_tuple(base, key).items():
            add_into(acc, k, coeff * v)
    return acc


def check_homotopy(h: HomotopyFree, n: int) -> HomotopyReport:
    """
    Verifies d_n s_n + s_{n-1} d_{n-1} = id on every primitive tensor of
    degree n >= 1 and computes the exact operator norm of s_n.
    """
    if n < 1:
        raise ArityMismatch("the homotopy identity is stated for n >= 1")
    h.caps.check_dim(h.free.size ** (n + 2), f"C_{n + 1} of the free semilattice on {h.k} generators")
    checked = 0
    witness = None
    norm = Fraction(0)
    for key in chain_basis(h.free, n):
        checked += 1
        s_key = h.s_on_tuple(key)
        norm = max(norm, l1(s_key))
        if witness is not None:
            continue
        total = _boundary_coeffs(h.free, s_key)
        if n > 1:
            for k, v in h.apply(n - 1, _boundary_coeffs(h.free, {key: Fraction(1)})).items():
                add_into(total, k, v)
        if total != {key: Fraction(1)}:
            witness = key
    bound = 5 ** h.k
    report = HomotopyReport(
        k=h.k,
        n=n,
        checked=checked,
        identity_verified=witness is None,
        exact_norm=format_fraction(norm),
        bound=f"5^{h.k}",
        within_bound=norm <= bound,
        diagonal_sum=format_fraction(h.diagonal_square_sum()),
        witness=witness,
    )
    if witness is None:
        logger.info(f"✅ Homotopy identity holds for k={h.k}, n={n}; ||s_n|| = {norm} <= {bound}.")
    else:
        logger.error(f"❌ Homotopy identity fails for k={h.k}, n={n} at {witness}.")
    return report
