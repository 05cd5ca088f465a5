# core/natural_splitting.py
"""
Natural splitting maps sigma_j of the simplicial chain complex of l1(S) for
every unital semilattice S.

Everything is driven by one universal chain per degree: w[j] of degree j+1
over the free unital semilattice F = 2^{[j+1]}, built recursively as

    w[j] = s_j(f - sigma_{j-1}(d_{j-1} f)),    f = f_0 (x) ... (x) f_j,

and sigma^S_j(x) is the pushforward of w[j] along the substitution morphism
pi_x: F -> S sending f_i to x_i.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .chains import Chain, boundary, boundary_of_tuple, chain_basis, zero_chain
from .config import Caps, resolve_caps
from .errors import (
    ArityMismatch,
    BaseMismatch,
    DegreeOutOfRange,
    FormalIdentityFailed,
    NotUnitalSemilattice,
)
from .homotopy_free import HomotopyFree, operator_l1_norm
from .reports import DegreeCheck, NaturalityReport, NormReport, SplittingReport
from .semilattice import (
    Morphism,
    SemigroupTable,
    free_unital_semilattice,
    generator_index,
    substitution_map,
)
from .sparse import add_into, format_fraction

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]
Memo = Dict[Tuple[int, Key], Dict[Key, Fraction]]


@dataclass(frozen=True)
class SigmaTower:
    """w[1..max_degree]; sigma_0 = 0 needs no chain. Read-only once constructed."""

    max_degree: int
    w: Mapping[int, Chain]

    def __post_init__(self):
        object.__setattr__(self, "w", MappingProxyType(dict(self.w)))

    def chain(self, j: int) -> Chain:
        if not 1 <= j <= self.max_degree:
            raise DegreeOutOfRange(f"tower holds degrees 1..{self.max_degree}, asked for {j}")
        return self.w[j]

    def norms(self) -> Dict[int, Fraction]:
        return {j: self.w[j].norm() for j in sorted(self.w)}


def generator_tuple(j: int) -> Key:
    """The primitive tensor f = f_0 (x) ... (x) f_j over 2^{[j+1]}."""
    return tuple(generator_index(j + 1, i) for i in range(j + 1))


def _require_unital_semilattice(table: SemigroupTable) -> None:
    if not table.is_unital_semilattice:
        raise NotUnitalSemilattice(f"expected a unital semilattice, got a {table.describe()}")


def sigma_on_tuple(
    tower: SigmaTower, j: int, table: SemigroupTable, x: Key, memo: Optional[Memo] = None
) -> Dict[Key, Fraction]:
    """sigma^S_j of one primitive tensor: the pi_x pushforward of w[j]."""
    if memo is not None:
        hit = memo.get((j, x))
        if hit is not None:
            return hit
    image = substitution_map(table, x)
    acc: Dict[Key, Fraction] = {}
    for key, coeff in tower.chain(j).coeffs.items():
        add_into(acc, tuple(image[i] for i in key), coeff)
    if memo is not None:
        memo[(j, x)] = acc
    return acc


def _sigma_coeffs(tower, j, table, coeffs, memo) -> Dict[Key, Fraction]:
    if j == 0:
        return {}
    acc: Dict[Key, Fraction] = {}
    for x, coeff in coeffs.items():
        for k, v in sigma_on_tuple(tower, j, table, x, memo).items():
            add_into(acc, k, coeff * v)
    return acc


def _boundary_coeffs(table, coeffs) -> Dict[Key, Fraction]:
    acc: Dict[Key, Fraction] = {}
    for key, coeff in coeffs.items():
        for k, v in boundary_of_tuple(table, key).items():
            add_into(acc, k, coeff * v)
    return acc


def apply_sigma(
    tower: SigmaTower, j: int, table: SemigroupTable, c: Chain, memo: Optional[Memo] = None
) -> Chain:
    """sigma^S_j: C_j(l1(S)) -> C_{j+1}(l1(S)); sigma_0 = 0."""
    _require_unital_semilattice(table)
    if not 0 <= j <= tower.max_degree:
        raise DegreeOutOfRange(f"sigma_{j} is outside the tower (max degree {tower.max_degree})")
    if c.module is not None or c.base != table:
        raise BaseMismatch("chain does not live over the given table")
    if c.degree != j:
        raise ArityMismatch(f"sigma_{j} takes degree-{j} chains, got degree {c.degree}")
    if j == 0:
        return zero_chain(table, 1)
    memo = {} if memo is None else memo
    return Chain._trusted(table, j + 1, _sigma_coeffs(tower, j, table, c.coeffs, memo))


def formal_identity_mismatches(tower: SigmaTower, j: int) -> int:
    """Number of tuples on which d_j(w[j]) and f - sigma_{j-1}(d_{j-1} f) differ."""
    free = free_unital_semilattice(j + 1)
    expected = _formal_target(tower, j, free)
    actual = boundary(tower.chain(j)).coeffs
    keys = set(expected) | set(actual)
    return sum(1 for k in keys if expected.get(k, 0) != actual.get(k, 0))


def check_formal_identity(tower: SigmaTower, j: int) -> None:
    mismatches = formal_identity_mismatches(tower, j)
    if mismatches:
        raise FormalIdentityFailed(j, mismatches)


def _formal_target(tower: SigmaTower, j: int, free: SemigroupTable) -> Dict[Key, Fraction]:
    f = generator_tuple(j)
    target: Dict[Key, Fraction] = {f: Fraction(1)}
    if j > 1:
        correction = _sigma_coeffs(tower, j - 1, free, boundary_of_tuple(free, f), {})
        for k, v in correction.items():
            add_into(target, k, -v)
    return target


def substitution_tuples(j: int) -> List[Key]:
    """The tuples x whose substitution morphisms into 2^{[j+1]} are used while building w[j]."""
    if j <= 1:
        return []
    free = free_unital_semilattice(j + 1)
    return sorted(boundary_of_tuple(free, generator_tuple(j)))


def build_tower(max_degree: int, caps: Optional[Caps] = None) -> SigmaTower:
    """Builds w[1..max_degree], checking the formal identity in every degree."""
    if max_degree < 1:
        raise DegreeOutOfRange("a tower needs max degree >= 1")
    caps = resolve_caps(caps)
    chains: Dict[int, Chain] = {}
    for j in range(1, max_degree + 1):
        size = 2 ** (j + 1)
        caps.check_dim(size ** (j + 2), f"C_{j + 1} of the free semilattice on {j + 1} generators")
        logger.info(f"🚀 Building w[{j}] over 2^[{j + 1}] ({size} elements)...")
        homotopy = HomotopyFree(j + 1, caps)
        target = _formal_target(SigmaTower(j - 1, chains), j, homotopy.free)
        w = Chain._trusted(homotopy.free, j + 1, homotopy.apply(j, target))
        chains[j] = w
        check_formal_identity(SigmaTower(j, chains), j)
        logger.info(f"✅ w[{j}]: {len(w)} terms, ||w[{j}]|| = {w.norm()}; formal identity holds.")
    return SigmaTower(max_degree, chains)


def _degree_range(tower: SigmaTower, degrees: Optional[Iterable[int]]) -> List[int]:
    js = list(range(1, tower.max_degree + 1)) if degrees is None else sorted(set(degrees))
    for j in js:
        if not 1 <= j <= tower.max_degree:
            raise DegreeOutOfRange(f"degree {j} is outside the tower (1..{tower.max_degree})")
    return js


def verify_splitting(
    tower: SigmaTower, table: SemigroupTable, degrees: Optional[Iterable[int]] = None
) -> SplittingReport:
    """Checks d_j sigma_j + sigma_{j-1} d_{j-1} = id on every primitive tensor of degree j."""
    _require_unital_semilattice(table)
    memo: Memo = {}
    checks = []
    for j in _degree_range(tower, degrees):
        checked = 0
        witness = None
        for x in chain_basis(table, j):
            checked += 1
            total = _boundary_coeffs(table, sigma_on_tuple(tower, j, table, x, memo))
            if j > 1:
                back = _sigma_coeffs(tower, j - 1, table, boundary_of_tuple(table, x), memo)
                for k, v in back.items():
                    add_into(total, k, v)
            if total != {x: Fraction(1)}:
                witness = x
                break
        checks.append(DegreeCheck(degree=j, checked=checked, passed=witness is None, witness=witness))
        if witness is not None:
            logger.error(f"❌ Splitting fails on {table.describe()} in degree {j} at {witness}.")
    return SplittingReport(table=table.describe(), degrees=checks)


def verify_inductive_hypothesis(
    tower: SigmaTower, table: SemigroupTable, degrees: Optional[Iterable[int]] = None
) -> SplittingReport:
    """Checks d_{j-1} sigma_{j-1} d_{j-1} = d_{j-1} on every primitive tensor of degree j."""
    _require_unital_semilattice(table)
    memo: Memo = {}
    checks = []
    js = list(range(1, tower.max_degree + 2)) if degrees is None else sorted(set(degrees))
    for j in js:
        if not 1 <= j <= tower.max_degree + 1:
            raise DegreeOutOfRange(f"degree {j} needs sigma_{j - 1}, outside the tower")
        checked = 0
        witness = None
        for x in chain_basis(table, j):
            checked += 1
            dx = boundary_of_tuple(table, x)
            lhs = _boundary_coeffs(table, _sigma_coeffs(tower, j - 1, table, dx, memo)) if j > 1 else {}
            if lhs != dx:
                witness = x
                break
        checks.append(DegreeCheck(degree=j, checked=checked, passed=witness is None, witness=witness))
    return SplittingReport(table=table.describe(), degrees=checks)


def verify_naturality(
    tower: SigmaTower, theta: Morphism, degrees: Optional[Iterable[int]] = None
) -> NaturalityReport:
    """Checks theta^{(x) j+2} sigma^H_j = sigma^K_j theta^{(x) j+1} on every primitive tensor."""
    source, target = theta.source, theta.target
    _require_unital_semilattice(source)
    _require_unital_semilattice(target)
    source_memo: Memo = {}
    target_memo: Memo = {}
    checks = []
    for j in _degree_range(tower, degrees):
        checked = 0
        witness = None
        for x in chain_basis(source, j):
            checked += 1
            upper = sigma_on_tuple(tower, j, source, x, source_memo)
            left: Dict[Key, Fraction] = {}
            for k, v in upper.items():
                add_into(left, theta.apply_tuple(k), v)
            right = sigma_on_tuple(tower, j, target, theta.apply_tuple(x), target_memo)
            if left != right:
                witness = x
                break
        checks.append(DegreeCheck(degree=j, checked=checked, passed=witness is None, witness=witness))
        if witness is not None:
            logger.error(f"❌ Naturality square fails in degree {j} at {witness}.")
    return NaturalityReport(
        source=source.describe(), target=target.describe(), map=theta.map, degrees=checks
    )


def sigma_operator_norm(tower: SigmaTower, table: SemigroupTable, j: int) -> NormReport:
    """Exact l1 operator norm of sigma^S_j, compared with ||w[j]||."""
    _require_unital_semilattice(table)
    memo: Memo = {}
    norm = operator_l1_norm(
        lambda x: sigma_on_tuple(tower, j, table, x, memo), chain_basis(table, j)
    )
    w_norm = tower.chain(j).norm()
    return NormReport(
        table=table.describe(),
        degree=j,
        exact_norm=format_fraction(norm),
        w_norm=format_fraction(w_norm),
        within_bound=norm <= w_norm,
    )
