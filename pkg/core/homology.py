# core/homology.py
"""
Exact Hochschild (co)homology dimensions from the (co)boundary matrices:

    dim H_n = dim C_n - rank d_{n-1} - rank d_n
    dim H^n = dim C^n - rank delta_n - rank delta_{n-1}
"""

import logging
from typing import Callable, Dict, Optional, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .chains import (
    Bimodule,
    boundary_matrix,
    chain_dim,
    coboundary_matrix,
    dual_bimodule,
    extend_unit_linked,
    regular_bimodule,
    require_symmetric,
)
from .config import Caps, resolve_caps
from .errors import BimoduleError, DegreeOutOfRange, NotIdempotent
from .matrix import RationalMatrix
from .natural_splitting import SigmaTower, verify_splitting
from .reports import ComparisonReport, CrossCheckReport, DegreeDims, HomologyReport
from .semilattice import SemigroupTable, unitize

logger = logging.getLogger(__name__)

RankFn = Callable[[RationalMatrix], int]
Coefficients = Union[str, Bimodule]

__all__ = [
    "RationalMatrix",
    "rank",
    "dense_rank",
    "coefficient_module",
    "homology_dims",
    "cohomology_dims",
    "duality_check",
    "unitisation_check",
    "symmetric_bimodule_check",
    "splitting_vs_vanishing",
]


def rank(m: RationalMatrix) -> int:
    return m.rank()


def dense_rank(m: RationalMatrix) -> int:
    """Independent oracle: dense elimination over QQ with sympy's DomainMatrix."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = [[QQ(v.numerator, v.denominator) for v in row] for row in m.to_dense()]
    return DomainMatrix(rows, (m.rows, m.cols), QQ).rank()


def coefficient_module(table: SemigroupTable, coefficients: Coefficients) -> Optional[Bimodule]:
    """
    "A" gives None (simplicial chains, the algebra acting on itself), "Adual"
    the coordinate dual; a Bimodule is checked against the table and returned.
    """
    if isinstance(coefficients, Bimodule):
        if coefficients.base != table:
            raise BimoduleError("bimodule lives over a different table")
        return coefficients
    if coefficients == "A":
        return None
    if coefficients == "Adual":
        return dual_bimodule(table)
    raise BimoduleError(f"unknown coefficients {coefficients!r}; use A, Adual or a bimodule")


def _label(module: Optional[Bimodule]) -> str:
    return "A" if module is None else module.name


def _require_nmax(nmax: int) -> None:
    if nmax < 1:
        raise DegreeOutOfRange(f"homology degrees start at 1, got nmax={nmax}")


def _flags(table: SemigroupTable, module: Optional[Bimodule]):
    if module is None:
        return table.unit is not None, table.commutative
    return module.unit_linked, module.symmetric


def homology_dims(
    table: SemigroupTable,
    nmax: int,
    coefficients: Coefficients = "A",
    caps: Optional[Caps] = None,
    rank_fn: RankFn = rank,
) -> HomologyReport:
    """dim H_n(l1(S), M) for 1 <= n <= nmax."""
    _require_nmax(nmax)
    caps = resolve_caps(caps)
    module = coefficient_module(table, coefficients)
    ranks: Dict[int, int] = {}
    for n in range(0, nmax + 1):
        ranks[n] = rank_fn(boundary_matrix(table, n, module, caps))
        logger.debug(f"rank d_{n} = {ranks[n]}")
    degrees = []
    for n in range(1, nmax + 1):
        dim_c = chain_dim(table, n, module)
        dim_ker = dim_c - ranks[n - 1]
        degrees.append(
            DegreeDims(n=n, dim_c=dim_c, rank_in=ranks[n], dim_ker=dim_ker, dim_h=dim_ker - ranks[n])
        )
    unit_linked, symmetric = _flags(table, module)
    report = HomologyReport(
        table=table.describe(),
        kind="homology",
        coefficients=_label(module),
        unit_linked=unit_linked,
        symmetric=symmetric,
        degrees=degrees,
    )
    logger.info(f"H_n({table.describe()}, {_label(module)}) for n=1..{nmax}: {report.dims()}")
    return report


def cohomology_dims(
    table: SemigroupTable,
    nmax: int,
    coefficients: Coefficients = "Adual",
    caps: Optional[Caps] = None,
    rank_fn: RankFn = rank,
) -> HomologyReport:
    """dim H^n(l1(S), M) for 1 <= n <= nmax."""
    _require_nmax(nmax)
    caps = resolve_caps(caps)
    module = coefficient_module(table, coefficients)
    if module is None:
        module = regular_bimodule(table)
    ranks: Dict[int, int] = {}
    for n in range(0, nmax + 1):
        ranks[n] = rank_fn(coboundary_matrix(table, n, module, caps))
        logger.debug(f"rank delta_{n} = {ranks[n]}")
    degrees = []
    for n in range(1, nmax + 1):
        dim_c = chain_dim(table, n, module)
        dim_ker = dim_c - ranks[n]
        degrees.append(
            DegreeDims(
                n=n, dim_c=dim_c, rank_in=ranks[n - 1], dim_ker=dim_ker, dim_h=dim_ker - ranks[n - 1]
            )
        )
    if not module.unit_linked:
        logger.info(f"Coefficient module {module.name} is not unit-linked; report is tagged.")
    report = HomologyReport(
        table=table.describe(),
        kind="cohomology",
        coefficients=module.name,
        unit_linked=module.unit_linked,
        symmetric=module.symmetric,
        degrees=degrees,
    )
    logger.info(f"H^n({table.describe()}, {module.name}) for n=1..{nmax}: {report.dims()}")
    return report


def _compare(table, check, left_label, right_label, left, right, detail="") -> ComparisonReport:
    passed = left == right
    if not passed:
        logger.error(f"❌ {check} fails on {table.describe()}: {left} != {right}")
    return ComparisonReport(
        table=table.describe(),
        check=check,
        left_label=left_label,
        right_label=right_label,
        left=left,
        right=right,
        passed=passed,
        detail=detail,
    )


def duality_check(
    table: SemigroupTable, nmax: int, caps: Optional[Caps] = None, rank_fn: RankFn = rank
) -> ComparisonReport:
    """dim H^n(A, A') = dim H_n(A, A) for 1 <= n <= nmax."""
    homology = homology_dims(table, nmax, "A", caps, rank_fn)
    cohomology = cohomology_dims(table, nmax, "Adual", caps, rank_fn)
    return _compare(table, "duality", "H_n(A,A)", "H^n(A,A')", homology.dims(), cohomology.dims())


def unitisation_check(
    table: SemigroupTable,
    module: Bimodule,
    nmax: int,
    caps: Optional[Caps] = None,
    rank_fn: RankFn = rank,
) -> ComparisonReport:
    """dim H^n(l1(S^1), M_1) = dim H^n(l1(S), M) for a symmetric M over a table without unit."""
    if not table.commutative:
        raise BimoduleError("unitisation comparison needs a commutative table")
    require_symmetric(module)
    unitized = unitize(table)
    extended = extend_unit_linked(module, unitized)
    before = cohomology_dims(table, nmax, module, caps, rank_fn)
    after = cohomology_dims(unitized, nmax, extended, caps, rank_fn)
    return _compare(
        table,
        "unitisation",
        f"H^n(S,{module.name})",
        f"H^n(S1,{extended.name})",
        before.dims(),
        after.dims(),
    )


def symmetric_bimodule_check(
    table: SemigroupTable,
    module: Bimodule,
    nmax: int,
    caps: Optional[Caps] = None,
    rank_fn: RankFn = rank,
) -> ComparisonReport:
    """
    Symmetric coefficients over a semilattice: H^n vanishes, and H_n vanishes
    when M is unit-linked. left = cohomology dims, right = homology dims.
    """
    if not table.is_semilattice:
        raise NotIdempotent("symmetric-coefficient vanishing is checked over semilattices")
    require_symmetric(module)
    cohomology = cohomology_dims(table, nmax, module, caps, rank_fn)
    homology = homology_dims(table, nmax, module, caps, rank_fn)
    passed = cohomology.vanishing and (homology.vanishing or not module.unit_linked)
    detail = "" if module.unit_linked else "not unit-linked: homology recorded, not required to vanish"
    if not passed:
        logger.error(f"❌ Symmetric coefficients {module.name} give nonzero (co)homology on {table.describe()}.")
    return ComparisonReport(
        table=table.describe(),
        check="symmetric",
        left_label=f"H^n(A,{module.name})",
        right_label=f"H_n(A,{module.name})",
        left=cohomology.dims(),
        right=homology.dims(),
        passed=passed,
        detail=detail,
    )


def splitting_vs_vanishing(
    table: SemigroupTable,
    tower: SigmaTower,
    nmax: int,
    caps: Optional[Caps] = None,
) -> CrossCheckReport:
    """Vanishing homology and the explicit splitting must agree on a unital semilattice."""
    homology = homology_dims(table, nmax, "A", caps)
    degrees = range(1, min(nmax, tower.max_degree) + 1)
    splitting = verify_splitting(tower, table, degrees)
    passed = homology.vanishing and splitting.passed
    return CrossCheckReport(
        table=table.describe(), homology=homology, splitting=splitting, passed=passed
    )
