# core/errors.py
"""Exception hierarchy. Every error carries the witness that triggered it."""

from typing import Optional, Tuple


class HochlatError(Exception):
    """Base class for all errors raised by the toolkit."""


class MalformedTable(HochlatError):
    """The product table is not a total table over the element indices."""


class NonAssociative(HochlatError):
    def __init__(self, x: int, y: int, z: int, labels: Optional[Tuple[str, str, str]] = None):
        self.triple = (x, y, z)
        self.labels = labels or (str(x), str(y), str(z))
        a, b, c = self.labels
        super().__init__(f"product is not associative at ({a}, {b}, {c})")


class BadUnit(HochlatError):
    def __init__(self, unit: int, witness: Optional[int] = None):
        self.unit = unit
        self.witness = witness
        super().__init__(f"declared unit {unit} fails the unit law at element {witness}")


class NotHomomorphism(HochlatError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"map(x*y) != map(x)*map(y) at ({x}, {y})")


class UnitNotPreserved(HochlatError):
    def __init__(self, image: int, target_unit: int):
        self.image = image
        self.target_unit = target_unit
        super().__init__(f"unit is sent to {image}, expected {target_unit}")


class NotUnital(HochlatError):
    """A unit was required but the table declares none."""


class NotIdempotent(HochlatError):
    """A semilattice (commutative, idempotent) was required."""


class NotUnitalSemilattice(HochlatError):
    """A unital semilattice was required."""


class ResourceLimit(HochlatError):
    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has size {size}, which exceeds the cap {cap}")


class IndexOutOfRange(HochlatError):
    def __init__(self, index: int, size: int):
        self.index = index
        self.size = size
        super().__init__(f"index {index} out of range for {size} elements")


class BaseMismatch(HochlatError):
    """Two operands live over different semigroup tables."""


class DegreeTooLow(HochlatError):
    """The boundary was asked for on a degree-0 chain."""


class DegreeOutOfRange(HochlatError):
    """Degree outside what a tower or operator supports."""


class ArityMismatch(HochlatError):
    """A tuple key does not have the arity its degree requires."""


class BimoduleError(HochlatError):
    def __init__(self, message: str, witness: Optional[tuple] = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} at {witness}")


class NotSymmetric(BimoduleError):
    """Left and right actions differ somewhere."""


class DiagonalPropertyFailed(HochlatError):
    """One of the u_J identities failed. Signals an implementation bug."""


class FormalIdentityFailed(HochlatError):
    def __init__(self, degree: int, mismatches: int):
        self.degree = degree
        self.mismatches = mismatches
        super().__init__(
            f"d(w[{degree}]) differs from f - sigma(d f) on {mismatches} tuple(s)"
        )


class FormatError(HochlatError):
    """An input file does not match its documented shape."""
