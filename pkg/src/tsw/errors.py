"""Exception hierarchy.

Two families matter for the CLI exit-code contract: input problems
(ValidationError, exit code 2) and violated mathematical guarantees
(InternalAssertionError, exit code 3).  The latter firing on validated
input means either a bug or an inconsistent Conway table that slipped
through the validators.
"""


class TswError(Exception):
    pass


class ValidationError(TswError):
    """The input data is malformed or outside the documented domain."""


class InternalAssertionError(TswError):
    """A theorem-backed invariant failed at run time."""


class BadParity(ValidationError):
    """Charge entries violate k_i = 1 + sum_j lk(L_i, L_j) (mod 2)."""


class NotSymmetric(ValidationError):
    """Linking matrix is not symmetric."""


class IncompleteTable(ValidationError):
    """Conway table lacks an entry for a required sublink."""


class NotSplit(ValidationError):
    """Operation requires an algebraically split link (all lk = 0)."""


class NeedsDirection(ValidationError):
    """b1 = 1 computation needs an explicit infinite-order direction."""


class DirectionNotPrimitive(ValidationError):
    """Series direction does not project to a generator of H/Tors."""


class InfiniteEnumeration(ValidationError):
    """Exhaustive Euler-class enumeration requested with b1 > 0."""


class NotPositiveB1(ValidationError):
    """Operation is only defined for b1 >= 1."""


class MalformedPD(ValidationError):
    """PD text fails to parse or edge labels are inconsistent."""


class DegenerateDiagram(ValidationError):
    """Diagram has no usable Wirtinger data for the request."""


class TorresInconsistent(ValidationError):
    """Candidate Conway data contradicts a Torres specialization."""


class ResourceLimit(ValidationError):
    """A configured work bound was exceeded before completion."""


class ParityMismatch(InternalAssertionError):
    """Half-integer exponents survived where an integral result is owed."""


class HalfIntegerExponent(ParityMismatch):
    """A substitution required an exponent off the integral lattice."""


class NotDivisible(InternalAssertionError):
    """Exact division by (h - 1) failed where theory guarantees it."""


class NotInDomain(InternalAssertionError):
    """phi_# applied to a fraction outside its domain."""


class NonRationalReassembly(InternalAssertionError):
    """Inverse character transform produced a non-rational coefficient."""


class InfiniteKernel(InternalAssertionError):
    """Transfer requested along a projection with infinite kernel."""


class TrivialCharacter(InternalAssertionError):
    """Per-character torsion requested for a character trivial on H."""
