"""Exception types shared across the package.

Hard errors (invalid input, blown resource bounds) are exceptions.  An
honest "hypotheses not certifiable" outcome is *not* an error; checkers
return a Refusal value instead (see criteria.Refusal).
"""


class AuditError(Exception):
    """Base class for all package errors."""

    def payload(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class OrderTooLarge(AuditError):
    """A group (or lattice) exceeds the configured enumeration bound."""


class InvalidDescriptor(AuditError):
    """A group descriptor violates its structural invariants."""


class InvalidChain(InvalidDescriptor):
    """Abelian invariant factors do not form a divisibility chain."""


class NotNormal(AuditError):
    """A subset that must be a normal subgroup is not."""


class NonIntegralGenus(AuditError):
    """The genus formula produced an odd value of 2g - 2."""


class NotEnoughClasses(AuditError):
    """A class-selection request lies outside the supported range."""


class NoEvidence(AuditError):
    """No embedding-evidence rule applies and no assertion was supplied."""


class FactorizationTooLarge(AuditError):
    """An integer resisted factorization within the configured bounds."""


class BranchPoint(AuditError):
    """Specialization was requested at a branch point."""


class OddDegree(AuditError):
    """The point at infinity is a branch point, so has no discriminant."""


class DegreeTooHigh(AuditError):
    """The low-degree classification does not apply to this polynomial."""
