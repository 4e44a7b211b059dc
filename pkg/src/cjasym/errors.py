"""Exception types shared across the package."""


class CJAsymError(Exception):
    """Base class for all package errors."""


class DomainError(CJAsymError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class BranchCutInput(DomainError):
    """Input sits on a branch cut where the function value is ambiguous."""


class ExcludedRay(DomainError):
    """Input lies on one of the rays removed from the extended domain."""


class NonConvergent(CJAsymError):
    """Adaptive refinement failed to reach the requested tolerance."""


class TailBoundViolated(CJAsymError):
    """No truncation cutoff can push the tail below the tolerance."""


class DegenerateLeadingCoefficient(CJAsymError):
    """Leading polynomial coefficient too small to normalize safely."""


class DenominatorVanishes(CJAsymError):
    """A cyclotomic-style denominator factor underflowed to zero."""


class TorsionSingular(DomainError):
    """Torsion is undefined at this deformation parameter."""


class BranchJump(CJAsymError):
    """Consecutive samples jumped branches; refine the sampling grid."""


class BranchCollision(CJAsymError):
    """Two root branches collide here; labels are not separable."""


class NonUpperTriangular(CJAsymError):
    """Matrix expected to be upper triangular has a large (2,1) entry."""


class PathOutsideValleys(DomainError):
    """Integration endpoints are not inside the prescribed descent valleys."""
