"""Exception hierarchy shared by all modules."""


class FuzzyBundleError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FuzzyBundleError, ValueError):
    """Arguments outside the domain where a formula is defined."""


class BranchDomainError(DomainError):
    """The lower branch [N - nu] was requested without N > nu."""


class BranchMismatch(FuzzyBundleError, ValueError):
    pass


class DimensionMismatch(FuzzyBundleError, ValueError):
    pass


class ZeroBasis(FuzzyBundleError, ValueError):
    pass


class NumericalBreakdown(FuzzyBundleError, ArithmeticError):
    """A construction lost rank where exact arithmetic says it cannot."""


class NonRealResult(FuzzyBundleError, ArithmeticError):
    pass


class ModuleMembershipError(FuzzyBundleError, ValueError):
    """A row element does not satisfy psi @ p == psi."""
