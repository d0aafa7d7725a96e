"""Exception hierarchy shared by every module."""

from __future__ import annotations


class K3CliffordError(Exception):
    """Base class for all errors raised by this package."""


class RegimeViolation(K3CliffordError, ValueError):
    """Parameters fail one or more of the regime inequalities."""

    def __init__(self, failed: list[str], g: int | None = None, s: int | None = None):
        self.failed = list(failed)
        self.g = g
        self.s = s
        where = f" for (g={g}, s={s})" if g is not None else ""
        super().__init__(f"regime violated{where}: " + "; ".join(self.failed))


class PreconditionViolation(K3CliffordError, ValueError):
    pass


class DegenerateDiscriminant(K3CliffordError, ValueError):
    pass


class ClassificationMismatch(K3CliffordError, AssertionError):
    """A lattice solution matched none of the closed-form cases."""


class InternalInconsistency(K3CliffordError, AssertionError):
    """A closed-form value disagreed with its recomputation through the pairing."""


class BoundViolation(K3CliffordError, AssertionError):
    pass


class InvalidRank(K3CliffordError, ValueError):
    pass


class GammaTooSmall(K3CliffordError, ValueError):
    pass


class ExternalResultRequired(K3CliffordError):
    """The requested case rests on a result this package does not verify."""
