"""Exception hierarchy shared by all ccnet modules."""


class CCNError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""

    kind = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "message": str(self)}
        out.update({k: v for k, v in self.details.items()})
        return out


class MalformedDocument(CCNError):
    kind = "MalformedDocument"


class UnknownCell(CCNError):
    kind = "UnknownCell"


class MissingColor(CCNError):
    kind = "MissingColor"


class DuplicateIdentifier(CCNError):
    kind = "DuplicateIdentifier"


class NotBackwardConnected(CCNError):
    kind = "NotBackwardConnected"


class InfeasibleConstraint(CCNError):
    kind = "InfeasibleConstraint"


class NumericalRankFailure(CCNError):
    kind = "NumericalRankFailure"


class NotIndecomposable(CCNError):
    kind = "NotIndecomposable"


class NotBalanced(CCNError):
    kind = "NotBalanced"


class NotFeedforward(CCNError):
    kind = "NotFeedforward"


class NoCriticalClass(CCNError):
    kind = "NoCriticalClass"


class MultipleCriticalClasses(CCNError):
    kind = "MultipleCriticalClasses"


class CriticalClassIntersectsB(CCNError):
    kind = "CriticalClassIntersectsB"


class NoConvergence(CCNError):
    kind = "NoConvergence"


class BranchLost(CCNError):
    kind = "BranchLost"


class InsufficientSamples(CCNError):
    kind = "InsufficientSamples"


class NotRootSubnetwork(CCNError):
    kind = "NotRootSubnetwork"
