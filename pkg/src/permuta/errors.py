"""Exception hierarchy shared by every permuta module."""


class PermutaError(Exception):
    """Base class for all library errors."""


class CapExceeded(PermutaError):
    """A configured size cap was hit."""


class ClosureCapExceeded(CapExceeded):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class MixedRepresentation(PermutaError):
    """Generators of different kinds (or shapes) were mixed."""


class ParentMismatch(PermutaError):
    pass


class NotUnitModRadical(PermutaError):
    pass


class HypothesisFailed(PermutaError):
    """A check was requested on an input outside its hypothesis."""


class ZeroElement(PermutaError):
    pass


class RankMismatch(PermutaError):
    pass


class TruncationInsufficient(PermutaError):
    """Two distinct words agreed on every coefficient up to the truncation degree."""


class GroupSpecError(PermutaError):
    """Malformed group description string."""
