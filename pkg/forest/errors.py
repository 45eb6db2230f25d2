class ForestError(Exception):
    """Base class for every error raised by the forest toolkit."""


class ParseError(ForestError):
    pass


class NotAForest(ForestError):
    pass


class BadRoots(ForestError):
    pass


class NotConnected(ForestError):
    pass


class EmptyInput(ForestError):
    pass


class BudgetExceeded(ForestError):
    """A search hit its node budget. The answer is unknown, not negative."""


class SizeLimit(ForestError):
    """Partition enumeration was asked for a ground set above the cap."""


class StateExplosion(ForestError):
    pass


class CapExceeded(ForestError):
    pass


class InvalidInstance(ForestError):
    pass


class VerificationFailed(ForestError):
    pass
