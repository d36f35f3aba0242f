"""Exception hierarchy shared by every module."""


class VSSError(Exception):
    """Base class for all errors raised by hashvss."""


class NotPrime(VSSError, ValueError):
    pass


class TooSmall(VSSError, ValueError):
    pass


class InvalidThreshold(VSSError, ValueError):
    pass


class TooManyShareholders(VSSError, ValueError):
    pass


class ThresholdExceedsN(VSSError, ValueError):
    pass


class DuplicateIndex(VSSError, ValueError):
    pass


class EmptyInput(VSSError, ValueError):
    pass


class ParameterSearchFailed(VSSError, RuntimeError):
    pass


class MessageOutOfRange(VSSError, ValueError):
    pass


class NotAValidCiphertext(VSSError, ValueError):
    pass


class UnknownIndex(VSSError, KeyError):
    pass


class DiscardedState(VSSError, RuntimeError):
    """Dealer secrets were read after they had been destroyed."""


class NotAllAccepted(VSSError, RuntimeError):
    """At least one shareholder rejected its share; the deal is in dispute."""


class InvalidScenario(VSSError, ValueError):
    pass


class FormatError(VSSError, ValueError):
    """A public or share file failed to parse or validate."""
