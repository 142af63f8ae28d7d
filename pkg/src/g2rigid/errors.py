"""Shared exception types for the certificate and counting modules."""


class BadResidue(ValueError):
    """A prime fails a required congruence condition."""


class BadCharacteristic(ValueError):
    """The characteristic is unusable for the requested construction."""


class TooLarge(RuntimeError):
    """An enumeration or materialization exceeds its budget."""


class NotOrdinary(RuntimeError):
    """A modular-representation computation left the ordinary regime."""


class TooSmallPrime(ValueError):
    """The prime is too small for the requested symmetric power."""


class NotInBase(ValueError):
    """The specialization parameter hits a puncture (s in {0, 1})."""
