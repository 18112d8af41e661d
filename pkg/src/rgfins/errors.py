"""Exception hierarchy shared by every module."""


class RgfinsError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidInput(RgfinsError, ValueError):
    pass


class IllegalLetter(RgfinsError, ValueError):
    """A letter cannot be applied to a configuration.

    ``reason`` is a short machine-readable tag such as ``"index out of range"``.
    """

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class DanglingSlots(RgfinsError, ValueError):
    """A word ended while the configuration still had open slots."""

    def __init__(self, slots):
        self.slots = slots
        super().__init__(f"word ends with {slots} open slot(s)")


class NotNormalized(RgfinsError, ValueError):
    pass


class NotNormalizable(RgfinsError, ValueError):
    pass


class NotSlotBounded(RgfinsError):
    """Raised when an automaton is requested for a class the classifier rejects."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"{report.encoding} encoding is not regular: {report.reason()}")


class CapExceeded(RgfinsError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"automaton construction exceeded {cap} states")


class CorruptRecord(RgfinsError, ValueError):
    def __init__(self, lineno, detail):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {detail}")
