"""Exception hierarchy.

Every error raised on purpose by this package derives from :class:`FundepError`,
so the CLI can map them all to exit code 2.
"""


class FundepError(Exception):
    """Base class for all package errors."""


class InvalidVertexError(FundepError, KeyError):
    def __init__(self, name, context=""):
        self.name = name
        msg = f"unknown vertex {name!r}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class GraphFormatError(FundepError, ValueError):
    pass


class NoValidCutError(FundepError, ValueError):
    pass


class ParseError(FundepError, ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class IncompleteAssignmentError(FundepError, KeyError):
    def __str__(self):
        return self.args[0]


class IncompleteGameError(FundepError, ValueError):
    pass


class TooLargeError(FundepError, ValueError):
    pass


class NotSparseError(FundepError, ValueError):
    pass


class NoProofError(FundepError, ValueError):
    pass


class NoCounterexampleError(FundepError, ValueError):
    pass


class InternalSoundnessError(FundepError, AssertionError):
    """A constructed object failed its own verification. Always a bug."""
