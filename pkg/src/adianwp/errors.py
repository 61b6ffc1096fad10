"""Exception hierarchy shared by every module."""


class AdianError(Exception):
    """Base class for all errors raised by this package."""


class PresentationError(AdianError):
    """A presentation file or word failed to parse or validate.

    ``line`` is the 1-based line number in the source text, or None when the
    error is not tied to a line (e.g. a word given on the command line).
    """

    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicateGenerator(PresentationError):
    pass


class UnknownGenerator(PresentationError):
    def __init__(self, name, line=None):
        self.name = name
        super().__init__(f"unknown generator {name!r}", line)


class EmptyRelationSide(PresentationError):
    pass


class InverseInRelation(PresentationError):
    pass


class MalformedLine(PresentationError):
    pass


class WordSyntaxError(PresentationError):
    pass


class NotAdian(AdianError):
    pass


class NotPositive(AdianError):
    pass


class WrongAlphabet(AdianError):
    pass


class SideNotReadable(AdianError):
    pass


class NotApplicable(AdianError):
    pass


class PositiveCycle(AdianError):
    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"positive cycle through vertices {cycle}")


class NotConnected(AdianError):
    pass
