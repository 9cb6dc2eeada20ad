"""Exception taxonomy shared by the library and the CLI."""


class ThreesumError(Exception):
    """Base class for all library errors."""


class DomainError(ThreesumError):
    """Caller violated an operation's contract (bad value, bad subset, bad modulus)."""


class InvariantError(ThreesumError):
    """An internal guarantee failed; indicates a bug, not bad input."""


class ResourceError(ThreesumError):
    """A memory or attempt budget was exceeded."""


class ParseError(ThreesumError):
    """A file did not match its expected format."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no
        self.message = message
