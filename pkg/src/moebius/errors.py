"""Exception taxonomy shared by the whole package.

Each class maps to one CLI exit code, see cli.py.
"""


class MoebiusError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MoebiusError):
    """Malformed literal, file, or flag value.  CLI exit code 2."""


class PreconditionError(MoebiusError):
    """Structurally valid input that violates an operation's contract.  CLI exit code 3."""


class ResourceGuardError(MoebiusError):
    """Requested computation exceeds a hard size/time guard.  CLI exit code 4."""


class InternalCheckError(MoebiusError):
    """A cross-check the library runs on its own output failed.  CLI exit code 5."""
