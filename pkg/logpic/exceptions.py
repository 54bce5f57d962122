"""
Exception hierarchy shared by every logpic module.

The CLI maps :class:`InputError` (and pydantic validation errors) to exit
code 2. Everything else that escapes a verb is a bug.
"""
from __future__ import annotations


class LogpicError(Exception):
    """Base class for all errors raised on purpose by logpic."""


class InputError(LogpicError, ValueError):
    """
    Malformed or inconsistent input.

    Args:
        message (str): what is wrong
        location (str | None): JSON-pointer into the offending document,
            if the error can be pinned to one.
    """

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self):
        if self.location:
            return f'{self.message} (at {self.location})'
        return self.message


class InvalidGraphError(InputError):
    """Half-edge pairing is not a perfect matching or the graph is disconnected."""


class InvalidNodeDatumError(InputError):
    """A node carries the zero element of the base monoid."""


class PreconditionError(LogpicError, ValueError):
    """An operation was called outside of its domain."""


class UnsupportedModelError(LogpicError):
    """
    The input is representable but the requested exact computation is not
    defined for it (genus >= 2 components, non-semistable or non-vertical
    curves in rank operations).
    """


class BoundExceededError(LogpicError):
    """A brute-force search would exceed its configured bound."""
