"""Exception types shared across the package."""

from __future__ import annotations


class TagmergeError(Exception):
    """Base class for errors raised by this package."""


class CorpusFormatError(TagmergeError):
    """Raised when an input corpus or resource file is unusable."""


class InsufficientHistoryError(TagmergeError):
    """Raised when the corpus does not cover a requested time horizon.

    Truncating the horizon silently would corrupt labels, so callers must
    either extend the corpus or request a shorter horizon.
    """
