"""Shared exception types."""


class InternalError(RuntimeError):
    """A structural self-check failed.

    Raised when a quantity this library computes twice by independent routes
    disagrees with itself, or when an invariant that is supposed to hold by
    construction does not. Indicates a bug, never bad user input.
    """
