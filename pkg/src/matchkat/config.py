"""Runtime limits for the exhaustive decision procedures."""

from contextlib import contextmanager
from contextvars import ContextVar

from .errors import CapacityError

DEFAULT_MAX_WIDTH = 24
DEFAULT_MAX_HISTORY = 16

_max_width: ContextVar[int] = ContextVar("max_width", default=DEFAULT_MAX_WIDTH)
_max_history: ContextVar[int] = ContextVar("max_history", default=DEFAULT_MAX_HISTORY)


def max_width() -> int:
    return _max_width.get()


def max_history() -> int:
    return _max_history.get()


@contextmanager
def limits(width: int | None = None, history: int | None = None):
    """Temporarily change the enumeration cap and/or NetKAT history cap.

    >>> with limits(width=4):
    ...     max_width()
    4
    """
    tokens = []
    if width is not None:
        tokens.append((_max_width, _max_width.set(width)))
    if history is not None:
        tokens.append((_max_history, _max_history.set(history)))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)


def check_width(width: int) -> None:
    if width > _max_width.get():
        raise CapacityError(
            f"width {width} exceeds enumeration cap {_max_width.get()} "
            f"(2^{width} packets)"
        )
