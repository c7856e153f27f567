"""Scoped call counters for matrix square roots and operator norms.

Counting is off unless a :func:`counting` block is active. Blocks nest; an
event is recorded in every enclosing block. State lives in a context
variable, so threads and asyncio tasks each see their own stack.
"""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import asdict, dataclass


@dataclass
class Counters:
    matrix_sqrt: int = 0
    operator_norm: int = 0

    def snapshot(self):
        return asdict(self)


_stack: ContextVar[tuple] = ContextVar("siegelkit_counters", default=())


@contextmanager
def counting():
    """Collect counts for the duration of the block.

    >>> with counting() as c:
    ...     pass
    >>> c.matrix_sqrt
    0
    """
    c = Counters()
    token = _stack.set(_stack.get() + (c,))
    try:
        yield c
    finally:
        _stack.reset(token)


def bump(field, n=1):
    for c in _stack.get():
        setattr(c, field, getattr(c, field) + n)
