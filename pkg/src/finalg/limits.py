"""Size limits for enumeration and for quadratic (table-based) work.

``elements`` caps how many elements a ring or field may have before we refuse
to enumerate it. ``table`` caps the order of anything that needs a full
n x n multiplication table (groups, and rings for unit/radical/center scans).
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace

from .errors import SizeExceeded


@dataclass(frozen=True)
class Limits:
    elements: int = 10**6
    table: int = 5000


_current = Limits()


def current() -> Limits:
    return _current


@contextlib.contextmanager
def override(**kwargs):
    global _current
    saved = _current
    _current = replace(_current, **kwargs)
    try:
        yield _current
    finally:
        _current = saved


def set_limits(limits: Limits) -> None:
    global _current
    _current = limits


def check_elements(what: str, size: int) -> None:
    if size > _current.elements:
        raise SizeExceeded(what, size, _current.elements)


def check_table(what: str, size: int) -> None:
    if size > _current.table:
        raise SizeExceeded(what, size, _current.table)
