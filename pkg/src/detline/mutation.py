"""Switches that flip one sign convention, used to check the suites notice.

Each name corresponds to one hand-coded sign exponent. Outside of the
sensitivity checks the set is empty and every `extra` call returns 0.
"""

from __future__ import annotations

from contextlib import contextmanager

NAMES = ("triple-sign", "direct-sum-sign", "composition-sign", "dualization-sign")

_active: set = set()


def extra(name: str) -> int:
    return 1 if name in _active else 0


@contextmanager
def flipped(*names: str):
    bad = [n for n in names if n not in NAMES]
    if bad:
        raise ValueError(f"unknown mutation {bad[0]!r}")
    saved = set(_active)
    _active.update(names)
    try:
        yield
    finally:
        _active.clear()
        _active.update(saved)
