"""Byte-stable rendering of numbers and witnesses."""

from __future__ import annotations


def fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.11e}"
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(fmt(x) for x in v) + ")"
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(fmt(x) for x in sorted(v)) + "}"
    return str(v)
