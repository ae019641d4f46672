"""Exact identity-check records."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix


@dataclass(frozen=True)
class Check:
    """Outcome of one exact identity check."""

    identity: str
    passed: bool
    mismatch: tuple | None = None  # first differing (row, col), if any
    note: str = ""


def compare(identity: str, lhs: Matrix, rhs: Matrix) -> Check:
    if lhs.shape != rhs.shape:
        return Check(identity, False, note=f"shape {lhs.shape} vs {rhs.shape}")
    diff = lhs.first_difference(rhs)
    return Check(identity, diff is None, diff)


def truth(identity: str, ok: bool, note: str = "") -> Check:
    return Check(identity, bool(ok), None, "" if ok else note)
