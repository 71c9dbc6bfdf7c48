"""Enzyme Commission number validation.

A full EC number is four dot-separated fields, e.g. ``1.1.1.1``. The first
three are positive integers without leading zeros; the fourth is a positive
integer optionally prefixed by ``n`` (preliminary assignments such as
``1.1.1.n5``). Classification headers replace a trailing run of fields with
``-`` (``1.1.-.-``); those are recognised as *partial* so callers can reject
them distinctly rather than lump them in with garbage.
"""

from __future__ import annotations

_DIGITS = frozenset("0123456789")


def _is_positive_int(part: str) -> bool:
    if not part or part[0] == "0":
        return False
    return all(c in _DIGITS for c in part)


def classify_ec(text: str) -> str:
    """Classify text as 'full', 'partial', or 'invalid'."""
    parts = text.split(".")
    if len(parts) != 4:
        return "invalid"
    dashes = []
    for i, part in enumerate(parts):
        if part == "-":
            dashes.append(True)
            continue
        dashes.append(False)
        if i == 3 and part.startswith("n"):
            part = part[1:]
        if not _is_positive_int(part):
            return "invalid"
    if not any(dashes):
        return "full"
    # dash fields are only legal as a trailing run
    first_dash = dashes.index(True)
    if all(dashes[first_dash:]):
        return "partial"
    return "invalid"


def validate_ec(text: str) -> bool:
    """True only for a full EC number; partial codes and garbage are false."""
    return classify_ec(text) == "full"
