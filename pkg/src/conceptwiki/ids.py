"""Opaque entity identifiers.

Every entity (concept, term, triple) is addressed by a UUID whose canonical
text form is the lowercase hyphenated 8-4-4-4-12 rendering. Identifiers are
opaque: nothing in the system ever decodes meaning back out of the bits.

Two minting modes exist. Bare ``mint_id()`` returns a random version-4 id,
used for concepts created interactively. ``mint_id(namespace, name)`` returns
a version-5 id derived from the pair, so seed predicates, semantic-type
concepts, interned terms, and import-created concepts get the same id in
every store, which keeps imports and exports reproducible across runs.
"""

from __future__ import annotations

import re
import uuid

# All derived ids hang off one root so namespace tags stay short text.
_ROOT = uuid.uuid5(uuid.NAMESPACE_DNS, "conceptwiki.org")

CANONICAL_ID_RE = re.compile(
    r"[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}"
)
_CANONICAL_FULL_RE = re.compile(CANONICAL_ID_RE.pattern + r"\Z")


def mint_id(namespace: str | None = None, name: str | None = None) -> uuid.UUID:
    """Mint an entity id.

    With no arguments, a random version-4 id. With a (namespace, name) pair,
    a deterministic version-5 id: identical inputs always yield the same id.
    """
    if namespace is None and name is None:
        return uuid.uuid4()
    if not namespace or not name:
        raise ValueError("derived ids need a non-empty namespace and name")
    return uuid.uuid5(uuid.uuid5(_ROOT, namespace), name)


def is_canonical_id(text: str) -> bool:
    """True iff text is exactly the canonical lowercase hyphenated form."""
    return bool(_CANONICAL_FULL_RE.match(text))


def parse_id(text: str) -> uuid.UUID:
    """Parse canonical id text, rejecting every other UUID spelling."""
    if not is_canonical_id(text):
        raise ValueError(f"not a canonical entity id: {text!r}")
    return uuid.UUID(text)
