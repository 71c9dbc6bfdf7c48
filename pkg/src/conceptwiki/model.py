"""Domain value types: terms, concepts, triples, and provenance.

Everything here is an immutable value; all mutation goes through the store.
A Term is one (label, language) surface form. A Concept aggregates many
terms under one opaque id and carries semantic types and an optional
definition. Facts are Triples: subject and predicate are concept ids, the
object is either a concept id or a term id, and each triple carries a set
of provenance flags saying which authority or user currently supports it.

Term ids are derived from the (label, language) pair, so interning is a
structural property: two equal pairs can never end up under different ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from uuid import UUID

from conceptwiki.ids import mint_id

# Controlled vocabulary seeded into every store; extensible per store via
# Store.register_semantic_type.
SEMANTIC_TYPES = (
    "Enzyme",
    "Protein",
    "Chemical",
    "Biological Process",
    "Relation",
    "Other",
)

SUPPORTED = "supported"
WITHDRAWN = "withdrawn"


@dataclass(frozen=True)
class Term:
    """An interned (label, language) pair with its derived id."""

    id: UUID
    label: str
    language: str

    @classmethod
    def of(cls, label: str, language: str = "en") -> Term:
        label = label.strip()
        if not label:
            raise ValueError("term label is empty")
        language = language.strip().lower() or "en"
        return cls(id=mint_id("cw-term", f"{language}|{label}"), label=label, language=language)

    @property
    def key(self) -> tuple[str, str]:
        return (self.label, self.language)


@dataclass(frozen=True)
class Concept:
    """A unit of meaning: one preferred term, any number of synonyms."""

    id: UUID
    preferred: UUID
    synonyms: frozenset[UUID]
    types: frozenset[str]
    definition: str | None = None

    def __post_init__(self) -> None:
        if self.preferred not in self.synonyms:
            raise ValueError("preferred term must be among the synonyms")
        if not self.types:
            raise ValueError("concept needs at least one semantic type")


@dataclass(frozen=True)
class Source:
    """Identity of a provenance entry: an external authority or a user.

    Two sources are the same identity when kind and name match; an
    authority's release label is data that gets refreshed on re-assertion,
    not part of the identity.
    """

    kind: str  # "authority" | "user"
    name: str
    release: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("authority", "user"):
            raise ValueError(f"unknown source kind {self.kind!r}")
        if not self.name:
            raise ValueError("source name is empty")
        if self.kind == "user" and self.release is not None:
            raise ValueError("user sources carry no release label")

    @classmethod
    def authority(cls, name: str, release: str | None = None) -> Source:
        return cls(kind="authority", name=name, release=release)

    @classmethod
    def user(cls, name: str) -> Source:
        return cls(kind="user", name=name)

    @property
    def identity(self) -> tuple[str, str]:
        return (self.kind, self.name)


@dataclass(frozen=True)
class Provenance:
    """One source's current stance on a triple, with the time it last changed."""

    source: Source
    status: str  # SUPPORTED | WITHDRAWN
    timestamp: datetime

    def __post_init__(self) -> None:
        if self.status not in (SUPPORTED, WITHDRAWN):
            raise ValueError(f"unknown provenance status {self.status!r}")
        if self.timestamp.tzinfo is None:
            raise ValueError("provenance timestamps must be timezone-aware")


@dataclass(frozen=True)
class TripleObject:
    """Tagged object position: a concept id or a term id."""

    kind: str  # "concept" | "term"
    id: UUID

    def __post_init__(self) -> None:
        if self.kind not in ("concept", "term"):
            raise ValueError(f"unknown object kind {self.kind!r}")


@dataclass(frozen=True)
class Triple:
    """A subject-predicate-object statement with per-source provenance.

    The provenance tuple is kept sorted by source identity and holds at most
    one entry per identity; status changes replace the entry in place.
    """

    id: UUID
    subject: UUID
    predicate: UUID
    object: TripleObject
    provenance: tuple[Provenance, ...] = field(default=())

    @property
    def spo(self) -> tuple[UUID, UUID, str, UUID]:
        return (self.subject, self.predicate, self.object.kind, self.object.id)

    def provenance_for(self, source: Source) -> Provenance | None:
        for entry in self.provenance:
            if entry.source.identity == source.identity:
                return entry
        return None

    def is_supported(self) -> bool:
        """True if at least one source currently supports the triple."""
        return any(p.status == SUPPORTED for p in self.provenance)

    def with_provenance(self, entry: Provenance) -> Triple:
        kept = tuple(
            p for p in self.provenance if p.source.identity != entry.source.identity
        )
        merged = tuple(sorted(kept + (entry,), key=lambda p: p.source.identity))
        return Triple(self.id, self.subject, self.predicate, self.object, merged)


def utc_now_seconds() -> datetime:
    """Current UTC time truncated to whole seconds (journal precision)."""
    return datetime.now(timezone.utc).replace(microsecond=0)


def format_ts(ts: datetime) -> str:
    """RFC 3339 UTC text with seconds precision, e.g. 2026-08-21T12:00:00Z."""
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_ts(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)
