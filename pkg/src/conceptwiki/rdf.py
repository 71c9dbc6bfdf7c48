"""RDF serialization of the triple store.

Every subject, predicate, and object URI is minted from an entity UUID
under one base, so the graph is self-contained: any URI in the output can
be resolved back to a store entity by its UUID tail.

Term-valued objects can be rendered two ways. Literal style inlines them
as language-tagged literals. Resource style gives each term its own URI
and emits a companion label statement through a derived labeling
predicate, keeping the every-URI-has-a-UUID rule intact.

Triples whose provenance holds no supported entry are left out unless
``include_withdrawn`` is set: consumers get currently-backed knowledge by
default. Provenance itself is not serialized.
"""

from __future__ import annotations

from typing import Iterator
from uuid import UUID

from conceptwiki.ids import mint_id
from conceptwiki.model import Triple
from conceptwiki.store import Store

URI_BASE = "http://www.conceptwiki.org/concept/"

FORMATS = ("ntriples", "turtle")
OBJECT_STYLES = ("literal", "resource")

MEDIA_TYPES = {"ntriples": "application/n-triples", "turtle": "text/turtle"}

TURTLE_PREFIX = f"@prefix cw: <{URI_BASE}> .\n"

# labeling predicate used only in resource style; derived, not stored
_LABEL_PREDICATE = mint_id("cw-predicate", "has label")

_ESCAPES = {
    '"': '\\"',
    "\\": "\\\\",
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def uri_for(entity_id: UUID) -> str:
    return URI_BASE + str(entity_id)


def escape_literal(text: str) -> str:
    """Escape a literal's lexical form per the N-Triples string grammar."""
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def _check_args(fmt: str, object_style: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown RDF format {fmt!r}")
    if object_style not in OBJECT_STYLES:
        raise ValueError(f"unknown object style {object_style!r}")


def _term_ref(entity_id: UUID, fmt: str) -> str:
    if fmt == "turtle":
        return f"cw:{entity_id}"
    return f"<{uri_for(entity_id)}>"


def _literal(text: str, language: str) -> str:
    return f'"{escape_literal(text)}"@{language}'


def _statements(store: Store, triple: Triple, fmt: str, object_style: str) -> tuple[str, list[str]]:
    """Render one triple: its main statement plus any companion label statements."""
    subject = _term_ref(triple.subject, fmt)
    predicate = _term_ref(triple.predicate, fmt)
    companions: list[str] = []
    if triple.object.kind == "term":
        term = store.state.terms[triple.object.id]
        if object_style == "literal":
            obj = _literal(term.label, term.language)
        else:
            obj = _term_ref(term.id, fmt)
            companions.append(
                f"{_term_ref(term.id, fmt)} {_term_ref(_LABEL_PREDICATE, fmt)} "
                f"{_literal(term.label, term.language)} .\n"
            )
    else:
        obj = _term_ref(triple.object.id, fmt)
    return f"{subject} {predicate} {obj} .\n", companions


def export_concept(
    store: Store,
    concept_id: UUID,
    fmt: str = "ntriples",
    object_style: str = "literal",
    include_withdrawn: bool = False,
) -> str:
    """All statements mentioning the concept as subject or object, sorted."""
    _check_args(fmt, object_style)
    store.get_concept(concept_id)
    lines: set[str] = set()
    for triple in store.triples_about(concept_id, role="any"):
        if not include_withdrawn and not triple.is_supported():
            continue
        main, companions = _statements(store, triple, fmt, object_style)
        lines.add(main)
        lines.update(companions)
    if not lines:
        return ""
    body = "".join(sorted(lines))
    if fmt == "turtle":
        return TURTLE_PREFIX + body
    return body


def export_all(
    store: Store,
    fmt: str = "ntriples",
    object_style: str = "literal",
    include_withdrawn: bool = False,
) -> Iterator[str]:
    """Every statement in the store, streamed grouped by subject concept.

    Each triple is emitted under its subject, so the stream carries no
    duplicate statements; companion label statements are deduplicated
    across the whole stream.
    """
    _check_args(fmt, object_style)
    state = store.state
    by_subject: dict[UUID, list[Triple]] = {}
    for triple in state.triples.values():
        if not include_withdrawn and not triple.is_supported():
            continue
        by_subject.setdefault(triple.subject, []).append(triple)

    emitted_prefix = False
    seen_companions: set[str] = set()
    for subject in sorted(by_subject, key=str):
        lines: set[str] = set()
        for triple in by_subject[subject]:
            main, companions = _statements(store, triple, fmt, object_style)
            lines.add(main)
            for companion in companions:
                if companion not in seen_companions:
                    seen_companions.add(companion)
                    lines.add(companion)
        if lines and fmt == "turtle" and not emitted_prefix:
            yield TURTLE_PREFIX
            emitted_prefix = True
        yield from sorted(lines)
