"""Journaled concept/term/triple repository.

Persistence is a line-oriented append-only journal (``journal.cwj``): one
JSON object per line with fields ``seq``, ``ts``, ``op``, ``body``. Replaying
the journal from empty reproduces the live state exactly, so the journal is
the only durable artifact; everything else (synonym index, triple uniqueness
index, per-user contribution sets) is rebuilt from it.

Mutations are serialized through a single writer lock and are staged before
they are flushed: each batch clones the live state, applies its entries to
the clone, appends the entries to the journal, and only then swaps the clone
in. Readers keep whatever state reference they grabbed, so they always see a
consistent snapshot and never block, even while an import batch is staged.
A write failure discards the clone and leaves both state and journal as they
were.

A fresh store is seeded with the six semantic-type concepts and the nine
built-in relation concepts (all with derived ids, so every fresh store agrees
on them). Entities are never deleted; authority support is withdrawn by
flipping a provenance flag, keeping the audit trail intact.
"""

from __future__ import annotations

import json
import os
import unicodedata
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from datetime import datetime
from pathlib import Path
from threading import RLock
from typing import Callable, Iterator
from uuid import UUID

from conceptwiki.ids import is_canonical_id, mint_id, parse_id
from conceptwiki.model import (
    Concept,
    Provenance,
    SEMANTIC_TYPES,
    SUPPORTED,
    Source,
    Term,
    Triple,
    TripleObject,
    WITHDRAWN,
    format_ts,
    parse_ts,
    utc_now_seconds,
)

JOURNAL_NAME = "journal.cwj"

OP_TERM = "term.intern"
OP_CONCEPT = "concept.put"
OP_ASSERT = "triple.assert"
OP_WITHDRAW = "triple.withdraw"
OP_TYPE = "type.register"

# Relation concepts present in every store.
PREDICATES = (
    "has synonym",
    "has definition",
    "has semantic type",
    "has catalytic activity",
    "has cofactor",
    "has comment",
    "has cross-reference",
    "transferred to",
    "has function",
)

HAS_SYNONYM_ID = mint_id("cw-predicate", "has synonym")


class StoreError(Exception):
    pass


class UnknownEntityError(StoreError):
    pass


class JournalError(StoreError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"journal line {line_no}: {message}")
        self.line_no = line_no


def fold(label: str) -> str:
    """Matching form of a label: NFC-normalized and case-folded."""
    return unicodedata.normalize("NFC", label).casefold()


@dataclass(frozen=True)
class JournalEntry:
    seq: int
    ts: datetime
    op: str
    body: dict

    def as_json(self) -> dict:
        return {"seq": self.seq, "ts": format_ts(self.ts), "op": self.op, "body": self.body}


@dataclass
class StoreState:
    concepts: dict[UUID, Concept] = field(default_factory=dict)
    terms: dict[UUID, Term] = field(default_factory=dict)
    term_ids: dict[tuple[str, str], UUID] = field(default_factory=dict)
    triples: dict[UUID, Triple] = field(default_factory=dict)
    triple_ids: dict[tuple[UUID, UUID, str, UUID], UUID] = field(default_factory=dict)
    by_subject: dict[UUID, set[UUID]] = field(default_factory=dict)
    # folded label -> language -> concept ids
    synonyms: dict[str, dict[str, set[UUID]]] = field(default_factory=dict)
    users: dict[str, set[UUID]] = field(default_factory=dict)
    types: dict[str, UUID] = field(default_factory=dict)
    last_seq: int = field(default=0, compare=False)

    def clone(self) -> StoreState:
        """Container-level copy; the values themselves are immutable."""
        return StoreState(
            concepts=dict(self.concepts),
            terms=dict(self.terms),
            term_ids=dict(self.term_ids),
            triples=dict(self.triples),
            triple_ids=dict(self.triple_ids),
            by_subject={subject: set(ids) for subject, ids in self.by_subject.items()},
            synonyms={
                label: {lang: set(ids) for lang, ids in by_lang.items()}
                for label, by_lang in self.synonyms.items()
            },
            users={name: set(ids) for name, ids in self.users.items()},
            types=dict(self.types),
            last_seq=self.last_seq,
        )


def _index_synonym(state: StoreState, concept_id: UUID, term: Term) -> None:
    state.synonyms.setdefault(fold(term.label), {}).setdefault(term.language, set()).add(concept_id)


def _decode_source(body: dict) -> Source:
    return Source(kind=body["kind"], name=body["name"], release=body.get("release"))


def _encode_source(source: Source) -> dict:
    encoded: dict = {"kind": source.kind, "name": source.name}
    if source.release is not None:
        encoded["release"] = source.release
    return encoded


def _apply(state: StoreState, entry: JournalEntry) -> None:
    """The single state-transition function, shared by live commands and replay.

    Entries are trusted here; validation happens before an entry is built.
    """
    body = entry.body
    if entry.op == OP_TERM:
        term = Term(id=parse_id(body["id"]), label=body["label"], language=body["language"])
        state.terms[term.id] = term
        state.term_ids[term.key] = term.id
    elif entry.op == OP_CONCEPT:
        concept = Concept(
            id=parse_id(body["id"]),
            preferred=parse_id(body["preferred"]),
            synonyms=frozenset(parse_id(t) for t in body["synonyms"]),
            types=frozenset(body["types"]),
            definition=body.get("definition"),
        )
        state.concepts[concept.id] = concept
        for term_id in concept.synonyms:
            _index_synonym(state, concept.id, state.terms[term_id])
    elif entry.op == OP_ASSERT:
        triple_id = parse_id(body["id"])
        subject = parse_id(body["subject"])
        predicate = parse_id(body["predicate"])
        obj = TripleObject(kind=body["object"]["kind"], id=parse_id(body["object"]["id"]))
        triple = state.triples.get(triple_id)
        if triple is None:
            triple = Triple(id=triple_id, subject=subject, predicate=predicate, object=obj)
        if "provenance" in body:
            for raw in body["provenance"]:
                entry_prov = Provenance(
                    source=_decode_source(raw["source"]),
                    status=raw["status"],
                    timestamp=parse_ts(raw["timestamp"]),
                )
                triple = triple.with_provenance(entry_prov)
        else:
            source = _decode_source(body["source"])
            triple = triple.with_provenance(Provenance(source, SUPPORTED, entry.ts))
        state.triples[triple_id] = triple
        state.triple_ids[triple.spo] = triple_id
        state.by_subject.setdefault(subject, set()).add(triple_id)
        for prov in triple.provenance:
            if prov.source.kind == "user":
                state.users.setdefault(prov.source.name, set()).add(triple_id)
        # a synonym assertion also grows the subject concept's synonym set
        if predicate == HAS_SYNONYM_ID and obj.kind == "term":
            concept = state.concepts[subject]
            if obj.id not in concept.synonyms:
                state.concepts[subject] = replace(concept, synonyms=concept.synonyms | {obj.id})
            _index_synonym(state, subject, state.terms[obj.id])
    elif entry.op == OP_WITHDRAW:
        triple_id = parse_id(body["triple"])
        source = _decode_source(body["source"])
        triple = state.triples[triple_id]
        current = triple.provenance_for(source)
        if current is not None:
            state.triples[triple_id] = triple.with_provenance(
                Provenance(current.source, WITHDRAWN, entry.ts)
            )
    elif entry.op == OP_TYPE:
        state.types[body["label"]] = parse_id(body["concept"])
    else:
        raise StoreError(f"unknown journal op {entry.op!r}")
    state.last_seq = entry.seq


@dataclass(frozen=True)
class AssertOutcome:
    triple: Triple
    created: bool
    became_supported: bool


@dataclass(frozen=True)
class WithdrawOutcome:
    triple: Triple
    changed: bool


class Batch:
    """One exclusive mutation batch working on a staged clone of the state."""

    def __init__(self, state: StoreState, entries: list[JournalEntry], clock: Callable[[], datetime]):
        self.state = state
        self._entries = entries
        self._clock = clock

    def _push(self, op: str, body: dict) -> JournalEntry:
        entry = JournalEntry(seq=self.state.last_seq + 1, ts=self._clock(), op=op, body=body)
        _apply(self.state, entry)
        self._entries.append(entry)
        return entry

    def intern_term(self, term: Term) -> Term:
        existing = self.state.term_ids.get(term.key)
        if existing is not None:
            return self.state.terms[existing]
        self._push(OP_TERM, {"id": str(term.id), "label": term.label, "language": term.language})
        return term

    def register_type(self, label: str) -> UUID:
        label = label.strip()
        if not label:
            raise StoreError("semantic type label is empty")
        if label in self.state.types:
            raise StoreError(f"semantic type {label!r} already registered")
        concept_id = mint_id("cw-semantic-type", label)
        self._push(OP_TYPE, {"label": label, "concept": str(concept_id)})
        term = self.intern_term(Term.of(label, "en"))
        self.put_concept(preferred=term, types=[label], concept_id=concept_id)
        return concept_id

    def put_concept(
        self,
        preferred: Term,
        *,
        synonyms: tuple[Term, ...] | list[Term] = (),
        types: tuple[str, ...] | list[str] = (),
        definition: str | None = None,
        concept_id: UUID | None = None,
    ) -> Concept:
        type_set = frozenset(types)
        if not type_set:
            raise StoreError("concept needs at least one semantic type")
        unknown = type_set - set(self.state.types)
        if unknown:
            raise StoreError(f"unregistered semantic types: {sorted(unknown)}")
        preferred = self.intern_term(preferred)
        synonym_ids = {preferred.id}
        for term in synonyms:
            synonym_ids.add(self.intern_term(term).id)
        concept = Concept(
            id=concept_id if concept_id is not None else mint_id(),
            preferred=preferred.id,
            synonyms=frozenset(synonym_ids),
            types=type_set,
            definition=definition,
        )
        existing = self.state.concepts.get(concept.id)
        if existing is not None and existing != concept:
            raise StoreError(f"concept {concept.id} already bound to different content")
        self._push(
            OP_CONCEPT,
            {
                "id": str(concept.id),
                "preferred": str(concept.preferred),
                "synonyms": sorted(str(t) for t in concept.synonyms),
                "types": sorted(concept.types),
                "definition": concept.definition,
            },
        )
        return self.state.concepts[concept.id]

    def _resolve_object(self, obj: UUID | Term) -> TripleObject:
        if isinstance(obj, Term):
            return TripleObject(kind="term", id=self.intern_term(obj).id)
        if obj in self.state.concepts:
            return TripleObject(kind="concept", id=obj)
        if obj in self.state.terms:
            return TripleObject(kind="term", id=obj)
        raise UnknownEntityError(f"object {obj} is neither a concept nor a term")

    def assert_triple(self, subject: UUID, predicate: UUID, obj: UUID | Term, source: Source) -> AssertOutcome:
        if subject not in self.state.concepts:
            raise UnknownEntityError(f"unknown subject concept {subject}")
        predicate_concept = self.state.concepts.get(predicate)
        if predicate_concept is None:
            raise UnknownEntityError(f"unknown predicate concept {predicate}")
        if "Relation" not in predicate_concept.types:
            raise StoreError(f"predicate {predicate} is not typed Relation")
        resolved = self._resolve_object(obj)
        spo = (subject, predicate, resolved.kind, resolved.id)
        existing_id = self.state.triple_ids.get(spo)
        before = None
        if existing_id is not None:
            before = self.state.triples[existing_id].provenance_for(source)
        triple_id = existing_id if existing_id is not None else mint_id(
            "cw-triple", f"{subject}|{predicate}|{resolved.kind}|{resolved.id}"
        )
        self._push(
            OP_ASSERT,
            {
                "id": str(triple_id),
                "subject": str(subject),
                "predicate": str(predicate),
                "object": {"kind": resolved.kind, "id": str(resolved.id)},
                "source": _encode_source(source),
                "status": SUPPORTED,
            },
        )
        return AssertOutcome(
            triple=self.state.triples[triple_id],
            created=existing_id is None,
            became_supported=before is None or before.status != SUPPORTED,
        )

    def withdraw(self, triple_id: UUID, source: Source) -> WithdrawOutcome:
        triple = self.state.triples.get(triple_id)
        if triple is None:
            raise UnknownEntityError(f"unknown triple {triple_id}")
        if triple.provenance_for(source) is None:
            return WithdrawOutcome(triple=triple, changed=False)
        self._push(OP_WITHDRAW, {"triple": str(triple_id), "source": _encode_source(source)})
        return WithdrawOutcome(triple=self.state.triples[triple_id], changed=True)


class Store:
    """Open a store directory, replaying the journal if one exists."""

    def __init__(self, path: str | Path, clock: Callable[[], datetime] | None = None):
        self.path = Path(path)
        if not self.path.is_dir():
            raise StoreError(f"store path {self.path} is not a directory")
        self.journal_path = self.path / JOURNAL_NAME
        self._clock = clock or utc_now_seconds
        self._lock = RLock()
        self._state = StoreState()
        self._fh = None
        self.open_warnings: list[str] = []
        fresh = not self.journal_path.exists()
        if not fresh:
            self._replay()
        self._fh = open(self.journal_path, "a", encoding="utf-8", newline="")
        if fresh:
            self._seed()

    # -- lifecycle ---------------------------------------------------------

    def _replay(self) -> None:
        raw = self.journal_path.read_bytes()
        lines = raw.split(b"\n")
        tail = lines.pop()  # bytes after the final newline
        if tail:
            kept = len(raw) - len(tail)
            with open(self.journal_path, "r+b") as fh:
                fh.truncate(kept)
            self.open_warnings.append(
                f"dropped torn trailing journal line ({len(tail)} bytes) at line {len(lines) + 1}"
            )
        state = StoreState()
        for i, line in enumerate(lines, start=1):
            try:
                text = line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise JournalError(i, f"not UTF-8: {exc}") from exc
            try:
                record = json.loads(text)
            except json.JSONDecodeError as exc:
                raise JournalError(i, f"not a JSON object: {exc}") from exc
            try:
                entry = JournalEntry(
                    seq=record["seq"],
                    ts=parse_ts(record["ts"]),
                    op=record["op"],
                    body=record["body"],
                )
                if entry.seq != state.last_seq + 1:
                    raise StoreError(f"seq {entry.seq} breaks contiguity after {state.last_seq}")
                _apply(state, entry)
            except (StoreError, KeyError, ValueError, TypeError) as exc:
                raise JournalError(i, str(exc)) from exc
        self._state = state

    def _seed(self) -> None:
        with self.batch() as b:
            for label in SEMANTIC_TYPES:
                b.register_type(label)
            for name in PREDICATES:
                b.put_concept(
                    preferred=Term.of(name, "en"),
                    types=["Relation"],
                    concept_id=mint_id("cw-predicate", name),
                )

    def close(self) -> None:
        if self._fh is not None:
            self._fh.flush()
            self._fh.close()
            self._fh = None

    def __enter__(self) -> Store:
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- mutation ----------------------------------------------------------

    @contextmanager
    def batch(self) -> Iterator[Batch]:
        with self._lock:
            if self._fh is None:
                raise StoreError("store is closed")
            draft = self._state.clone()
            entries: list[JournalEntry] = []
            yield Batch(draft, entries, self._clock)
            if entries:
                self._write_entries(entries)
            self._state = draft

    def _write_entries(self, entries: list[JournalEntry]) -> None:
        lines = [
            json.dumps(e.as_json(), ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n"
            for e in entries
        ]
        self._fh.write("".join(lines))
        self._fh.flush()
        os.fsync(self._fh.fileno())

    def put_concept(self, preferred: Term, **kwargs) -> Concept:
        with self.batch() as b:
            return b.put_concept(preferred, **kwargs)

    def assert_triple(self, subject: UUID, predicate: UUID, obj: UUID | Term, source: Source) -> AssertOutcome:
        with self.batch() as b:
            return b.assert_triple(subject, predicate, obj, source)

    def withdraw_provenance(self, triple_id: UUID, source: Source) -> WithdrawOutcome:
        with self.batch() as b:
            return b.withdraw(triple_id, source)

    def register_semantic_type(self, label: str) -> UUID:
        with self.batch() as b:
            return b.register_type(label)

    def compact(self) -> int:
        """Rewrite the journal as a minimal snapshot; returns the entry count."""
        with self._lock:
            if self._fh is None:
                raise StoreError("store is closed")
            state = self._state
            entries: list[JournalEntry] = []
            now = self._clock()

            def push(op: str, body: dict) -> None:
                entries.append(JournalEntry(seq=len(entries) + 1, ts=now, op=op, body=body))

            for label, concept_id in state.types.items():
                push(OP_TYPE, {"label": label, "concept": str(concept_id)})
            for term in state.terms.values():
                push(OP_TERM, {"id": str(term.id), "label": term.label, "language": term.language})
            for concept in state.concepts.values():
                push(
                    OP_CONCEPT,
                    {
                        "id": str(concept.id),
                        "preferred": str(concept.preferred),
                        "synonyms": sorted(str(t) for t in concept.synonyms),
                        "types": sorted(concept.types),
                        "definition": concept.definition,
                    },
                )
            for triple in state.triples.values():
                push(
                    OP_ASSERT,
                    {
                        "id": str(triple.id),
                        "subject": str(triple.subject),
                        "predicate": str(triple.predicate),
                        "object": {"kind": triple.object.kind, "id": str(triple.object.id)},
                        "provenance": [
                            {
                                "source": _encode_source(p.source),
                                "status": p.status,
                                "timestamp": format_ts(p.timestamp),
                            }
                            for p in triple.provenance
                        ],
                    },
                )

            tmp_path = self.journal_path.with_suffix(".cwj.tmp")
            with open(tmp_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(
                    "".join(
                        json.dumps(e.as_json(), ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n"
                        for e in entries
                    )
                )
                fh.flush()
                os.fsync(fh.fileno())
            self._fh.close()
            os.replace(tmp_path, self.journal_path)
            self._fh = open(self.journal_path, "a", encoding="utf-8", newline="")
            self._state.last_seq = len(entries)
            return len(entries)

    # -- reads -------------------------------------------------------------

    @property
    def state(self) -> StoreState:
        return self._state

    def get_concept(self, concept_id: UUID) -> Concept:
        try:
            return self._state.concepts[concept_id]
        except KeyError:
            raise UnknownEntityError(f"unknown concept {concept_id}") from None

    def get_term(self, term_id: UUID) -> Term:
        try:
            return self._state.terms[term_id]
        except KeyError:
            raise UnknownEntityError(f"unknown term {term_id}") from None

    def get_triple(self, triple_id: UUID) -> Triple:
        try:
            return self._state.triples[triple_id]
        except KeyError:
            raise UnknownEntityError(f"unknown triple {triple_id}") from None

    def has_concept(self, concept_id: UUID) -> bool:
        return concept_id in self._state.concepts

    def predicate_id(self, name: str) -> UUID:
        concept_id = mint_id("cw-predicate", name)
        if concept_id not in self._state.concepts:
            raise UnknownEntityError(f"no predicate concept named {name!r}")
        return concept_id

    def semantic_type_concept(self, label: str) -> UUID:
        try:
            return self._state.types[label]
        except KeyError:
            raise UnknownEntityError(f"unregistered semantic type {label!r}") from None

    def preferred_label(self, concept_id: UUID) -> str:
        concept = self.get_concept(concept_id)
        return self._state.terms[concept.preferred].label

    def find_by_synonym(
        self,
        label: str,
        language: str | None = None,
        exact: bool = True,
        limit: int = 20,
    ) -> list[UUID]:
        """Concept ids matching a synonym label.

        Exact mode compares folded labels; prefix mode returns concepts with
        a synonym starting with the folded label, ordered by preferred-term
        label and capped at ``limit``.
        """
        if not label:
            raise StoreError("search label is empty")
        state = self._state
        needle = fold(label)
        hits: set[UUID] = set()
        if exact:
            by_lang = state.synonyms.get(needle, {})
            if language is not None:
                hits |= by_lang.get(language, set())
            else:
                for ids in by_lang.values():
                    hits |= ids
        else:
            for folded, by_lang in state.synonyms.items():
                if not folded.startswith(needle):
                    continue
                if language is not None:
                    hits |= by_lang.get(language, set())
                else:
                    for ids in by_lang.values():
                        hits |= ids
        ordered = sorted(hits, key=lambda c: (fold(self.preferred_label(c)), str(c)))
        if not exact:
            return ordered[:limit]
        return ordered

    def matched_synonym(self, concept_id: UUID, query: str, language: str | None = None) -> str:
        """The synonym that made a prefix search hit this concept."""
        needle = fold(query)
        best: Term | None = None
        for term_id in self.get_concept(concept_id).synonyms:
            term = self._state.terms[term_id]
            if language is not None and term.language != language:
                continue
            if fold(term.label).startswith(needle):
                if best is None or (fold(term.label), term.language) < (fold(best.label), best.language):
                    best = term
        return best.label if best else ""

    def _object_label(self, obj: TripleObject) -> str:
        if obj.kind == "term":
            return self._state.terms[obj.id].label
        return self.preferred_label(obj.id)

    def triples_about(self, concept_id: UUID, role: str = "any") -> list[Triple]:
        """All triples where the concept plays the given role, in a stable order."""
        if role not in ("subject", "object", "any"):
            raise StoreError(f"unknown role {role!r}")
        self.get_concept(concept_id)
        state = self._state
        hits: set[UUID] = set()
        if role in ("subject", "any"):
            hits |= state.by_subject.get(concept_id, set())
        if role in ("object", "any"):
            for triple in state.triples.values():
                if triple.object.kind == "concept" and triple.object.id == concept_id:
                    hits.add(triple.id)
        found = [state.triples[t] for t in hits]
        return sorted(
            found,
            key=lambda t: (
                fold(self.preferred_label(t.predicate)),
                fold(self._object_label(t.object)),
                str(t.id),
            ),
        )

    def user_triples(self, name: str) -> list[tuple[Triple, Provenance]]:
        """A user's contributions, newest first."""
        state = self._state
        found = []
        for triple_id in state.users.get(name, set()):
            triple = state.triples[triple_id]
            prov = triple.provenance_for(Source.user(name))
            if prov is not None:
                found.append((triple, prov))
        found.sort(key=lambda pair: str(pair[0].id))
        found.sort(key=lambda pair: pair[1].timestamp, reverse=True)
        return found
