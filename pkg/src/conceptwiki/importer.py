"""Reconciliation of an enzyme interchange document against the store.

Import is a three-step pipeline: derive the fact set each record stands
for, match records to existing concepts through their EC-number synonyms,
then diff against what the authority currently supports. The diff becomes
an explicit plan (create / assert / withdraw / mark-transferred actions)
that is applied as one exclusive batch.

Withdrawal never deletes a triple; it flips the authority's provenance
entry to withdrawn, so data the authority no longer backs stays visible
with the checkbox removed. Triples supported only by other sources are
never touched.

Plans are only valid against the store state they were computed from; a
sequence-number checksum rejects stale plans instead of applying a diff
computed against history.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from uuid import UUID

from conceptwiki.enzyme import EnzymeRecord, IntermediateDoc
from conceptwiki.ids import mint_id
from conceptwiki.model import SUPPORTED, Source, Term
from conceptwiki.store import Batch, Store, UnknownEntityError

EC_LANGUAGE = "zxx"  # EC numbers and other codes carry the not-a-language tag

_ENZYME_TYPE_CONCEPT = mint_id("cw-semantic-type", "Enzyme")


class StalePlanError(Exception):
    def __init__(self, plan_seq: int, store_seq: int):
        super().__init__(
            f"plan was computed at journal seq {plan_seq} but the store is now at {store_seq}"
        )


class AmbiguousEcError(Exception):
    def __init__(self, ec: str, concept_ids: Sequence[UUID]):
        ids = ", ".join(sorted(str(c) for c in concept_ids))
        super().__init__(f"EC {ec} matches more than one concept: {ids}")
        self.ec = ec
        self.concept_ids = tuple(concept_ids)


@dataclass(frozen=True)
class Assertion:
    """One (predicate, object) fact a record asserts about its concept."""

    predicate: str
    object_kind: str  # "term" | "concept"
    label: str | None = None
    language: str | None = None
    concept: UUID | None = None

    @staticmethod
    def term(predicate: str, label: str, language: str) -> Assertion:
        return Assertion(predicate=predicate, object_kind="term", label=label, language=language)

    @staticmethod
    def concept_object(predicate: str, concept: UUID) -> Assertion:
        return Assertion(predicate=predicate, object_kind="concept", concept=concept)

    def sort_key(self) -> tuple:
        return (self.predicate, self.object_kind, self.label or str(self.concept), self.language or "")


def derive_assertions(record: EnzymeRecord) -> frozenset[Assertion]:
    """The fact set one record stands for, independent of store contents."""
    facts = {Assertion.term("has synonym", record.ec, EC_LANGUAGE)}
    if record.status == "deleted":
        return frozenset(facts)
    if record.status == "transferred":
        for target in record.transferred_to:
            facts.add(Assertion.term("transferred to", target, EC_LANGUAGE))
        return frozenset(facts)
    if record.recommended_name:
        facts.add(Assertion.term("has synonym", record.recommended_name, "en"))
    for name in record.alt_names:
        facts.add(Assertion.term("has synonym", name, "en"))
    for activity in record.activities:
        facts.add(Assertion.term("has catalytic activity", activity, "en"))
    for cofactor in record.cofactors:
        facts.add(Assertion.term("has cofactor", cofactor, "en"))
    for comment in record.comments:
        facts.add(Assertion.term("has comment", comment, "en"))
    for xref in record.cross_refs:
        facts.add(Assertion.term("has cross-reference", f"{xref.db}:{xref.acc}", EC_LANGUAGE))
    facts.add(Assertion.concept_object("has semantic type", _ENZYME_TYPE_CONCEPT))
    return frozenset(facts)


def match_concept(store: Store, ec: str) -> UUID | None:
    """The concept holding this EC number as a synonym, if there is exactly one.

    The lookup is language-tagged first; data imported before codes carried
    the not-a-language tag is still found through an any-language fallback.
    """
    hits = store.find_by_synonym(ec, language=EC_LANGUAGE, exact=True)
    if not hits:
        hits = store.find_by_synonym(ec, language=None, exact=True)
    if not hits:
        return None
    if len(hits) > 1:
        raise AmbiguousEcError(ec, hits)
    return hits[0]


# -- plan actions ------------------------------------------------------------

@dataclass(frozen=True)
class CreateConcept:
    ec: str
    record: EnzymeRecord
    concept: UUID


@dataclass(frozen=True)
class AssertSupported:
    concept: UUID
    assertion: Assertion


@dataclass(frozen=True)
class Withdraw:
    triple: UUID


@dataclass(frozen=True)
class MarkTransferred:
    concept: UUID
    targets: tuple[str, ...]


Action = CreateConcept | AssertSupported | Withdraw | MarkTransferred


@dataclass(frozen=True)
class ImportPlan:
    authority: Source
    actions: tuple[Action, ...]
    base_seq: int
    matched: int
    unchanged: int
    ambiguous_ecs: tuple[str, ...]
    errors: tuple[str, ...]

    def is_empty(self) -> bool:
        return not self.actions


@dataclass(frozen=True)
class ImportReport:
    concepts_created: int
    concepts_matched: int
    flags_added: int
    flags_withdrawn: int
    unchanged: int
    ambiguous_ecs: tuple[str, ...]
    errors: tuple[str, ...]

    def as_json(self) -> dict:
        return {
            "concepts_created": self.concepts_created,
            "concepts_matched": self.concepts_matched,
            "flags_added": self.flags_added,
            "flags_withdrawn": self.flags_withdrawn,
            "unchanged": self.unchanged,
            "ambiguous_ecs": list(self.ambiguous_ecs),
            "errors": list(self.errors),
        }


def _supported_assertions(store: Store, concept_id: UUID, authority: Source) -> dict[Assertion, UUID]:
    """Subject-role triples the authority currently supports, keyed for diffing."""
    state = store.state
    out: dict[Assertion, UUID] = {}
    for triple in store.triples_about(concept_id, role="subject"):
        prov = triple.provenance_for(authority)
        if prov is None or prov.status != SUPPORTED:
            continue
        predicate = store.preferred_label(triple.predicate)
        if triple.object.kind == "term":
            term = state.terms[triple.object.id]
            key = Assertion.term(predicate, term.label, term.language)
        else:
            key = Assertion.concept_object(predicate, triple.object.id)
        out[key] = triple.id
    return out


def _record_actions(concept: UUID, wanted: set[Assertion]) -> list[Action]:
    plain = sorted(
        (a for a in wanted if a.predicate != "transferred to"),
        key=Assertion.sort_key,
    )
    actions: list[Action] = [AssertSupported(concept, a) for a in plain]
    transfers = tuple(
        a.label for a in sorted(
            (a for a in wanted if a.predicate == "transferred to"),
            key=Assertion.sort_key,
        )
    )
    if transfers:
        actions.append(MarkTransferred(concept, transfers))
    return actions


def plan_import(
    store: Store,
    doc: IntermediateDoc,
    authority: Source,
    record_errors: Sequence[str] = (),
) -> ImportPlan:
    """Diff the document against the store into an ordered action list.

    ``record_errors`` lets the caller fold parse-stage record failures into
    the plan's report so the final tally covers every record encountered.
    """
    ambiguous: list[str] = []
    creations: list[tuple[EnzymeRecord, frozenset[Assertion]]] = []
    # matched concept -> union of assertion sets from all records that hit it
    wanted_by_concept: dict[UUID, set[Assertion]] = {}
    matched_records: list[tuple[EnzymeRecord, UUID, frozenset[Assertion]]] = []

    for record in doc.records:
        derived = derive_assertions(record)
        try:
            concept_id = match_concept(store, record.ec)
        except AmbiguousEcError:
            ambiguous.append(record.ec)
            continue
        if concept_id is None:
            creations.append((record, derived))
        else:
            wanted_by_concept.setdefault(concept_id, set()).update(derived)
            matched_records.append((record, concept_id, derived))

    actions: list[Action] = []
    for record, derived in creations:
        concept_id = mint_id("cw-enzyme-concept", record.ec)
        actions.append(CreateConcept(ec=record.ec, record=record, concept=concept_id))
        actions.extend(_record_actions(concept_id, set(derived)))

    supported_by_concept = {
        concept_id: _supported_assertions(store, concept_id, authority)
        for concept_id in wanted_by_concept
    }
    withdraws_by_concept: dict[UUID, set[Assertion]] = {}
    for concept_id, wanted in sorted(wanted_by_concept.items(), key=lambda kv: str(kv[0])):
        supported = supported_by_concept[concept_id]
        missing = wanted - set(supported)
        stale = set(supported) - wanted
        withdraws_by_concept[concept_id] = stale
        actions.extend(_record_actions(concept_id, missing))
        for assertion in sorted(stale, key=Assertion.sort_key):
            actions.append(Withdraw(triple=supported[assertion]))

    unchanged = 0
    for record, concept_id, derived in matched_records:
        if derived <= set(supported_by_concept[concept_id]) and not withdraws_by_concept[concept_id]:
            unchanged += 1

    return ImportPlan(
        authority=authority,
        actions=tuple(actions),
        base_seq=store.state.last_seq,
        matched=len(matched_records),
        unchanged=unchanged,
        ambiguous_ecs=tuple(ambiguous),
        errors=tuple(record_errors),
    )


def _preferred_term(record: EnzymeRecord) -> Term:
    if record.recommended_name:
        return Term.of(record.recommended_name, "en")
    return Term.of(record.ec, EC_LANGUAGE)


def _assert_one(b: Batch, concept: UUID, assertion: Assertion, source: Source) -> bool:
    predicate_id = mint_id("cw-predicate", assertion.predicate)
    if assertion.object_kind == "term":
        obj: UUID | Term = Term.of(assertion.label, assertion.language)
    else:
        obj = assertion.concept
    outcome = b.assert_triple(concept, predicate_id, obj, source)
    return outcome.became_supported


def apply_import(store: Store, plan: ImportPlan) -> ImportReport:
    """Execute a plan as one batch and tally what actually changed."""
    if plan.base_seq != store.state.last_seq:
        raise StalePlanError(plan.base_seq, store.state.last_seq)

    created = 0
    flags_added = 0
    flags_withdrawn = 0
    with store.batch() as b:
        for action in plan.actions:
            if isinstance(action, CreateConcept):
                b.put_concept(
                    preferred=_preferred_term(action.record),
                    types=["Enzyme"],
                    concept_id=action.concept,
                )
                created += 1
            elif isinstance(action, AssertSupported):
                if _assert_one(b, action.concept, action.assertion, plan.authority):
                    flags_added += 1
            elif isinstance(action, MarkTransferred):
                for target in action.targets:
                    fact = Assertion.term("transferred to", target, EC_LANGUAGE)
                    if _assert_one(b, action.concept, fact, plan.authority):
                        flags_added += 1
            elif isinstance(action, Withdraw):
                if b.withdraw(action.triple, plan.authority).changed:
                    flags_withdrawn += 1
            else:
                raise UnknownEntityError(f"unknown plan action {action!r}")

    return ImportReport(
        concepts_created=created,
        concepts_matched=plan.matched,
        flags_added=flags_added,
        flags_withdrawn=flags_withdrawn,
        unchanged=plan.unchanged,
        ambiguous_ecs=plan.ambiguous_ecs,
        errors=plan.errors,
    )
