/** Triple draft state for the builder form.
 *
 * The submit invariant lives here, away from the DOM: a draft is
 * submittable exactly when subject, predicate, object, and contributor
 * are all filled in.
 */

import type { ConceptSummary, TripleIn } from "./types.js";

export interface PickedConcept {
  id: string;
  label: string;
}

export type DraftObject =
  | { mode: "concept"; picked: PickedConcept | null }
  | { mode: "literal"; text: string; language: string };

export interface TripleDraft {
  subject: PickedConcept | null;
  predicate: PickedConcept | null;
  object: DraftObject;
  contributor: string;
}

export function emptyDraft(): TripleDraft {
  return {
    subject: null,
    predicate: null,
    object: { mode: "concept", picked: null },
    contributor: "",
  };
}

export function pickedFrom(summary: ConceptSummary): PickedConcept {
  return { id: summary.id, label: summary.preferred };
}

export function objectFilled(object: DraftObject): boolean {
  if (object.mode === "concept") {
    return object.picked !== null;
  }
  return object.text.trim() !== "" && object.language.trim() !== "";
}

export function canSubmit(draft: TripleDraft): boolean {
  return (
    draft.subject !== null &&
    draft.predicate !== null &&
    objectFilled(draft.object) &&
    draft.contributor.trim() !== ""
  );
}

/** The POST /triples body for a complete draft. Throws if the invariant is not met. */
export function toTripleIn(draft: TripleDraft): TripleIn {
  if (!canSubmit(draft) || !draft.subject || !draft.predicate) {
    throw new Error("draft is incomplete");
  }
  const object =
    draft.object.mode === "concept"
      ? { kind: "concept" as const, value: draft.object.picked!.id }
      : {
          kind: "literal" as const,
          value: draft.object.text.trim(),
          language: draft.object.language.trim(),
        };
  return {
    subject: draft.subject.id,
    predicate: draft.predicate.id,
    object,
    user: draft.contributor.trim(),
  };
}

/** Sentence shown on the success view, e.g. after the builder POSTs. */
export function describeDraft(draft: TripleDraft): string {
  const subject = draft.subject?.label ?? "?";
  const predicate = draft.predicate?.label ?? "?";
  const object =
    draft.object.mode === "concept"
      ? draft.object.picked?.label ?? "?"
      : `"${draft.object.text}"@${draft.object.language}`;
  return `${subject} ${predicate} ${object}`;
}
