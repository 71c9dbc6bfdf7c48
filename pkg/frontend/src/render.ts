/** Pure DOM builders for every view.
 *
 * Nothing in here fetches or navigates; callers hand in documents and
 * (where needed) pre-built interactive elements. That keeps each builder
 * a plain function from data to element, testable without a backend.
 */

import type {
  ConceptDoc,
  ConceptRef,
  ObjectDoc,
  ProvenanceDoc,
  TripleDoc,
  UserTripleDoc,
} from "./types.js";
import { conceptHref, userHref } from "./router.js";

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  node.append(...children);
  return node;
}

function languageTag(language: string): HTMLElement {
  return el("span", "lang-tag", `@${language}`);
}

export function conceptLink(ref: ConceptRef): HTMLAnchorElement {
  const a = el("a", "concept-link", ref.label);
  a.href = conceptHref(ref.id);
  return a;
}

function objectCell(object: ObjectDoc): HTMLElement {
  if (object.kind === "concept") {
    return el("span", "object object-concept", conceptLink(object));
  }
  return el("span", "object object-term", object.label, " ", languageTag(object.language));
}

/** One read-only checkbox per source, checked while that source still stands behind the triple. */
export function provenanceCell(provenance: ProvenanceDoc[]): HTMLElement {
  const cell = el("span", "provenance");
  for (const entry of provenance) {
    const box = el("input") as HTMLInputElement;
    box.type = "checkbox";
    box.checked = entry.status === "supported";
    box.disabled = true;
    const label = el("label", `source source-${entry.source.kind}`, box, " ", entry.source.name);
    if (entry.source.release) {
      label.append(" ", el("span", "release", entry.source.release));
    }
    label.title = `${entry.status} since ${entry.timestamp}`;
    cell.append(label);
  }
  return cell;
}

export function tripleRow(triple: TripleDoc): HTMLTableRowElement {
  const row = el("tr", "triple-row");
  row.dataset.tripleId = triple.id;
  row.append(
    el("td", "cell-subject", conceptLink(triple.subject)),
    el("td", "cell-predicate", triple.predicate.label),
    el("td", "cell-object", objectCell(triple.object)),
    el("td", "cell-provenance", provenanceCell(triple.provenance)),
  );
  return row;
}

export function tripleTable(triples: TripleDoc[]): HTMLElement {
  const head = el(
    "tr",
    undefined,
    el("th", undefined, "Subject"),
    el("th", undefined, "Predicate"),
    el("th", undefined, "Object"),
    el("th", undefined, "Sources"),
  );
  const body = el("tbody", undefined, ...triples.map(tripleRow));
  return el("table", "triple-table", el("thead", undefined, head), body);
}

export function emptyState(text: string): HTMLElement {
  return el("p", "empty-state", text);
}

export function conceptView(doc: ConceptDoc): HTMLElement {
  const view = el("section", "concept-view");
  view.append(
    el("h2", "preferred", doc.preferred.label, " ", languageTag(doc.preferred.language)),
  );
  if (doc.semanticTypes.length) {
    view.append(
      el("p", "semantic-types", ...doc.semanticTypes.map((t) => el("span", "type-badge", t))),
    );
  }
  if (doc.definition) {
    view.append(el("p", "definition", doc.definition));
  }
  if (doc.synonyms.length) {
    const items = doc.synonyms.map((s) =>
      el("li", "synonym", s.label, " ", languageTag(s.language)),
    );
    view.append(el("h3", undefined, "Synonyms"), el("ul", "synonyms", ...items));
  }
  view.append(el("h3", undefined, "Statements"));
  if (doc.triples.length) {
    view.append(tripleTable(doc.triples));
  } else {
    view.append(emptyState("Nothing is stated about this concept yet."));
  }
  return view;
}

/** Unknown or malformed id. The caller supplies the search box to embed. */
export function notFoundView(id: string, searchBox: HTMLElement): HTMLElement {
  return el(
    "section",
    "not-found",
    el("h2", undefined, "No such concept"),
    el("p", undefined, `Nothing is stored under "${id}". Try a search instead:`),
    searchBox,
  );
}

export function userView(name: string, rows: UserTripleDoc[]): HTMLElement {
  const view = el("section", "user-view", el("h2", undefined, `Contributions by ${name}`));
  if (!rows.length) {
    view.append(emptyState("No contributions yet."));
    return view;
  }
  const head = el(
    "tr",
    undefined,
    el("th", undefined, "Subject"),
    el("th", undefined, "Predicate"),
    el("th", undefined, "Object"),
    el("th", undefined, "Status"),
    el("th", undefined, "When"),
  );
  const body = el("tbody");
  for (const row of rows) {
    const tr = el("tr", `contribution status-${row.status}`);
    tr.dataset.tripleId = row.id;
    tr.append(
      el("td", undefined, conceptLink(row.subject)),
      el("td", undefined, row.predicate.label),
      el("td", undefined, objectCell(row.object)),
      el("td", "status", row.status),
      el("td", "timestamp", row.timestamp),
    );
    body.append(tr);
  }
  view.append(el("table", "contribution-table", el("thead", undefined, head), body));
  return view;
}

export function errorNote(message: string): HTMLElement {
  return el("p", "error-note", message);
}

/** Shown after a triple lands; links out to every page that now mentions it. */
export function successView(triple: TripleDoc, merged: boolean, contributor: string): HTMLElement {
  const verdict = merged
    ? "That statement already existed; your support was added to it."
    : "Statement added.";
  const sentence = el("p", "statement", conceptLink(triple.subject), " ", triple.predicate.label, " ");
  sentence.append(
    triple.object.kind === "concept"
      ? conceptLink(triple.object)
      : el("span", undefined, `"${triple.object.label}"`, " ", languageTag(triple.object.language)),
  );
  const userLink = el("a", undefined, contributor);
  userLink.href = userHref(contributor);
  return el(
    "section",
    "success-view",
    el("h2", undefined, merged ? "Merged" : "Added"),
    el("p", undefined, verdict),
    sentence,
    el("p", undefined, "See all contributions by ", userLink, "."),
  );
}

export function homeView(searchBox: HTMLElement): HTMLElement {
  return el(
    "section",
    "home-view",
    el("h2", undefined, "ConceptWiki"),
    el(
      "p",
      undefined,
      "Look up a concept by any of its names, or add a statement of your own under Build.",
    ),
    searchBox,
  );
}

export function loadingView(): HTMLElement {
  return el("p", "loading", "Loading…");
}
