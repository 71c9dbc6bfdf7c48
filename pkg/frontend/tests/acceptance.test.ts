/** The rendered UI against a live backend.
 *
 * Covers the authority checkbox before and after a withdrawal, and the
 * full builder workflow driven through the DOM: pick a subject and a
 * relation, create the object concept inline, submit, then find the
 * contribution on the user page. Skips when no backend is available
 * (see tests/setup/backend.ts).
 */

import { afterEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/main.js";
import { conceptView } from "../src/render.js";
import { userHref } from "../src/router.js";

const base = process.env.CW_API;
const withdrawnBase = process.env.CW_API_WITHDRAWN;

async function enzymeConceptId(api: ApiClient): Promise<string> {
  const hits = await api.search("Aldehyde reductase");
  const exact = hits.find((h) => h.matchedSynonym === "Aldehyde reductase");
  if (!exact) throw new Error("fixture enzyme not found by synonym");
  return exact.id;
}

/** the ENZYME checkbox on the "has synonym / Aldehyde reductase" row */
function enzymeCheckbox(view: HTMLElement): HTMLInputElement {
  const row = [...view.querySelectorAll("tbody tr")].find(
    (tr) =>
      tr.querySelector(".cell-predicate")?.textContent === "has synonym" &&
      tr.querySelector(".cell-object")?.textContent?.includes("Aldehyde reductase"),
  );
  if (!row) throw new Error('no "has synonym / Aldehyde reductase" row rendered');
  const label = [...row.querySelectorAll(".cell-provenance label")].find((l) =>
    l.textContent?.includes("ENZYME"),
  );
  const box = label?.querySelector<HTMLInputElement>("input[type=checkbox]");
  if (!box) throw new Error("row has no ENZYME-labeled checkbox");
  return box;
}

async function waitFor<T>(
  probe: () => T | null | undefined | false,
  what: string,
  ms = 15_000,
): Promise<T> {
  const deadline = Date.now() + ms;
  for (;;) {
    const got = probe();
    if (got) return got;
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

function typeInto(input: HTMLInputElement, text: string): void {
  input.value = text;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

describe.skipIf(!base)("concept page shows authority support", () => {
  it("renders the ENZYME box checked while the synonym is supported", async () => {
    const api = new ApiClient(base);
    const doc = await api.concept(await enzymeConceptId(api));
    const box = enzymeCheckbox(conceptView(doc));
    expect(box.checked).toBe(true);
    expect(box.disabled).toBe(true);
  });
});

describe.skipIf(!withdrawnBase)("concept page after an authority withdrawal", () => {
  it("keeps the row but renders the ENZYME box unchecked", async () => {
    const api = new ApiClient(withdrawnBase);
    const doc = await api.concept(await enzymeConceptId(api));
    const box = enzymeCheckbox(conceptView(doc));
    expect(box.checked).toBe(false);
    expect(box.disabled).toBe(true);
  });
});

describe.skipIf(!base)("triple builder workflow", () => {
  afterEach(() => {
    delete window.CW_API_BASE;
    document.body.replaceChildren();
  });

  it("assembles, submits, and attributes a triple end to end", async () => {
    window.CW_API_BASE = base;
    const stamp = Date.now();
    const contributor = `ui-smoke-${stamp}`;
    const objectLabel = `ui process ${stamp}`;

    const host = document.createElement("div");
    document.body.append(host);
    location.hash = "#/build";
    // let the hashchange for the assignment fire before anyone listens,
    // so start() renders the form exactly once
    await new Promise((resolve) => setTimeout(resolve, 0));
    const app = new App(host);
    app.start();

    const form = await waitFor(
      () => host.querySelector<HTMLFormElement>("main form.triple-form"),
      "the builder form",
    );
    const pickers = [...form.querySelectorAll<HTMLInputElement>(".picker input")];
    expect(pickers).toHaveLength(3);
    const [subjectInput, predicateInput, objectInput] = pickers;
    const submit = form.querySelector("button[type=submit]") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);

    // subject: search by synonym, pick the enzyme
    typeInto(subjectInput!, "Aldehyde reductase");
    const subjectRow = await waitFor(
      () =>
        [...subjectInput!.closest(".picker")!.querySelectorAll<HTMLElement>("li.picker-result")].find(
          (li) => li.querySelector(".picker-preferred")?.textContent === "Alcohol dehydrogenase",
        ),
      "subject search results",
    );
    subjectRow.click();
    expect(subjectInput!.value).toBe("Alcohol dehydrogenase");
    expect(submit.disabled).toBe(true);

    // predicate: only relations are offered
    typeInto(predicateInput!, "has function");
    const predicateRow = await waitFor(
      () =>
        [...predicateInput!.closest(".picker")!.querySelectorAll<HTMLElement>("li.picker-result")].find(
          (li) => li.querySelector(".picker-preferred")?.textContent === "has function",
        ),
      "predicate search results",
    );
    predicateRow.click();
    expect(submit.disabled).toBe(true);

    // object: nothing matches, so create the concept inline
    typeInto(objectInput!, objectLabel);
    const createRow = await waitFor(
      () => objectInput!.closest(".picker")!.querySelector<HTMLElement>("li.picker-create"),
      "the create-new-concept row",
    );
    createRow.click();
    const createButton = await waitFor(
      () =>
        [...form.querySelectorAll<HTMLButtonElement>(".create-concept button")].find(
          (b) => b.textContent === "Create concept",
        ),
      "the inline create form",
    );
    const typeInput = form.querySelector(
      '.create-concept input[placeholder="Semantic type"]',
    ) as HTMLInputElement;
    typeInto(typeInput, "Biological Process");
    createButton.click();
    // the inline form closes once the new concept lands and is picked
    await waitFor(() => !form.querySelector(".create-concept"), "the created concept to be picked");
    expect(objectInput!.value).toBe(objectLabel);
    expect(submit.disabled).toBe(true);

    // contributor completes the draft
    const contributorInput = form.querySelector(
      'input[placeholder="Your name"]',
    ) as HTMLInputElement;
    typeInto(contributorInput, contributor);
    await waitFor(() => !submit.disabled, "submit to unlock");

    form.requestSubmit();
    expect(submit.disabled).toBe(true);
    const success = await waitFor(
      () => host.querySelector("main .success-view"),
      "the success view",
    );
    const hrefs = [...success.querySelectorAll("a")].map((a) => a.getAttribute("href"));
    expect(hrefs).toContain(userHref(contributor));
    expect(success.textContent).toContain("Statement added.");

    // the contribution is attributed on the user page
    location.hash = userHref(contributor);
    const row = await waitFor(
      () => host.querySelector("main .user-view tbody tr"),
      "the contribution row",
    );
    expect(row.textContent).toContain("Alcohol dehydrogenase");
    expect(row.textContent).toContain("has function");
    expect(row.textContent).toContain(objectLabel);
    expect(row.querySelector(".status")?.textContent).toBe("supported");

    // and the statement reached the store: both concept pages list it
    const api = new ApiClient(base);
    const enzymeDoc = await api.concept(await enzymeConceptId(api));
    const stated = enzymeDoc.triples.find(
      (t) => t.predicate.label === "has function" && t.object.label === objectLabel,
    );
    expect(stated).toBeDefined();
    expect(stated?.provenance.map((p) => p.source.name)).toContain(contributor);
  });
});
