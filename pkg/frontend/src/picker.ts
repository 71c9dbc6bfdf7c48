/** Typeahead concept picker backed by the search endpoint. */

import type { ConceptSummary } from "./types.js";

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), delayMs);
  };
}

export interface PickerOptions {
  placeholder?: string;
  delayMs?: number;
  /** usually ApiClient.search, injectable for tests */
  search: (q: string) => Promise<ConceptSummary[]>;
  onPick: (summary: ConceptSummary) => void;
  /** keep only matching results, e.g. relations for the predicate slot */
  filter?: (summary: ConceptSummary) => boolean;
  /** when set, an extra row offers to create a concept from the typed text */
  onCreateNew?: (label: string) => void;
}

export class ConceptPicker {
  readonly root: HTMLElement;
  readonly input: HTMLInputElement;
  private readonly list: HTMLUListElement;
  private readonly options: PickerOptions;
  private requestSeq = 0;

  constructor(options: PickerOptions) {
    this.options = options;
    this.root = document.createElement("div");
    this.root.className = "picker";
    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.placeholder = options.placeholder ?? "Search concepts";
    this.list = document.createElement("ul");
    this.list.className = "picker-results";
    this.list.hidden = true;
    this.root.append(this.input, this.list);

    const run = debounce(() => void this.lookup(), options.delayMs ?? 200);
    this.input.addEventListener("input", run);
    this.input.addEventListener("keydown", (event) => {
      if (event.key === "Escape") this.close();
    });
  }

  /** latest keystroke wins; answers to older queries are dropped */
  private async lookup(): Promise<void> {
    const q = this.input.value.trim();
    const seq = ++this.requestSeq;
    if (!q) {
      this.close();
      return;
    }
    let results: ConceptSummary[];
    try {
      results = await this.options.search(q);
    } catch {
      results = [];
    }
    if (seq !== this.requestSeq) return;
    if (this.options.filter) {
      results = results.filter(this.options.filter);
    }
    this.show(results, q);
  }

  private show(results: ConceptSummary[], q: string): void {
    this.list.replaceChildren();
    for (const summary of results) {
      const item = document.createElement("li");
      item.className = "picker-result";
      item.dataset.conceptId = summary.id;
      const name = document.createElement("span");
      name.className = "picker-preferred";
      name.textContent = summary.preferred;
      item.append(name);
      if (summary.matchedSynonym !== summary.preferred) {
        const via = document.createElement("span");
        via.className = "picker-matched";
        via.textContent = ` (matched "${summary.matchedSynonym}")`;
        item.append(via);
      }
      if (summary.semanticTypes.length) {
        const types = document.createElement("span");
        types.className = "picker-types";
        types.textContent = ` ${summary.semanticTypes.join(", ")}`;
        item.append(types);
      }
      item.addEventListener("click", () => this.pick(summary));
      this.list.append(item);
    }
    if (!results.length) {
      const none = document.createElement("li");
      none.className = "picker-empty";
      none.textContent = "No matches";
      this.list.append(none);
    }
    if (this.options.onCreateNew) {
      const create = document.createElement("li");
      create.className = "picker-create";
      create.textContent = `Create new concept "${q}"…`;
      create.addEventListener("click", () => {
        this.close();
        this.options.onCreateNew?.(q);
      });
      this.list.append(create);
    }
    this.list.hidden = false;
  }

  private pick(summary: ConceptSummary): void {
    this.input.value = summary.preferred;
    this.close();
    this.options.onPick(summary);
  }

  close(): void {
    this.list.replaceChildren();
    this.list.hidden = true;
  }

  clear(): void {
    this.input.value = "";
    this.close();
  }
}
