/** Application wiring: routes, the header search, and the builder form.
 *
 * Views come from render.ts and stay data-driven; this module owns state,
 * fetching, and the one-mutation-at-a-time rule for writes.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  canSubmit,
  emptyDraft,
  pickedFrom,
  toTripleIn,
  type DraftObject,
  type TripleDraft,
} from "./draft.js";
import { ConceptPicker } from "./picker.js";
import {
  conceptView,
  errorNote,
  homeView,
  loadingView,
  notFoundView,
  successView,
  userView,
} from "./render.js";
import { conceptHref, onRouteChange, type Route } from "./router.js";
import type { ConceptSummary } from "./types.js";

const RELATION_TYPE = "Relation";

export class App {
  private readonly api: ApiClient;
  private readonly main: HTMLElement;
  private mutationInFlight = false;

  constructor(root: HTMLElement, api: ApiClient = new ApiClient()) {
    this.api = api;
    root.replaceChildren(this.buildHeader());
    this.main = document.createElement("main");
    root.append(this.main);
  }

  start(): void {
    onRouteChange((route) => void this.show(route));
  }

  private buildHeader(): HTMLElement {
    const header = document.createElement("header");
    const title = document.createElement("a");
    title.href = "#/";
    title.className = "site-title";
    title.textContent = "ConceptWiki";
    const build = document.createElement("a");
    build.href = "#/build";
    build.className = "nav-build";
    build.textContent = "Build";
    const nav = document.createElement("nav");
    nav.append(title, build, this.searchBox("Search concepts"));
    header.append(nav);
    return header;
  }

  /** typeahead that navigates to whichever concept gets picked */
  private searchBox(placeholder: string): HTMLElement {
    const picker = new ConceptPicker({
      placeholder,
      search: (q) => this.api.search(q),
      onPick: (summary) => {
        picker.clear();
        location.hash = conceptHref(summary.id);
      },
    });
    return picker.root;
  }

  private async show(route: Route): Promise<void> {
    switch (route.view) {
      case "home":
        this.main.replaceChildren(homeView(this.searchBox("Search concepts")));
        return;
      case "concept":
        await this.showConcept(route.id);
        return;
      case "user":
        await this.showUser(route.name);
        return;
      case "build":
        this.main.replaceChildren(this.buildForm());
        return;
    }
  }

  private async showConcept(id: string): Promise<void> {
    this.main.replaceChildren(loadingView());
    try {
      const doc = await this.api.concept(id);
      this.main.replaceChildren(conceptView(doc));
    } catch (err) {
      if (err instanceof ApiError && (err.status === 404 || err.status === 400)) {
        this.main.replaceChildren(notFoundView(id, this.searchBox("Search concepts")));
      } else {
        this.main.replaceChildren(errorNote(describeError(err)));
      }
    }
  }

  private async showUser(name: string): Promise<void> {
    this.main.replaceChildren(loadingView());
    try {
      const rows = await this.api.userTriples(name);
      this.main.replaceChildren(userView(name, rows));
    } catch (err) {
      this.main.replaceChildren(errorNote(describeError(err)));
    }
  }

  private buildForm(): HTMLElement {
    const draft: TripleDraft = emptyDraft();
    const section = document.createElement("section");
    section.className = "build-view";
    const heading = document.createElement("h2");
    heading.textContent = "Add a statement";
    const form = document.createElement("form");
    form.className = "triple-form";
    section.append(heading, form);

    const subjectError = slotError();
    const predicateError = slotError();
    const objectError = slotError();
    const formError = slotError();

    const subjectPicker = new ConceptPicker({
      placeholder: "Subject concept",
      search: (q) => this.api.search(q),
      onPick: (summary) => {
        draft.subject = pickedFrom(summary);
        clear(subjectError);
        refresh();
      },
    });

    const predicatePicker = new ConceptPicker({
      placeholder: "Predicate (a relation)",
      search: (q) => this.api.search(q),
      filter: (summary) => summary.semanticTypes.includes(RELATION_TYPE),
      onPick: (summary) => {
        draft.predicate = pickedFrom(summary);
        clear(predicateError);
        refresh();
      },
    });

    // object slot: concept mode with inline creation, or a plain literal
    const objectSlot = document.createElement("div");
    objectSlot.className = "object-slot";
    const modeConcept = radio("object-mode", "concept", "Concept", true);
    const modeLiteral = radio("object-mode", "literal", "Literal text", false);

    const objectPicker = new ConceptPicker({
      placeholder: "Object concept",
      search: (q) => this.api.search(q),
      onPick: (summary) => {
        draft.object = { mode: "concept", picked: pickedFrom(summary) };
        clear(objectError);
        refresh();
      },
      onCreateNew: (label) => openCreateForm(label),
    });

    const literalText = textInput("Literal value");
    const literalLang = textInput("Language", "en");
    const literalBox = document.createElement("div");
    literalBox.className = "literal-inputs";
    literalBox.append(literalText, literalLang);
    literalBox.hidden = true;
    const syncLiteral = () => {
      draft.object = {
        mode: "literal",
        text: literalText.value,
        language: literalLang.value,
      };
      refresh();
    };
    literalText.addEventListener("input", syncLiteral);
    literalLang.addEventListener("input", syncLiteral);

    const createHost = document.createElement("div");
    createHost.className = "create-host";

    const setMode = (mode: DraftObject["mode"]) => {
      literalBox.hidden = mode !== "literal";
      objectPicker.root.hidden = mode !== "concept";
      draft.object =
        mode === "concept"
          ? { mode: "concept", picked: null }
          : { mode: "literal", text: literalText.value, language: literalLang.value };
      refresh();
    };
    modeConcept.input.addEventListener("change", () => setMode("concept"));
    modeLiteral.input.addEventListener("change", () => setMode("literal"));

    objectSlot.append(
      modeConcept.label,
      modeLiteral.label,
      objectPicker.root,
      literalBox,
      createHost,
    );

    const contributor = textInput("Your name");
    contributor.addEventListener("input", () => {
      draft.contributor = contributor.value;
      refresh();
    });

    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Add statement";
    submit.disabled = true;

    const refresh = () => {
      submit.disabled = !canSubmit(draft) || this.mutationInFlight;
    };

    const openCreateForm = (label: string) => {
      createHost.replaceChildren(
        this.createConceptForm(label, (summary) => {
          createHost.replaceChildren();
          objectPicker.input.value = summary.preferred;
          draft.object = { mode: "concept", picked: pickedFrom(summary) };
          clear(objectError);
          refresh();
        }),
      );
    };

    form.append(
      field("Subject", subjectPicker.root, subjectError),
      field("Predicate", predicatePicker.root, predicateError),
      field("Object", objectSlot, objectError),
      field("Contributor", contributor, slotError()),
      formError,
      submit,
    );

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      if (!canSubmit(draft) || this.mutationInFlight) return;
      clear(subjectError, predicateError, objectError, formError);
      this.mutationInFlight = true;
      refresh();
      void this.api
        .createTriple(toTripleIn(draft))
        .then(({ triple, merged }) => {
          this.main.replaceChildren(successView(triple, merged, draft.contributor.trim()));
        })
        .catch((err) => {
          const target =
            err instanceof ApiError && err.code === "invalid_predicate"
              ? predicateError
              : err instanceof ApiError && err.code === "unknown_concept"
                ? subjectError
                : formError;
          target.textContent = describeError(err);
        })
        .finally(() => {
          this.mutationInFlight = false;
          refresh();
        });
    });

    return section;
  }

  /** small inline form the object picker opens for a brand-new concept */
  private createConceptForm(
    label: string,
    onCreated: (summary: ConceptSummary) => void,
  ): HTMLElement {
    const box = document.createElement("fieldset");
    box.className = "create-concept";
    const legend = document.createElement("legend");
    legend.textContent = "New concept";
    const preferred = textInput("Preferred label", label);
    const language = textInput("Language", "en");
    const semanticType = textInput("Semantic type", "Other");
    const definition = textInput("Definition (optional)");
    const error = slotError();
    const create = document.createElement("button");
    create.type = "button";
    create.textContent = "Create concept";
    create.addEventListener("click", () => {
      if (this.mutationInFlight) return;
      if (!preferred.value.trim() || !language.value.trim() || !semanticType.value.trim()) {
        error.textContent = "A label, language, and semantic type are required.";
        return;
      }
      clear(error);
      this.mutationInFlight = true;
      create.disabled = true;
      void this.api
        .createConcept({
          preferred: preferred.value.trim(),
          language: language.value.trim(),
          semanticTypes: [semanticType.value.trim()],
          ...(definition.value.trim() ? { definition: definition.value.trim() } : {}),
        })
        .then((doc) => {
          onCreated({
            id: doc.id,
            preferred: doc.preferred.label,
            semanticTypes: doc.semanticTypes,
            matchedSynonym: doc.preferred.label,
          });
        })
        .catch((err) => {
          error.textContent = describeError(err);
        })
        .finally(() => {
          this.mutationInFlight = false;
          create.disabled = false;
        });
    });
    box.append(legend, preferred, language, semanticType, definition, error, create);
    return box;
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return err instanceof Error ? err.message : String(err);
}

function slotError(): HTMLElement {
  const note = document.createElement("p");
  note.className = "field-error";
  return note;
}

function clear(...notes: HTMLElement[]): void {
  for (const note of notes) note.textContent = "";
}

function field(name: string, control: HTMLElement, error: HTMLElement): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "field";
  const caption = document.createElement("label");
  caption.textContent = name;
  wrap.append(caption, control, error);
  return wrap;
}

function textInput(placeholder: string, value = ""): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "text";
  input.placeholder = placeholder;
  input.value = value;
  return input;
}

function radio(
  name: string,
  value: string,
  caption: string,
  checked: boolean,
): { label: HTMLLabelElement; input: HTMLInputElement } {
  const input = document.createElement("input");
  input.type = "radio";
  input.name = name;
  input.value = value;
  input.checked = checked;
  const label = document.createElement("label");
  label.className = "mode-choice";
  label.append(input, ` ${caption}`);
  return { label, input };
}

export function startApp(root: HTMLElement): App {
  const app = new App(root);
  app.start();
  return app;
}

const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) {
  startApp(rootElement);
}
