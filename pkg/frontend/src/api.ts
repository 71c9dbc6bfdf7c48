/** Typed client for the conceptwiki HTTP API.
 *
 * Every non-2xx response carries a {status, code, message} body; that
 * envelope is rethrown as ApiError so views can show the message next to
 * whatever caused it.
 */

import type {
  ConceptDoc,
  ConceptIn,
  ConceptSummary,
  TripleDoc,
  TripleIn,
  UserTripleDoc,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

export interface TripleOutcome {
  triple: TripleDoc;
  /** true when the server merged into an existing triple (200) rather than creating one (201) */
  merged: boolean;
}

declare global {
  interface Window {
    CW_API_BASE?: string;
  }
}

export function apiBase(): string {
  if (typeof window !== "undefined" && window.CW_API_BASE) {
    return window.CW_API_BASE.replace(/\/$/, "");
  }
  return "";
}

async function failFrom(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as { status?: number; code?: string; message?: string };
    return new ApiError(
      body.status ?? response.status,
      body.code ?? "http_error",
      body.message ?? response.statusText,
    );
  } catch {
    return new ApiError(response.status, "http_error", response.statusText || "request failed");
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    throw await failFrom(response);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = apiBase()) {}

  async search(q: string, lang?: string, limit?: number): Promise<ConceptSummary[]> {
    const params = new URLSearchParams({ q });
    if (lang) params.set("lang", lang);
    if (limit !== undefined) params.set("limit", String(limit));
    return asJson(await fetch(`${this.base}/concepts?${params}`));
  }

  async concept(id: string): Promise<ConceptDoc> {
    return asJson(await fetch(`${this.base}/concepts/${encodeURIComponent(id)}`));
  }

  async createConcept(body: ConceptIn): Promise<ConceptDoc> {
    return asJson(
      await fetch(`${this.base}/concepts`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
  }

  async createTriple(body: TripleIn): Promise<TripleOutcome> {
    const response = await fetch(`${this.base}/triples`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const triple = await asJson<TripleDoc>(response);
    return { triple, merged: response.status === 200 };
  }

  async userTriples(name: string): Promise<UserTripleDoc[]> {
    return asJson(await fetch(`${this.base}/users/${encodeURIComponent(name)}/triples`));
  }

  async conceptRdf(id: string, format: "ntriples" | "turtle" = "ntriples"): Promise<string> {
    const response = await fetch(
      `${this.base}/concepts/${encodeURIComponent(id)}/rdf?format=${format}`,
    );
    if (!response.ok) {
      throw await failFrom(response);
    }
    return response.text();
  }
}
