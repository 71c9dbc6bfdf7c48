/** Response document shapes, mirroring the HTTP API exactly. */

export interface ConceptSummary {
  id: string;
  preferred: string;
  semanticTypes: string[];
  matchedSynonym: string;
}

export interface TermDoc {
  id: string;
  label: string;
  language: string;
}

export interface SourceDoc {
  kind: "authority" | "user";
  name: string;
  release?: string;
}

export type ProvenanceStatus = "supported" | "withdrawn";

export interface ProvenanceDoc {
  source: SourceDoc;
  status: ProvenanceStatus;
  timestamp: string;
}

export interface ConceptRef {
  id: string;
  label: string;
}

export type ObjectDoc =
  | { kind: "term"; id: string; label: string; language: string }
  | { kind: "concept"; id: string; label: string };

export interface TripleDoc {
  id: string;
  subject: ConceptRef;
  predicate: ConceptRef;
  object: ObjectDoc;
  provenance: ProvenanceDoc[];
}

export interface UserTripleDoc extends TripleDoc {
  status: ProvenanceStatus;
  timestamp: string;
}

export interface ConceptDoc {
  id: string;
  preferred: TermDoc;
  synonyms: TermDoc[];
  semanticTypes: string[];
  definition: string | null;
  triples: TripleDoc[];
}

export interface ConceptIn {
  preferred: string;
  language?: string;
  semanticTypes: string[];
  definition?: string;
}

export interface TripleObjectIn {
  kind: "concept" | "literal";
  value: string;
  language?: string;
}

export interface TripleIn {
  subject: string;
  predicate: string;
  object: TripleObjectIn;
  user: string;
}

export interface ApiFailBody {
  status: number;
  code: string;
  message: string;
}
