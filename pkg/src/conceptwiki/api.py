"""HTTP interface: concept search, concept pages, RDF retrieval, user triples.

Everything here is a thin rendering layer over the store; every response
is reconstructible from store reads. Mutations funnel through the store's
single-writer batches, reads serve from immutable snapshots, so the
service stays responsive while an import is staged.

Error contract: every non-2xx body is exactly one object with keys
``status``, ``code``, ``message``. Malformed UUIDs in paths are caught by
hand so they surface as 400s, never 500s. Authority provenance is not
editable here: imports own authority flags, the API only ever attaches
user provenance.
"""

from __future__ import annotations

import os
from uuid import UUID

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from conceptwiki.ids import parse_id
from conceptwiki.model import Concept, Provenance, Source, Term, Triple, format_ts
from conceptwiki.rdf import FORMATS, MEDIA_TYPES, export_concept
from conceptwiki.store import Store, StoreError, UnknownEntityError, fold


class ApiFail(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message},
    )


def _parse_uuid(text: str, what: str) -> UUID:
    try:
        return parse_id(text)
    except ValueError:
        raise ApiFail(400, "invalid_id", f"{what} is not a canonical UUID: {text!r}") from None


class ConceptIn(BaseModel):
    preferred: str
    language: str = "en"
    semanticTypes: list[str] = []
    definition: str | None = None


class TripleObjectIn(BaseModel):
    kind: str
    value: str
    language: str = "en"


class TripleIn(BaseModel):
    subject: str
    predicate: str
    object: TripleObjectIn
    user: str


# -- document rendering ------------------------------------------------------

def _term_doc(term: Term) -> dict:
    return {"id": str(term.id), "label": term.label, "language": term.language}


def _source_doc(source: Source) -> dict:
    doc = {"kind": source.kind, "name": source.name}
    if source.release is not None:
        doc["release"] = source.release
    return doc


def _prov_doc(prov: Provenance) -> dict:
    return {
        "source": _source_doc(prov.source),
        "status": prov.status,
        "timestamp": format_ts(prov.timestamp),
    }


def _object_doc(store: Store, triple: Triple) -> dict:
    obj = triple.object
    if obj.kind == "term":
        return {"kind": "term", **_term_doc(store.state.terms[obj.id])}
    return {"kind": "concept", "id": str(obj.id), "label": store.preferred_label(obj.id)}


def _triple_doc(store: Store, triple: Triple) -> dict:
    return {
        "id": str(triple.id),
        "subject": {"id": str(triple.subject), "label": store.preferred_label(triple.subject)},
        "predicate": {"id": str(triple.predicate), "label": store.preferred_label(triple.predicate)},
        "object": _object_doc(store, triple),
        "provenance": [_prov_doc(p) for p in triple.provenance],
    }


def _concept_doc(store: Store, concept: Concept) -> dict:
    state = store.state
    synonyms = sorted(
        (_term_doc(state.terms[t]) for t in concept.synonyms),
        key=lambda d: (fold(d["label"]), d["language"]),
    )
    return {
        "id": str(concept.id),
        "preferred": _term_doc(state.terms[concept.preferred]),
        "synonyms": synonyms,
        "semanticTypes": sorted(concept.types),
        "definition": concept.definition,
        "triples": [_triple_doc(store, t) for t in store.triples_about(concept.id, role="any")],
    }


def create_app(store: Store) -> FastAPI:
    app = FastAPI(title="conceptwiki", docs_url=None, redoc_url=None)

    origins = [o.strip() for o in os.environ.get("CW_CORS_ORIGINS", "*").split(",") if o.strip()]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiFail)
    async def _on_fail(request: Request, exc: ApiFail):
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def _on_validation(request: Request, exc: RequestValidationError):
        return _error_response(400, "invalid_body", str(exc.errors()[:1]))

    @app.exception_handler(StarletteHTTPException)
    async def _on_http(request: Request, exc: StarletteHTTPException):
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "http_error")
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.exception_handler(Exception)
    async def _on_crash(request: Request, exc: Exception):
        return _error_response(500, "internal_error", "internal server error")

    @app.get("/concepts")
    def search(q: str = "", lang: str | None = None, limit: int = 20):
        if not q.strip():
            raise ApiFail(400, "invalid_query", "query parameter q must be non-empty")
        limit = max(1, min(limit, 100))
        hits = store.find_by_synonym(q, language=lang, exact=False, limit=limit)
        out = []
        for concept_id in hits:
            concept = store.get_concept(concept_id)
            out.append(
                {
                    "id": str(concept_id),
                    "preferred": store.preferred_label(concept_id),
                    "semanticTypes": sorted(concept.types),
                    "matchedSynonym": store.matched_synonym(concept_id, q, lang),
                }
            )
        return out

    @app.get("/concepts/{concept_id}")
    def concept_page(concept_id: str):
        cid = _parse_uuid(concept_id, "concept id")
        try:
            concept = store.get_concept(cid)
        except UnknownEntityError:
            raise ApiFail(404, "unknown_concept", f"no concept {cid}") from None
        return _concept_doc(store, concept)

    @app.post("/concepts", status_code=201)
    def create_concept(body: ConceptIn):
        if not body.preferred.strip():
            raise ApiFail(400, "invalid_body", "preferred label must be non-empty")
        if not body.semanticTypes:
            raise ApiFail(400, "invalid_body", "semanticTypes must be non-empty")
        try:
            concept = store.put_concept(
                Term.of(body.preferred, body.language),
                types=body.semanticTypes,
                definition=body.definition,
            )
        except StoreError as exc:
            raise ApiFail(400, "invalid_body", str(exc)) from None
        return _concept_doc(store, concept)

    @app.post("/triples")
    def create_triple(body: TripleIn, response: Response):
        user = body.user.strip()
        if not user:
            raise ApiFail(400, "invalid_body", "user must be non-empty")
        subject = _parse_uuid(body.subject, "subject")
        predicate = _parse_uuid(body.predicate, "predicate")
        if not store.has_concept(subject):
            raise ApiFail(404, "unknown_concept", f"no subject concept {subject}")
        if not store.has_concept(predicate):
            raise ApiFail(404, "unknown_concept", f"no predicate concept {predicate}")
        if "Relation" not in store.get_concept(predicate).types:
            raise ApiFail(422, "invalid_predicate", "predicate concept is not typed Relation")
        obj: UUID | Term
        if body.object.kind == "concept":
            obj = _parse_uuid(body.object.value, "object")
            if not store.has_concept(obj):
                raise ApiFail(404, "unknown_concept", f"no object concept {obj}")
        elif body.object.kind == "literal":
            if not body.object.value.strip():
                raise ApiFail(400, "invalid_body", "literal object value must be non-empty")
            obj = Term.of(body.object.value, body.object.language)
        else:
            raise ApiFail(400, "invalid_body", f"object kind must be concept or literal, got {body.object.kind!r}")
        outcome = store.assert_triple(subject, predicate, obj, Source.user(user))
        response.status_code = 201 if outcome.created else 200
        return _triple_doc(store, outcome.triple)

    @app.get("/concepts/{concept_id}/rdf")
    def concept_rdf(concept_id: str, format: str = "ntriples"):
        cid = _parse_uuid(concept_id, "concept id")
        if format not in FORMATS:
            raise ApiFail(400, "invalid_format", f"format must be one of {'/'.join(FORMATS)}")
        try:
            body = export_concept(store, cid, fmt=format)
        except UnknownEntityError:
            raise ApiFail(404, "unknown_concept", f"no concept {cid}") from None
        return Response(content=body, media_type=MEDIA_TYPES[format])

    @app.get("/users/{name}/triples")
    def user_triples(name: str):
        out = []
        for triple, prov in store.user_triples(name):
            doc = _triple_doc(store, triple)
            doc["status"] = prov.status
            doc["timestamp"] = _prov_doc(prov)["timestamp"]
            out.append(doc)
        return out

    return app
