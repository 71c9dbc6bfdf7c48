"""A concept wiki backend: UUID-keyed concepts, terms, and provenance-tracked
triples, fed by enzyme flat-file imports and served as RDF and JSON.

The public surface re-exported here is the supported API; module paths may
shuffle underneath it.
"""

from conceptwiki.ec import classify_ec, validate_ec
from conceptwiki.enzyme import (
    CrossRef,
    EnzymeRecord,
    IntermediateDoc,
    ParseIssue,
    ParseResult,
    SchemaError,
    parse_flat_file,
    records_to_xml,
    xml_to_records,
)
from conceptwiki.ids import CANONICAL_ID_RE, is_canonical_id, mint_id, parse_id
from conceptwiki.importer import (
    AmbiguousEcError,
    Assertion,
    ImportPlan,
    ImportReport,
    StalePlanError,
    apply_import,
    derive_assertions,
    match_concept,
    plan_import,
)
from conceptwiki.model import (
    Concept,
    Provenance,
    SEMANTIC_TYPES,
    Source,
    Term,
    Triple,
    TripleObject,
)
from conceptwiki.rdf import escape_literal, export_all, export_concept, uri_for
from conceptwiki.store import PREDICATES, Store, StoreError, UnknownEntityError, fold

__version__ = "0.1.0"

__all__ = [
    "AmbiguousEcError",
    "Assertion",
    "CANONICAL_ID_RE",
    "Concept",
    "CrossRef",
    "EnzymeRecord",
    "ImportPlan",
    "ImportReport",
    "IntermediateDoc",
    "PREDICATES",
    "ParseIssue",
    "ParseResult",
    "Provenance",
    "SEMANTIC_TYPES",
    "SchemaError",
    "Source",
    "StalePlanError",
    "Store",
    "StoreError",
    "Term",
    "Triple",
    "TripleObject",
    "UnknownEntityError",
    "apply_import",
    "classify_ec",
    "derive_assertions",
    "escape_literal",
    "export_all",
    "export_concept",
    "fold",
    "is_canonical_id",
    "match_concept",
    "mint_id",
    "parse_flat_file",
    "parse_id",
    "plan_import",
    "records_to_xml",
    "uri_for",
    "validate_ec",
    "xml_to_records",
    "__version__",
]
