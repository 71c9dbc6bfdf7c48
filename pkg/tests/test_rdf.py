import re
from uuid import UUID

import pytest
from hypothesis import given, strategies as st

from conceptwiki.ids import mint_id
from conceptwiki.importer import match_concept
from conceptwiki.model import Source, Term
from conceptwiki.rdf import (
    MEDIA_TYPES,
    TURTLE_PREFIX,
    URI_BASE,
    escape_literal,
    export_all,
    export_concept,
    uri_for,
)
from conceptwiki.store import UnknownEntityError

import oracles

USER = Source.user("J. Bloggs")
_STRING_RE = re.compile(r'\A(?:[^"\\\n\r]|\\["\\nrt]|\\u[0-9a-fA-F]{4}|\\U[0-9a-fA-F]{8})*\Z')


def assert_uuid_uri(token: str) -> UUID:
    assert token.startswith(URI_BASE), token
    return UUID(token[len(URI_BASE):])


# -- building blocks -----------------------------------------------------------

def test_uri_is_base_plus_uuid():
    cid = mint_id("cw-enzyme-concept", "1.1.1.1")
    assert uri_for(cid) == f"http://www.conceptwiki.org/concept/{cid}"
    assert assert_uuid_uri(uri_for(cid)) == cid


def test_escape_touches_only_the_five_escapable_characters():
    assert escape_literal('say "hi"\n\tback\\slash\r') == 'say \\"hi\\"\\n\\tback\\\\slash\\r'
    assert escape_literal("β-alanine & <tags> 'quotes'") == "β-alanine & <tags> 'quotes'"


@given(st.text(max_size=200))
def test_escaped_literals_fit_the_grammar_and_round_trip(text):
    escaped = escape_literal(text)
    assert _STRING_RE.match(escaped)
    assert oracles.unescape(escaped) == text


def test_unknown_format_or_style_is_rejected(imported):
    cid = match_concept(imported, "1.1.1.1")
    with pytest.raises(ValueError):
        export_concept(imported, cid, fmt="rdfxml")
    with pytest.raises(ValueError):
        export_concept(imported, cid, object_style="inline")
    with pytest.raises(UnknownEntityError):
        export_concept(imported, mint_id())
    assert set(MEDIA_TYPES) == {"ntriples", "turtle"}


# -- N-Triples output ----------------------------------------------------------

def test_concept_export_is_valid_sorted_ntriples(imported):
    cid = match_concept(imported, "1.1.1.1")
    out = export_concept(imported, cid)
    assert oracles.validate_ntriples(out) == []
    lines = out.splitlines(keepends=True)
    assert lines == sorted(lines)
    assert len(lines) == len(imported.triples_about(cid, role="any"))
    assert f"<{uri_for(cid)}>" in out


def test_literal_objects_carry_language_tags(imported):
    cid = match_concept(imported, "1.1.1.1")
    out = export_concept(imported, cid)
    assert '"Aldehyde reductase"@en' in out
    assert '"1.1.1.1"@zxx' in out
    assert '"SwissProt:P07327"@zxx' in out


def test_every_uri_in_a_full_export_ends_in_a_uuid(imported):
    text = "".join(export_all(imported))
    statements = oracles.parse_ntriples(text)
    assert len(statements) == len(imported.state.triples) == 33
    for subject, predicate, obj in statements:
        assert_uuid_uri(f"<{subject}>"[1:-1])
        assert_uuid_uri(f"<{predicate}>"[1:-1])
        if obj.startswith("http"):
            assert_uuid_uri(obj)


def test_full_export_has_no_duplicate_statements_and_groups_subjects(imported):
    lines = list(export_all(imported))
    assert len(lines) == len(set(lines))
    subjects = [line.split(" ", 1)[0] for line in lines]
    seen_blocks = []
    for s in subjects:
        if not seen_blocks or seen_blocks[-1] != s:
            seen_blocks.append(s)
    assert len(seen_blocks) == len(set(seen_blocks))  # each subject appears in one run


def test_export_is_deterministic(imported):
    assert list(export_all(imported)) == list(export_all(imported))
    cid = match_concept(imported, "1.1.1.2")
    assert export_concept(imported, cid) == export_concept(imported, cid)


def test_concept_with_no_triples_exports_nothing(store):
    c = store.put_concept(Term.of("lonely"), types=["Chemical"])
    assert export_concept(store, c.id) == ""
    assert export_concept(store, c.id, fmt="turtle") == ""
    assert list(export_all(store)) == []


def test_object_role_statements_are_included(imported):
    enzyme_type = imported.semantic_type_concept("Enzyme")
    out = export_concept(imported, enzyme_type)
    # every imported active enzyme points at the type concept
    assert out.count(f"<{uri_for(enzyme_type)}> .") == 3
    for line in out.splitlines():
        assert line.endswith(f"<{uri_for(enzyme_type)}> .")


# -- resource style ------------------------------------------------------------

def test_resource_style_replaces_literals_with_labelled_uris(imported):
    cid = match_concept(imported, "1.1.1.2")
    out = export_concept(imported, cid, object_style="resource")
    assert oracles.validate_ntriples(out) == []
    assert '"' in out  # labels still present, via companions
    label_predicate = mint_id("cw-predicate", "has label")
    term_id = Term.of("Zn(2+)", "en").id
    assert f"<{uri_for(term_id)}> <{uri_for(label_predicate)}> \"Zn(2+)\"@en .\n" in out
    for _, _, obj in oracles.parse_ntriples(out):
        if obj.startswith("http"):
            assert_uuid_uri(obj)


def test_resource_style_labels_every_referenced_term_once(imported):
    lines = list(export_all(imported, object_style="resource"))
    label_predicate = f"<{uri_for(mint_id('cw-predicate', 'has label'))}>"
    term_ids = {
        t.object.id for t in imported.state.triples.values() if t.object.kind == "term"
    }
    companion_lines = [l for l in lines if label_predicate in l]
    assert len(companion_lines) == len(term_ids)  # shared terms are labelled once
    main_lines = [l for l in lines if label_predicate not in l]
    assert len(main_lines) == len(imported.state.triples)
    assert not any('"' in l for l in main_lines)


# -- withdrawn filtering -------------------------------------------------------

def test_withdrawn_triples_are_excluded_by_default(imported):
    from conftest import ENZYME
    cid = match_concept(imported, "1.1.1.1")
    synonym = imported.predicate_id("has synonym")
    triple = imported.assert_triple(cid, synonym, Term.of("ADH", "en"), USER).triple
    imported.withdraw_provenance(triple.id, ENZYME)
    imported.withdraw_provenance(triple.id, USER)

    assert '"ADH"' not in export_concept(imported, cid)
    assert '"ADH"' in export_concept(imported, cid, include_withdrawn=True)
    assert not any('"ADH"' in l for l in export_all(imported))
    assert any('"ADH"' in l for l in export_all(imported, include_withdrawn=True))


def test_half_withdrawn_triples_still_export(imported):
    cid = match_concept(imported, "1.1.1.1")
    synonym = imported.predicate_id("has synonym")
    triple = imported.assert_triple(cid, synonym, Term.of("ADH", "en"), USER).triple
    imported.withdraw_provenance(triple.id, USER)  # the authority flag remains
    assert '"ADH"' in export_concept(imported, cid)


# -- Turtle --------------------------------------------------------------------

def test_turtle_emits_one_prefix_then_prefixed_statements(imported):
    chunks = list(export_all(imported, fmt="turtle"))
    assert chunks[0] == TURTLE_PREFIX
    assert TURTLE_PREFIX.startswith("@prefix cw: <http://www.conceptwiki.org/concept/>")
    body = chunks[1:]
    assert all(chunk.startswith("cw:") for chunk in body)
    assert len(body) == 33
    assert "".join(chunks).count("@prefix") == 1


def test_turtle_concept_export_matches_ntriples_statements(imported):
    cid = match_concept(imported, "1.1.1.5")
    turtle = export_concept(imported, cid, fmt="turtle")
    ntriples = export_concept(imported, cid)
    assert turtle.startswith(TURTLE_PREFIX)
    as_uris = turtle[len(TURTLE_PREFIX):].replace("cw:", URI_BASE)
    # converting prefixed names back to full URIs yields the N-Triples form
    def wrap(line):
        parts = line.split(" ")
        return " ".join(
            f"<{p}>" if p.startswith("http") else p for p in parts
        )
    assert "".join(wrap(l) + "\n" for l in as_uris.splitlines()) == ntriples
