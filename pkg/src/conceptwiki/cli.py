"""Operator command line: init, import, export-rdf, serve, search.

Exit codes: 0 success, 2 usage or configuration problems, 3 when an import
hit record-level data errors or ambiguities (clean records are still
applied). Stdout carries data only so RDF and reports can be piped; all
diagnostics go to stderr. The store path may come from the CW_STORE
environment variable instead of the command line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from conceptwiki.enzyme import IntermediateDoc, parse_flat_file, records_to_xml
from conceptwiki.importer import (
    AssertSupported,
    CreateConcept,
    MarkTransferred,
    Withdraw,
    apply_import,
    plan_import,
)
from conceptwiki.model import Source
from conceptwiki.rdf import export_all
from conceptwiki.store import JOURNAL_NAME, Store, StoreError


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message)
        self.exit_code = exit_code


def _resolve_store_path(given: str | None) -> Path:
    path = given or os.environ.get("CW_STORE")
    if not path:
        raise CliError("no store path given and CW_STORE is not set")
    return Path(path)


def _open_store(given: str | None) -> Store:
    path = _resolve_store_path(given)
    if not (path / JOURNAL_NAME).exists():
        raise CliError(f"{path} is not an initialized store (run: cw init {path})")
    try:
        store = Store(path)
    except StoreError as exc:
        raise CliError(str(exc)) from exc
    for warning in store.open_warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return store


def cmd_init(args: argparse.Namespace) -> int:
    path = _resolve_store_path(args.store)
    if (path / JOURNAL_NAME).exists():
        raise CliError(f"store already initialized: {path / JOURNAL_NAME} exists")
    path.mkdir(parents=True, exist_ok=True)
    with Store(path) as store:
        state = store.state
        print(
            f"initialized store at {path} "
            f"({len(state.concepts)} seed concepts, journal seq {state.last_seq})",
            file=sys.stderr,
        )
    return 0


def _plan_summary(plan) -> dict:
    return {
        "would_create": sum(1 for a in plan.actions if isinstance(a, CreateConcept)),
        "would_assert": sum(1 for a in plan.actions if isinstance(a, AssertSupported))
        + sum(len(a.targets) for a in plan.actions if isinstance(a, MarkTransferred)),
        "would_withdraw": sum(1 for a in plan.actions if isinstance(a, Withdraw)),
        "ambiguous_ecs": list(plan.ambiguous_ecs),
        "errors": list(plan.errors),
    }


def cmd_import(args: argparse.Namespace) -> int:
    with _open_store(args.store) as store:
        data_path = Path(args.data)
        if not data_path.is_file():
            raise CliError(f"no such file: {data_path}")
        try:
            result = parse_flat_file(data_path)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        for issue in result.warnings:
            print(f"warning: line {issue.line_no}: {issue.message}", file=sys.stderr)
        for issue in result.errors:
            print(f"error: line {issue.line_no}: {issue.message}", file=sys.stderr)

        doc = IntermediateDoc(release=args.release, records=result.records)
        if args.emit_xml:
            Path(args.emit_xml).write_bytes(records_to_xml(doc))

        authority = Source.authority(args.authority, args.release)
        errors = [f"line {i.line_no}: {i.message}" for i in result.errors]
        plan = plan_import(store, doc, authority, record_errors=errors)

        dirty = bool(plan.errors or plan.ambiguous_ecs)
        if args.dry_run:
            print(json.dumps(_plan_summary(plan), indent=2, sort_keys=True))
            return 3 if dirty else 0

        report = apply_import(store, plan)
        report_json = json.dumps(report.as_json(), indent=2, sort_keys=True)
        if args.report:
            Path(args.report).write_text(report_json + "\n", encoding="utf-8")
        else:
            print(report_json)
        return 3 if dirty else 0


def cmd_export_rdf(args: argparse.Namespace) -> int:
    with _open_store(args.store) as store:
        lines = export_all(
            store,
            fmt=args.format,
            object_style=args.object_style,
            include_withdrawn=args.include_withdrawn,
        )
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.writelines(lines)
        else:
            for line in lines:
                sys.stdout.write(line)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from conceptwiki.api import create_app

    with _open_store(args.store) as store:
        app = create_app(store)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    with _open_store(args.store) as store:
        hits = store.find_by_synonym(args.query, language=args.lang, exact=False, limit=args.limit)
        for concept_id in hits:
            preferred = store.preferred_label(concept_id)
            matched = store.matched_synonym(concept_id, args.query, args.lang)
            print(f"{concept_id}\t{preferred}\t{matched}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cw",
        description="Concept store with enzyme imports, RDF export, and an HTTP service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_init = sub.add_parser("init", help="create and seed a new store")
    p_init.add_argument("store", nargs="?", help="store directory (default: CW_STORE)")
    p_init.set_defaults(func=cmd_init)

    p_import = sub.add_parser("import", help="import an enzyme flat file")
    p_import.add_argument("store", nargs="?", help="store directory (default: CW_STORE)")
    p_import.add_argument("data", help="flat file to import")
    p_import.add_argument("--authority", default="ENZYME", help="authority name for provenance")
    p_import.add_argument("--release", required=True, help="release label for provenance")
    p_import.add_argument("--emit-xml", metavar="PATH", help="also write the intermediate XML here")
    p_import.add_argument("--dry-run", action="store_true", help="plan only; print a summary, change nothing")
    p_import.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")
    p_import.set_defaults(func=cmd_import)

    p_export = sub.add_parser("export-rdf", help="export all triples as RDF")
    p_export.add_argument("store", nargs="?", help="store directory (default: CW_STORE)")
    p_export.add_argument("--format", choices=["ntriples", "turtle"], default="ntriples")
    p_export.add_argument("--object-style", choices=["literal", "resource"], default="literal")
    p_export.add_argument("--include-withdrawn", action="store_true",
                          help="also export triples with no supported provenance")
    p_export.add_argument("--out", metavar="PATH", help="write to a file instead of stdout")
    p_export.set_defaults(func=cmd_export_rdf)

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("store", nargs="?", help="store directory (default: CW_STORE)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    p_search = sub.add_parser("search", help="prefix-search concepts by synonym")
    p_search.add_argument("store", nargs="?", help="store directory (default: CW_STORE)")
    p_search.add_argument("query")
    p_search.add_argument("--lang", help="restrict matching to one language tag")
    p_search.add_argument("--limit", type=int, default=20)
    p_search.set_defaults(func=cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except StoreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 0


if __name__ == "__main__":
    sys.exit(main())
