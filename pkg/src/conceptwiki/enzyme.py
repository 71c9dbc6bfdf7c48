"""ENZYME flat-file parsing and the XML interchange document.

The flat file is line-oriented: a two-character line code, three spaces,
then content. ``//`` closes a record. Long values wrap across lines of the
same code and are joined until the accumulated text ends with a period
(the format's continuation convention for DE and AN lines).

Parsing is lenient where the damage is local: a bad record is reported and
skipped, an unknown line code is a warning. It is strict where the damage
is global: bytes that are not UTF-8 abort with the byte offset, and a
record still open at end of input is an error naming its EC number.

The XML document is the handoff between parsing and import planning. It
round-trips losslessly through ``records_to_xml`` / ``xml_to_records``.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
import xml.parsers.expat
from dataclasses import dataclass
from pathlib import Path

from conceptwiki.ec import classify_ec

RECORD_STATUSES = ("active", "deleted", "transferred")

_KNOWN_CODES = frozenset({"ID", "DE", "AN", "CA", "CF", "CC", "PR", "DR"})
_EC_IN_TEXT = re.compile(r"\d+\.\d+\.\d+\.n?\d+")


class SchemaError(Exception):
    """An XML document that does not fit the interchange grammar."""


@dataclass(frozen=True)
class CrossRef:
    db: str
    acc: str
    entry: str = ""


@dataclass(frozen=True)
class EnzymeRecord:
    ec: str
    status: str = "active"
    recommended_name: str | None = None
    alt_names: tuple[str, ...] = ()
    activities: tuple[str, ...] = ()
    cofactors: tuple[str, ...] = ()
    comments: tuple[str, ...] = ()
    cross_refs: tuple[CrossRef, ...] = ()
    transferred_to: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status not in RECORD_STATUSES:
            raise ValueError(f"unknown record status {self.status!r}")
        if self.status == "active" and not self.recommended_name:
            raise ValueError(f"active record {self.ec} has no recommended name")
        if self.status != "active" and self.recommended_name is not None:
            raise ValueError(f"{self.status} record {self.ec} must not carry a name")
        for label in ("alt_names", "activities", "cofactors", "comments", "cross_refs", "transferred_to"):
            values = getattr(self, label)
            if any(not v for v in values):
                raise ValueError(f"record {self.ec} has an empty entry in {label}")
            if len(set(values)) != len(values):
                raise ValueError(f"record {self.ec} has duplicate entries in {label}")


@dataclass(frozen=True)
class ParseIssue:
    severity: str  # "error" | "warning"
    line_no: int
    message: str
    ec: str | None = None


@dataclass
class ParseResult:
    records: tuple[EnzymeRecord, ...] = ()
    issues: tuple[ParseIssue, ...] = ()

    @property
    def errors(self) -> tuple[ParseIssue, ...]:
        return tuple(i for i in self.issues if i.severity == "error")

    @property
    def warnings(self) -> tuple[ParseIssue, ...]:
        return tuple(i for i in self.issues if i.severity == "warning")


@dataclass(frozen=True)
class IntermediateDoc:
    release: str
    records: tuple[EnzymeRecord, ...]


class _Wrap:
    """Accumulates period-terminated values that wrap across lines."""

    def __init__(self):
        self.parts: list[str] = []
        self.done: list[str] = []

    def feed(self, content: str) -> None:
        self.parts.append(content)
        if content.endswith("."):
            self.done.append(" ".join(self.parts))
            self.parts.clear()

    def open(self) -> bool:
        return bool(self.parts)

    def flush(self) -> list[str]:
        if self.parts:
            self.done.append(" ".join(self.parts))
            self.parts.clear()
        out = self.done
        self.done = []
        return out


class _RecordBuilder:
    def __init__(self, ec: str, line_no: int):
        self.ec = ec
        self.line_no = line_no
        self.de = _Wrap()
        self.an = _Wrap()
        self.ca_lines: list[str] = []
        self.cf_lines: list[str] = []
        self.comments: list[str] = []
        self.xrefs: list[CrossRef] = []


def _split_activities(joined: str) -> list[str]:
    # multi-reaction entries number their reactions "(1) ... (2) ..."
    if not joined.startswith("(1) "):
        return [joined]
    parts: list[str] = []
    rest = joined[4:]
    k = 2
    while True:
        marker = f" ({k}) "
        cut = rest.find(marker)
        if cut == -1:
            parts.append(rest)
            return parts
        parts.append(rest[:cut])
        rest = rest[cut + len(marker):]
        k += 1


def _split_cofactors(joined: str) -> list[str]:
    text = joined.rstrip(".")
    pieces: list[str] = []
    for chunk in text.split(";"):
        pieces.extend(re.split(r"\s+or\s+", chunk))
    return [p for p in (piece.strip() for piece in pieces) if p]


def _strip_period(text: str) -> str:
    return text[:-1] if text.endswith(".") else text


def parse_flat_file(source: bytes | str | Path) -> ParseResult:
    """Parse a flat file given as raw bytes, decoded text, or a path.

    Returns all cleanly parsed records plus a list of issues; record-level
    problems (bad EC, duplicate EC, unterminated block) skip that record
    and keep going.
    """
    if isinstance(source, Path):
        source = source.read_bytes()
    if isinstance(source, bytes):
        try:
            text = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValueError(f"input is not UTF-8 at byte offset {exc.start}") from exc
    else:
        text = source

    records: list[EnzymeRecord] = []
    issues: list[ParseIssue] = []
    seen_ec: set[str] = set()
    builder: _RecordBuilder | None = None
    saw_first_id = False
    skipping = False  # inside a record that already failed

    def issue(severity: str, line_no: int, message: str, ec: str | None = None) -> None:
        issues.append(ParseIssue(severity, line_no, message, ec))

    def dedup(values) -> tuple:
        return tuple(v for v in dict.fromkeys(values) if v)

    def finish(b: _RecordBuilder, line_no: int) -> None:
        if b.ec in seen_ec:
            issue("error", b.line_no, f"duplicate record for EC {b.ec}; keeping the first", b.ec)
            return
        if b.de.open():
            issue("warning", line_no, f"DE text of {b.ec} does not end with a period", b.ec)
        if b.an.open():
            issue("warning", line_no, f"AN text of {b.ec} does not end with a period", b.ec)
        de_text = " ".join(b.de.flush())
        status = "active"
        name: str | None = None
        transferred: tuple[str, ...] = ()
        if de_text == "Deleted entry.":
            status = "deleted"
        elif de_text.startswith("Transferred entry:"):
            status = "transferred"
            transferred = dedup(_EC_IN_TEXT.findall(de_text))
            if not transferred:
                issue("warning", b.line_no, f"transferred entry {b.ec} names no target", b.ec)
        elif de_text:
            name = _strip_period(de_text)
        else:
            issue("error", b.line_no, f"record {b.ec} has no DE line", b.ec)
            return

        activities: tuple[str, ...] = ()
        if b.ca_lines:
            joined = " ".join(b.ca_lines)
            activities = dedup(_strip_period(a.strip()) for a in _split_activities(joined))
        cofactors: tuple[str, ...] = ()
        if b.cf_lines:
            cofactors = dedup(_split_cofactors(" ".join(b.cf_lines)))

        try:
            record = EnzymeRecord(
                ec=b.ec,
                status=status,
                recommended_name=name,
                alt_names=dedup(_strip_period(n) for n in b.an.flush()),
                activities=activities,
                cofactors=cofactors,
                comments=dedup(b.comments),
                cross_refs=dedup(b.xrefs),
                transferred_to=transferred,
            )
        except ValueError as exc:
            issue("error", b.line_no, str(exc), b.ec)
            return
        seen_ec.add(b.ec)
        records.append(record)

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if line.strip() == "":
            continue
        if line == "//":
            if builder is not None:
                finish(builder, line_no)
            builder = None
            skipping = False
            continue
        if len(line) < 5 or line[2:5] != "   ":
            if saw_first_id:
                issue("warning", line_no, f"unparseable line: {line[:40]!r}")
            continue
        code, content = line[:2], line[5:].strip()
        if code == "ID":
            saw_first_id = True
            if builder is not None:
                issue("error", line_no,
                      f"record {builder.ec} not closed by // before the next ID; dropping it", builder.ec)
                builder = None
            skipping = False
            if classify_ec(content) != "full":
                issue("error", line_no, f"invalid EC number in ID line: {content!r}")
                skipping = True
                continue
            builder = _RecordBuilder(content, line_no)
            continue
        if not saw_first_id:
            continue  # free-text header before the first record
        if skipping:
            continue
        if builder is None:
            issue("warning", line_no, f"{code} line outside a record")
            continue
        if code == "DE":
            builder.de.feed(content)
        elif code == "AN":
            builder.an.feed(content)
        elif code == "CA":
            builder.ca_lines.append(content)
        elif code == "CF":
            builder.cf_lines.append(content)
        elif code == "CC":
            if content.startswith("-!-"):
                builder.comments.append(content[3:].strip())
            elif builder.comments:
                builder.comments[-1] = builder.comments[-1] + " " + content
            else:
                issue("warning", line_no, f"CC continuation with no open comment in {builder.ec}", builder.ec)
                builder.comments.append(content)
        elif code == "PR":
            fields = [p.strip() for p in content.split(";") if p.strip()]
            if len(fields) >= 2:
                builder.xrefs.append(CrossRef(db=fields[0], acc=fields[1]))
            else:
                issue("warning", line_no, f"unparseable PR line in {builder.ec}", builder.ec)
        elif code == "DR":
            for item in content.split(";"):
                item = item.strip()
                if not item:
                    continue
                acc, _, entry = item.partition(",")
                builder.xrefs.append(CrossRef(db="SwissProt", acc=acc.strip(), entry=entry.strip()))
        else:
            issue("warning", line_no, f"unknown line code {code!r}")

    if builder is not None:
        issue("error", builder.line_no, f"record {builder.ec} is not closed by // at end of input", builder.ec)

    return ParseResult(records=tuple(records), issues=tuple(issues))


# -- XML interchange ---------------------------------------------------------

def records_to_xml(doc: IntermediateDoc) -> bytes:
    root = ET.Element("enzymeImport", {"release": doc.release})
    for rec in doc.records:
        enzyme = ET.SubElement(root, "enzyme", {"ec": rec.ec, "status": rec.status})
        for target in rec.transferred_to:
            ET.SubElement(enzyme, "transferredTo").text = target
        if rec.recommended_name is not None:
            ET.SubElement(enzyme, "name").text = rec.recommended_name
        for value in rec.alt_names:
            ET.SubElement(enzyme, "synonym").text = value
        for value in rec.activities:
            ET.SubElement(enzyme, "activity").text = value
        for value in rec.cofactors:
            ET.SubElement(enzyme, "cofactor").text = value
        for value in rec.comments:
            ET.SubElement(enzyme, "comment").text = value
        for xref in rec.cross_refs:
            ET.SubElement(enzyme, "xref", {"db": xref.db, "acc": xref.acc, "entry": xref.entry})
    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n").encode("utf-8")


def _parse_with_lines(data: bytes) -> tuple[ET.Element, dict[int, int]]:
    """ElementTree parse that remembers each element's source line."""
    builder = ET.TreeBuilder()
    lines: dict[int, int] = {}
    parser = xml.parsers.expat.ParserCreate("UTF-8")

    def start(tag, attrs):
        elem = builder.start(tag, attrs)
        lines[id(elem)] = parser.CurrentLineNumber

    parser.StartElementHandler = start
    parser.EndElementHandler = lambda tag: builder.end(tag)
    parser.CharacterDataHandler = lambda text: builder.data(text)
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise SchemaError(f"not well-formed XML: {exc}") from exc
    root = builder.close()
    return root, lines


_ENZYME_CHILD_TAGS = ("transferredTo", "name", "synonym", "activity", "cofactor", "comment", "xref")


def xml_to_records(data: bytes) -> IntermediateDoc:
    """Read an interchange document back, validating it against the grammar.

    Any violation raises SchemaError naming the element path (for example
    ``/enzymeImport/enzyme[2]@ec``) and its line number.
    """
    root, lines = _parse_with_lines(data)

    def fail(path: str, elem: ET.Element, message: str) -> None:
        raise SchemaError(f"{path} (line {lines.get(id(elem), 0)}): {message}")

    if root.tag != "enzymeImport":
        fail(f"/{root.tag}", root, "root element must be enzymeImport")
    release = root.get("release")
    if release is None:
        fail("/enzymeImport@release", root, "missing release attribute")
    if root.text and root.text.strip():
        fail("/enzymeImport", root, "unexpected text content")

    records: list[EnzymeRecord] = []
    seen_ec: set[str] = set()
    for i, enzyme in enumerate(root, start=1):
        path = f"/enzymeImport/enzyme[{i}]"
        if enzyme.tag != "enzyme":
            fail(f"/enzymeImport/{enzyme.tag}[{i}]", enzyme, "only enzyme elements are allowed here")
        ec = enzyme.get("ec")
        if ec is None or classify_ec(ec) != "full":
            fail(f"{path}@ec", enzyme, f"missing or invalid EC number: {ec!r}")
        if ec in seen_ec:
            fail(f"{path}@ec", enzyme, f"duplicate EC number {ec}")
        seen_ec.add(ec)
        status = enzyme.get("status")
        if status not in RECORD_STATUSES:
            fail(f"{path}@status", enzyme, f"status must be one of {'/'.join(RECORD_STATUSES)}, got {status!r}")

        name: str | None = None
        values: dict[str, list] = {tag: [] for tag in _ENZYME_CHILD_TAGS}
        counters: dict[str, int] = {tag: 0 for tag in _ENZYME_CHILD_TAGS}
        for child in enzyme:
            if child.tag not in _ENZYME_CHILD_TAGS:
                fail(f"{path}/{child.tag}", child, "unknown element")
            counters[child.tag] += 1
            child_path = f"{path}/{child.tag}[{counters[child.tag]}]"
            if len(child):
                fail(child_path, child, "unexpected nested elements")
            if child.tag == "xref":
                if child.text and child.text.strip():
                    fail(child_path, child, "xref carries attributes, not text")
                db, acc = child.get("db"), child.get("acc")
                if not db:
                    fail(f"{child_path}@db", child, "missing db attribute")
                if not acc:
                    fail(f"{child_path}@acc", child, "missing acc attribute")
                values["xref"].append(CrossRef(db=db, acc=acc, entry=child.get("entry", "")))
                continue
            text = child.text or ""
            if not text.strip():
                fail(child_path, child, "empty element")
            if child.tag == "transferredTo" and classify_ec(text) == "invalid":
                fail(child_path, child, f"invalid EC number: {text!r}")
            if child.tag == "name":
                if name is not None:
                    fail(child_path, child, "more than one name element")
                name = text
            else:
                values[child.tag].append(text)
        if status != "transferred" and values["transferredTo"]:
            fail(f"{path}/transferredTo[1]", enzyme, f"transferredTo inside a {status} record")
        try:
            records.append(
                EnzymeRecord(
                    ec=ec,
                    status=status,
                    recommended_name=name,
                    alt_names=tuple(values["synonym"]),
                    activities=tuple(values["activity"]),
                    cofactors=tuple(values["cofactor"]),
                    comments=tuple(values["comment"]),
                    cross_refs=tuple(values["xref"]),
                    transferred_to=tuple(values["transferredTo"]),
                )
            )
        except ValueError as exc:
            fail(path, enzyme, str(exc))
    return IntermediateDoc(release=release, records=tuple(records))
