"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written from primary definitions (RFC 4122
name hashing, the N-Triples grammar, the EC number shape) without importing
package internals, so agreement between the two sides is evidence, not
tautology.
"""

from __future__ import annotations

import hashlib
import re

DNS_NAMESPACE = "6ba7b810-9dad-11d1-80b4-00c04fd430c8"


def uuid5_text(namespace: str, name: str) -> str:
    """RFC 4122 version-5 UUID built by hand from SHA-1 over ns-bytes + name."""
    ns_bytes = bytes.fromhex(namespace.replace("-", ""))
    digest = bytearray(hashlib.sha1(ns_bytes + name.encode("utf-8")).digest()[:16])
    digest[6] = (digest[6] & 0x0F) | 0x50  # version 5
    digest[8] = (digest[8] & 0x3F) | 0x80  # RFC 4122 variant
    h = digest.hex()
    return f"{h[:8]}-{h[8:12]}-{h[12:16]}-{h[16:20]}-{h[20:]}"


def derived_id_text(namespace_tag: str, name: str) -> str:
    """The doubly-derived id scheme: DNS -> site root -> tag -> name."""
    root = uuid5_text(DNS_NAMESPACE, "conceptwiki.org")
    tag_ns = uuid5_text(root, namespace_tag)
    return uuid5_text(tag_ns, name)


# -- EC number shapes, as one regex alternation per arity of the dash tail --

_EC_FULL = re.compile(r"[1-9][0-9]*\.[1-9][0-9]*\.[1-9][0-9]*\.n?[1-9][0-9]*\Z")
_EC_PARTIAL = re.compile(
    r"(?:-\.-\.-\.-"
    r"|[1-9][0-9]*\.-\.-\.-"
    r"|[1-9][0-9]*\.[1-9][0-9]*\.-\.-"
    r"|[1-9][0-9]*\.[1-9][0-9]*\.[1-9][0-9]*\.-)\Z"
)


def ec_class(text: str) -> str:
    if _EC_FULL.match(text):
        return "full"
    if _EC_PARTIAL.match(text):
        return "partial"
    return "invalid"


# -- minimal N-Triples checker -----------------------------------------------

_IRI = r"<([A-Za-z][A-Za-z0-9+.-]*:[^\x00-\x20<>\"{}|^`\\]*)>"
_STRING = r'"((?:[^"\\\n\r]|\\["\\nrt]|\\u[0-9a-fA-F]{4}|\\U[0-9a-fA-F]{8})*)"'
_LANG = r"@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*"
_NT_LINE = re.compile(
    rf"{_IRI} {_IRI} (?:{_IRI}|{_STRING}(?:{_LANG}|\^\^{_IRI})?) \.\Z"
)


def validate_ntriples(text: str) -> list[str]:
    """Grammar errors for a whole document, one message per bad line."""
    errors = []
    for no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        if not _NT_LINE.match(line):
            errors.append(f"line {no}: not a valid statement: {line[:80]!r}")
    return errors


def parse_ntriples(text: str) -> list[tuple[str, str, str]]:
    """(subject, predicate, object-token) tuples; raises on grammar errors."""
    out = []
    for no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        m = _NT_LINE.match(line)
        if not m:
            raise ValueError(f"line {no}: not a valid statement")
        subject, predicate = m.group(1), m.group(2)
        obj = m.group(3) if m.group(3) is not None else line.split(" ", 2)[2][:-2].strip()
        out.append((subject, predicate, obj))
    return out


def unescape(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = text[i + 1]
        if nxt == "t":
            out.append("\t")
        elif nxt == "n":
            out.append("\n")
        elif nxt == "r":
            out.append("\r")
        elif nxt == '"':
            out.append('"')
        elif nxt == "\\":
            out.append("\\")
        elif nxt == "u":
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
            continue
        elif nxt == "U":
            out.append(chr(int(text[i + 2 : i + 10], 16)))
            i += 10
            continue
        else:
            raise ValueError(f"unknown escape \\{nxt}")
        i += 2
    return "".join(out)
