"""Streaming N-Triples reader and writer."""

from __future__ import annotations

import enum
import io
import re
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Optional, Union

from .model import Dictionary, Term, TermKind, TripleStore

_UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
_IRIREF = r"<((?:[^\x00-\x20<>\"{}|^`\\]|" + _UCHAR + r")*)>"
_BNODE = r"_:([A-Za-z0-9_\u00C0-\uFFFF](?:[A-Za-z0-9_.\-\u00B7\u00C0-\uFFFF]*[A-Za-z0-9_\-\u00B7\u00C0-\uFFFF])?)"
_ECHAR = r"\\[tbnrf\"'\\]"
_LITERAL = (
    r"(\"(?:[^\"\\\n\r]|" + _ECHAR + "|" + _UCHAR + r")*\""
    r"(?:\^\^<(?:[^\x00-\x20<>\"{}|^`\\]|" + _UCHAR + r")*>|@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)?)"
)

_WS = r"[ \t]*"
_LINE = re.compile(
    "^" + _WS
    + "(?:" + _IRIREF + "|" + _BNODE + ")" + _WS
    + _IRIREF + _WS
    + "(?:" + _IRIREF + "|" + _BNODE + "|" + _LITERAL + ")" + _WS
    + r"\." + _WS + "(?:#.*)?$"
)


class Strictness(enum.Enum):
    STRICT = "strict"
    LENIENT = "lenient"


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    line_number: int
    message: str
    severity: Severity

    def __str__(self):
        return f"line {self.line_number}: {self.severity.value}: {self.message}"


class NTriplesParseError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


class CorruptStoreError(RuntimeError):
    """A triple refers to a term id the dictionary does not know."""


def parse_line(line: str) -> Optional[tuple]:
    """Parse one N-Triples line into Terms, ``None`` for blank/comment lines.

    Raises ``ValueError`` for malformed lines.
    """
    stripped = line.strip(" \t\r\n")
    if not stripped or stripped.startswith("#"):
        return None
    m = _LINE.match(stripped)
    if m is None:
        raise ValueError("malformed triple")
    s_iri, s_bn, p_iri, o_iri, o_bn, o_lit = m.groups()
    s = Term(TermKind.IRI, s_iri) if s_iri is not None else Term(TermKind.BLANK, s_bn)
    if not p_iri:
        raise ValueError("empty predicate IRI")
    p = Term(TermKind.IRI, p_iri)
    if o_iri is not None:
        o = Term(TermKind.IRI, o_iri)
    elif o_bn is not None:
        o = Term(TermKind.BLANK, o_bn)
    else:
        o = Term(TermKind.LITERAL, o_lit)
    return s, p, o


def parse_ntriples(
    stream: Union[BinaryIO, bytes, str],
    dictionary: Dictionary,
    strictness: Strictness = Strictness.STRICT,
) -> tuple[list, list]:
    """Parse N-Triples into encoded triples.

    ``stream`` is a binary file object, raw bytes, or a path.  Returns the
    triples in input order (duplicates kept) and the diagnostics.
    """
    if isinstance(stream, bytes):
        stream = io.BytesIO(stream)
    elif isinstance(stream, str):
        with open(stream, "rb") as fh:
            return parse_ntriples(fh, dictionary, strictness)

    triples, diagnostics = [], []
    for number, raw in enumerate(stream, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            problem = f"invalid UTF-8: {exc.reason}"
            parsed = None
        else:
            try:
                parsed = parse_line(line)
                problem = None
            except ValueError as exc:
                problem = str(exc) or "malformed triple"
                parsed = None
        if problem is not None:
            if strictness is Strictness.STRICT:
                raise NTriplesParseError(ParseDiagnostic(number, problem, Severity.ERROR))
            diagnostics.append(ParseDiagnostic(number, problem, Severity.WARNING))
            continue
        if parsed is not None:
            triples.append(dictionary.encode_triple(*parsed))
    return triples, diagnostics


def load_store(paths: Iterable[str], strictness=Strictness.STRICT, dictionary=None):
    """Parse files into a fresh store; returns ``(store, diagnostics)``."""
    store = TripleStore(dictionary)
    diagnostics = []
    for path in paths:
        triples, diags = parse_ntriples(path, store.dictionary, strictness)
        store.insert(triples)
        diagnostics.extend(diags)
    return store, diagnostics


def format_triple(t, dictionary: Dictionary) -> str:
    try:
        s, p, o = dictionary.decode_triple(t)
    except KeyError as exc:
        raise CorruptStoreError(str(exc)) from None
    return f"{s.n3()} {p.n3()} {o.n3()} .\n"


def write_ntriples(triples, dictionary: Dictionary, sorted: bool = False, out: Optional[BinaryIO] = None) -> bytes:
    """Serialize triples; ``sorted`` orders lines byte-wise for canonical output.

    Returns the bytes, and also writes them to ``out`` when given.
    """
    lines = [format_triple(t, dictionary).encode("utf-8") for t in triples]
    if sorted:
        lines.sort()
    data = b"".join(lines)
    if out is not None:
        out.write(data)
    return data
