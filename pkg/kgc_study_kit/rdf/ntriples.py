"""
N-Triples reader and canonical writer.

The reader follows the W3C N-Triples grammar line by line and is
all-or-nothing: the first malformed statement raises RdfSyntaxError with its
1-based line and column, and no graph is returned.

The writer is canonical: one triple per line, lines sorted by code point,
LF line endings, xsd:string literals without an explicit datatype.
"""

import re

from kgc_study_kit.errors import RdfSyntaxError, TermError
from kgc_study_kit.rdf.terms import (
    BLANK_NODE_LABEL,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    RdfGraph,
    RdfTerm,
    RdfTriple,
)

_UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
IRIREF_RE = re.compile(r"<((?:[^\x00-\x20<>\"{}|^`\\]|" + _UCHAR + r")*)>")
BLANK_NODE_RE = re.compile("_:(" + BLANK_NODE_LABEL + ")")
STRING_RE = re.compile(r'"((?:[^"\\\n\r]|\\[tbnrf"\'\\]|' + _UCHAR + r')*)"')
LANGTAG_RE = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
_ESCAPE_RE = re.compile(r"\\(?:([tbnrf\"'\\])|u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8}))")
_LINE_SPLIT_RE = re.compile(r"\r\n|\n|\r")

_ECHAR_DECODE = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
                 '"': '"', "'": "'", "\\": "\\"}
_ECHAR_ENCODE = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r",
                 "\t": "\\t", "\b": "\\b", "\f": "\\f"}
_IRI_FORBIDDEN = set('<>"{}|^`\\')


def unescape(text: str, line: int = 0, column: int = 0) -> str:
    """Decode ECHAR and UCHAR escapes (\\n, \\uXXXX, \\UXXXXXXXX)."""
    def _replace(m):
        if m.group(1):
            return _ECHAR_DECODE[m.group(1)]
        code = int(m.group(2) or m.group(3), 16)
        if code > 0x10FFFF or 0xD800 <= code <= 0xDFFF:
            raise RdfSyntaxError(line, column + m.start() + 1, f"invalid code point U+{code:X}")
        return chr(code)

    if "\\" not in text:
        return text
    return _ESCAPE_RE.sub(_replace, text)


class LineScanner:
    """Cursor over one line of input with 1-based error positions."""

    def __init__(self, text: str, line: int, offset: int = 0):
        self.text = text
        self.line = line
        self.pos = offset

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, n: int = 1) -> str:
        return self.text[self.pos:self.pos + n]

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def match(self, regex):
        m = regex.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def error(self, message: str, pos: int | None = None):
        raise RdfSyntaxError(self.line, (self.pos if pos is None else pos) + 1, message)

    def at_comment_or_end(self) -> bool:
        return self.at_end() or self.text[self.pos] == "#"


def _read_iri(sc: LineScanner) -> Iri:
    start = sc.pos
    m = sc.match(IRIREF_RE)
    if not m:
        sc.error("expected IRI reference")
    try:
        return Iri(unescape(m.group(1), sc.line, start + 1))
    except TermError as e:
        sc.error(str(e), start)


def _read_blank(sc: LineScanner) -> BlankNode:
    m = sc.match(BLANK_NODE_RE)
    if not m:
        sc.error("malformed blank node label")
    return BlankNode(m.group(1))


def _read_literal(sc: LineScanner) -> Literal:
    start = sc.pos
    m = sc.match(STRING_RE)
    if not m:
        sc.error("unterminated or malformed string literal")
    lexical = unescape(m.group(1), sc.line, start + 1)
    if sc.peek() == "@":
        tag = sc.match(LANGTAG_RE)
        if not tag:
            sc.error("malformed language tag")
        return Literal(lexical, language=tag.group(1))
    if sc.peek(2) == "^^":
        sc.pos += 2
        datatype = _read_iri(sc)
        try:
            return Literal(lexical, datatype=datatype)
        except TermError as e:
            sc.error(str(e), start)
    return Literal(lexical)


def _read_subject(sc: LineScanner):
    c = sc.peek()
    if c == "<":
        return _read_iri(sc)
    if c == "_":
        return _read_blank(sc)
    sc.error("subject must be an IRI or a blank node")


def _read_object(sc: LineScanner) -> RdfTerm:
    c = sc.peek()
    if c == "<":
        return _read_iri(sc)
    if c == "_":
        return _read_blank(sc)
    if c == '"':
        return _read_literal(sc)
    sc.error("object must be an IRI, blank node or literal")


def _parse_statement(sc: LineScanner) -> RdfTriple:
    subject = _read_subject(sc)
    sc.skip_ws()
    if sc.peek() != "<":
        sc.error("predicate must be an IRI")
    predicate = _read_iri(sc)
    sc.skip_ws()
    obj = _read_object(sc)
    sc.skip_ws()
    if sc.peek() != ".":
        sc.error("expected '.' at end of statement")
    sc.pos += 1
    sc.skip_ws()
    if not sc.at_comment_or_end():
        sc.error("unexpected content after statement")
    return RdfTriple(subject, predicate, obj)


def parse_ntriples(text: str) -> RdfGraph:
    """Parse an N-Triples document into a graph (duplicates collapse)."""
    if text.startswith("\ufeff"):
        text = text[1:]
    triples = set()
    for line_no, line in enumerate(_LINE_SPLIT_RE.split(text), start=1):
        sc = LineScanner(line, line_no)
        sc.skip_ws()
        if sc.at_comment_or_end():
            continue
        triples.add(_parse_statement(sc))
    return RdfGraph(triples)


# ---------- writer ----------

def _escape_iri(value: str) -> str:
    out = []
    for ch in value:
        if ord(ch) <= 0x20 or ch in _IRI_FORBIDDEN:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def escape_lexical(value: str) -> str:
    out = []
    for ch in value:
        if ch in _ECHAR_ENCODE:
            out.append(_ECHAR_ENCODE[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def term_to_ntriples(term: RdfTerm) -> str:
    if isinstance(term, Iri):
        return f"<{_escape_iri(term.value)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    quoted = f'"{escape_lexical(term.lexical)}"'
    if term.language is not None:
        return f"{quoted}@{term.language}"
    if term.datatype == XSD_STRING:
        return quoted
    return f"{quoted}^^{term_to_ntriples(term.datatype)}"


def triple_to_ntriples(triple: RdfTriple) -> str:
    return (
        f"{term_to_ntriples(triple.subject)} {term_to_ntriples(triple.predicate)} "
        f"{term_to_ntriples(triple.object)} ."
    )


def serialize_ntriples(graph: RdfGraph) -> str:
    lines = sorted(triple_to_ntriples(t) for t in graph)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
