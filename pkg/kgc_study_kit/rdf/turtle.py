"""
Turtle subset reader (input only).

Supported: @prefix/PREFIX, @base/BASE, prefixed names, the `a` keyword,
predicate lists (;), object lists (,), blank-node labels, [ ... ] blank-node
property lists, short and long strings, language tags, ^^ datatypes, and
numeric / boolean shorthand literals.

Collections, quoted triples, graph blocks and N3 extensions raise
UnsupportedConstruct with the line they start on.
"""

import re
from urllib.parse import urljoin

from kgc_study_kit.errors import RdfSyntaxError, TermError, UnsupportedConstruct
from kgc_study_kit.rdf.ntriples import IRIREF_RE, LANGTAG_RE, unescape
from kgc_study_kit.rdf.terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    BlankNode,
    Iri,
    Literal,
    RdfGraph,
    RdfTriple,
)

_BASE = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF"
    "\uFDF0-\uFFFD\U00010000-\U000EFFFF"
)
_U = _BASE + "_"
_CH = _U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PLX = r"%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%]"

_PN_PREFIX = "[" + _BASE + "](?:[" + _CH + ".]*[" + _CH + "])?"
_PN_LOCAL = (
    "(?:[" + _U + ":0-9]|" + _PLX + ")"
    "(?:(?:[" + _CH + ".:]|" + _PLX + ")*(?:[" + _CH + ":]|" + _PLX + "))?"
)
PNAME_NS_RE = re.compile("(" + _PN_PREFIX + ")?:")
PNAME_RE = re.compile("(" + _PN_PREFIX + ")?:(" + _PN_LOCAL + ")?")
BLANK_RE = re.compile("_:([" + _U + "0-9](?:[" + _CH + ".]*[" + _CH + "])?)")
_LOCAL_ESC_RE = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")

_UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
_ECHAR = r"\\[tbnrf\"'\\]"
_STRING_RES = [
    re.compile(r'"""((?:(?:"|"")?(?:[^"\\]|' + _ECHAR + "|" + _UCHAR + r'))*)"""'),
    re.compile(r"'''((?:(?:'|'')?(?:[^'\\]|" + _ECHAR + "|" + _UCHAR + r"))*)'''"),
    re.compile(r'"((?:[^"\\\n\r]|' + _ECHAR + "|" + _UCHAR + r')*)"'),
    re.compile(r"'((?:[^'\\\n\r]|" + _ECHAR + "|" + _UCHAR + r")*)'"),
]
_DOUBLE_RE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+)")
_DECIMAL_RE = re.compile(r"[+-]?[0-9]*\.[0-9]+")
_INTEGER_RE = re.compile(r"[+-]?[0-9]+")
_BOOLEAN_RE = re.compile(r"(true|false)(?![" + _CH + ":])")
_KEYWORD_RE = re.compile(r"(PREFIX|BASE|GRAPH)(?![" + _CH + ":])", re.IGNORECASE)
_A_RE = re.compile(r"a(?=[\s<\[\"'_(#]|$)")


class _TurtleParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.base: str | None = None
        self.triples: set[RdfTriple] = set()
        self.anon_count = 0
        # labels written in the document; [ ] nodes get genid labels that avoid them
        self.explicit_labels = set(BLANK_RE.findall(text))
        self.anonymous: set[BlankNode] = set()

    # ---------- positions / errors ----------

    def _line_col(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: int | None = None):
        line, col = self._line_col(self.pos if pos is None else pos)
        raise RdfSyntaxError(line, col, message)

    def unsupported(self, construct: str):
        line, _ = self._line_col(self.pos)
        raise UnsupportedConstruct(line, construct)

    # ---------- lexing helpers ----------

    def skip(self):
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c in " \t\r\n":
                self.pos += 1
            elif c == "#":
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl == -1 else nl + 1
            else:
                break

    def peek(self, n: int = 1) -> str:
        return self.text[self.pos:self.pos + n]

    def match(self, regex):
        m = regex.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def expect(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected '{token}'")
        self.pos += len(token)

    def _check_unsupported(self):
        if self.text.startswith("<<", self.pos):
            self.unsupported("quoted triple")
        c = self.peek()
        if c == "(":
            self.unsupported("collection")
        if c == "{":
            self.unsupported("graph block")

    # ---------- terms ----------

    def _iri_from_ref(self, raw: str, start: int) -> Iri:
        value = unescape(raw, *self._line_col(start))
        if self.base is not None:
            value = urljoin(self.base, value)
        try:
            return Iri(value)
        except TermError as e:
            self.error(str(e), start)

    def iri(self) -> Iri:
        start = self.pos
        if self.peek() == "<":
            m = self.match(IRIREF_RE)
            if not m:
                self.error("malformed IRI reference")
            return self._iri_from_ref(m.group(1), start)
        m = self.match(PNAME_RE)
        if not m:
            self.error("expected IRI or prefixed name")
        prefix = m.group(1) or ""
        if prefix not in self.prefixes:
            self.error(f"undeclared prefix '{prefix}:'", start)
        local = _LOCAL_ESC_RE.sub(r"\1", m.group(2) or "")
        try:
            return Iri(self.prefixes[prefix] + local)
        except TermError as e:
            self.error(str(e), start)

    def fresh_blank(self) -> BlankNode:
        while f"genid{self.anon_count}" in self.explicit_labels:
            self.anon_count += 1
        node = BlankNode(f"genid{self.anon_count}")
        self.anon_count += 1
        self.anonymous.add(node)
        return node

    def blank_node_property_list(self) -> BlankNode:
        self.pos += 1  # '['
        node = self.fresh_blank()
        self.skip()
        if self.peek() == "]":
            self.pos += 1
            return node
        self.predicate_object_list(node)
        self.expect("]")
        return node

    def subject(self):
        self.skip()
        self._check_unsupported()
        c = self.peek()
        if c == "_":
            m = self.match(BLANK_RE)
            if not m:
                self.error("malformed blank node label")
            return BlankNode(m.group(1))
        if c == "[":
            return self.blank_node_property_list()
        if c == '"' or c == "'":
            self.error("a literal cannot be a subject")
        return self.iri()

    def verb(self) -> Iri:
        self.skip()
        if self.match(_A_RE):
            return RDF_TYPE
        self._check_unsupported()
        return self.iri()

    def literal(self) -> Literal:
        start = self.pos
        for regex in _STRING_RES:
            m = self.match(regex)
            if m:
                break
        else:
            self.error("unterminated or malformed string literal")
        lexical = unescape(m.group(1), *self._line_col(start))
        if self.peek() == "@":
            tag = self.match(LANGTAG_RE)
            if not tag:
                self.error("malformed language tag")
            return Literal(lexical, language=tag.group(1))
        if self.peek(2) == "^^":
            self.pos += 2
            datatype = self.iri()
            try:
                return Literal(lexical, datatype=datatype)
            except TermError as e:
                self.error(str(e), start)
        return Literal(lexical)

    def object(self):
        self.skip()
        self._check_unsupported()
        c = self.peek()
        if c == '"' or c == "'":
            return self.literal()
        if c == "[":
            return self.blank_node_property_list()
        if c == "_":
            m = self.match(BLANK_RE)
            if not m:
                self.error("malformed blank node label")
            return BlankNode(m.group(1))
        for regex, datatype in ((_DOUBLE_RE, XSD_DOUBLE), (_DECIMAL_RE, XSD_DECIMAL), (_INTEGER_RE, XSD_INTEGER)):
            m = self.match(regex)
            if m:
                return Literal(m.group(0), datatype=datatype)
        m = self.match(_BOOLEAN_RE)
        if m:
            return Literal(m.group(1), datatype=XSD_BOOLEAN)
        return self.iri()

    # ---------- grammar ----------

    def predicate_object_list(self, subject):
        while True:
            predicate = self.verb()
            while True:
                obj = self.object()
                self.triples.add(RdfTriple(subject, predicate, obj))
                self.skip()
                if self.peek() != ",":
                    break
                self.pos += 1
            self.skip()
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.pos += 1
                self.skip()
            if self.peek() in (".", "]", ""):
                return

    def directive(self) -> bool:
        if self.peek() == "@":
            start = self.pos
            word = re.compile(r"@([A-Za-z]+)").match(self.text, self.pos)
            name = word.group(1) if word else ""
            self.pos = word.end() if word else self.pos + 1
            if name == "prefix":
                self._prefix_body()
                self.expect(".")
            elif name == "base":
                self._base_body()
                self.expect(".")
            else:
                self.pos = start
                self.unsupported(f"@{name}")
            return True
        m = _KEYWORD_RE.match(self.text, self.pos)
        if m:
            keyword = m.group(1).upper()
            if keyword == "GRAPH":
                self.unsupported("GRAPH")
            self.pos = m.end()
            if keyword == "PREFIX":
                self._prefix_body()
            else:
                self._base_body()
            return True
        return False

    def _prefix_body(self):
        self.skip()
        m = self.match(PNAME_NS_RE)
        if not m:
            self.error("expected prefix name")
        self.skip()
        start = self.pos
        ref = self.match(IRIREF_RE)
        if not ref:
            self.error("expected IRI reference for prefix")
        self.prefixes[m.group(1) or ""] = self._iri_from_ref(ref.group(1), start).value

    def _base_body(self):
        self.skip()
        start = self.pos
        ref = self.match(IRIREF_RE)
        if not ref:
            self.error("expected IRI reference for base")
        self.base = self._iri_from_ref(ref.group(1), start).value

    def parse(self) -> set:
        while True:
            self.skip()
            if self.pos >= len(self.text):
                break
            if self.directive():
                continue
            subject = self.subject()
            self.skip()
            if subject in self.anonymous and self.peek() == ".":
                self.pos += 1
                continue
            self.predicate_object_list(subject)
            self.expect(".")
        return self.triples


def parse_turtle_subset(text: str) -> RdfGraph:
    if text.startswith("\ufeff"):
        text = text[1:]
    return RdfGraph(_TurtleParser(text).parse())
