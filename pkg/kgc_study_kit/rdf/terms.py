"""
RDF abstract syntax: terms, triples and immutable graphs.

Equality is term equality everywhere: IRIs compare code point by code point,
literals compare on (lexical form, datatype, language tag). No value-space
canonicalization is applied ("01"^^xsd:integer != "1"^^xsd:integer).
"""

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from kgc_study_kit.errors import TermError

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
LANGUAGE_TAG_RE = re.compile(r"^[a-zA-Z]+(-[a-zA-Z0-9]+)*$")

_PN_CHARS_BASE = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF"
    "\uFDF0-\uFFFD\U00010000-\U000EFFFF"
)
_PN_CHARS_U = _PN_CHARS_BASE + "_:"
_PN_CHARS = _PN_CHARS_U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
# N-Triples BLANK_NODE_LABEL without the leading "_:"
BLANK_NODE_LABEL = "[" + _PN_CHARS_U + "0-9](?:[" + _PN_CHARS + ".]*[" + _PN_CHARS + "])?"
_BLANK_NODE_LABEL_RE = re.compile(BLANK_NODE_LABEL)


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not isinstance(self.value, str) or not _SCHEME_RE.match(self.value):
            raise TermError(f"not an absolute IRI: {self.value!r}")

    def __str__(self):
        return self.value


XSD_STRING = Iri(XSD + "string")
XSD_DATE = Iri(XSD + "date")
XSD_INTEGER = Iri(XSD + "integer")
XSD_DECIMAL = Iri(XSD + "decimal")
XSD_DOUBLE = Iri(XSD + "double")
XSD_BOOLEAN = Iri(XSD + "boolean")
RDF_TYPE = Iri(RDF + "type")
RDF_LANGSTRING = Iri(RDF + "langString")


@dataclass(frozen=True, order=True)
class BlankNode:
    """Blank node; the label only means something inside one graph."""
    label: str

    def __post_init__(self):
        if not isinstance(self.label, str) or not _BLANK_NODE_LABEL_RE.fullmatch(self.label):
            raise TermError(f"invalid blank node label: {self.label!r}")


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    datatype: Optional[Iri] = None
    language: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.lexical, str):
            raise TermError(f"literal lexical form must be text: {self.lexical!r}")
        if self.language is not None:
            if not LANGUAGE_TAG_RE.match(self.language):
                raise TermError(f"invalid language tag: {self.language!r}")
            if self.datatype is None:
                object.__setattr__(self, "datatype", RDF_LANGSTRING)
            elif self.datatype != RDF_LANGSTRING:
                raise TermError("a language-tagged literal must have datatype rdf:langString")
        else:
            if self.datatype is None:
                object.__setattr__(self, "datatype", XSD_STRING)
            elif self.datatype == RDF_LANGSTRING:
                raise TermError("rdf:langString literal without a language tag")


RdfTerm = Union[Iri, BlankNode, Literal]


@dataclass(frozen=True)
class RdfTriple:
    subject: Union[Iri, BlankNode]
    predicate: Iri
    object: RdfTerm

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TermError(f"triple subject must be an IRI or blank node: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TermError(f"triple predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TermError(f"triple object must be an RDF term: {self.object!r}")

    def terms(self) -> tuple:
        return (self.subject, self.predicate, self.object)

    def is_ground(self) -> bool:
        return not isinstance(self.subject, BlankNode) and not isinstance(self.object, BlankNode)


@dataclass(frozen=True)
class RdfGraph:
    """Immutable set of triples. Duplicates collapse on construction."""
    triples: frozenset = field(default_factory=frozenset)

    def __init__(self, triples: Iterable[RdfTriple] = ()):
        object.__setattr__(self, "triples", frozenset(triples))

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[RdfTriple]:
        return iter(self.triples)

    def __contains__(self, triple) -> bool:
        return triple in self.triples

    def __and__(self, other: "RdfGraph") -> "RdfGraph":
        return RdfGraph(self.triples & other.triples)

    def __or__(self, other: "RdfGraph") -> "RdfGraph":
        return RdfGraph(self.triples | other.triples)

    def __sub__(self, other: "RdfGraph") -> "RdfGraph":
        return RdfGraph(self.triples - other.triples)

    def with_triples(self, triples: Iterable[RdfTriple]) -> "RdfGraph":
        """Return a new graph with the extra triples (duplicates are no-ops)."""
        return RdfGraph(self.triples | frozenset(triples))

    def blank_nodes(self) -> frozenset:
        nodes = set()
        for t in self.triples:
            if isinstance(t.subject, BlankNode):
                nodes.add(t.subject)
            if isinstance(t.object, BlankNode):
                nodes.add(t.object)
        return frozenset(nodes)

    def is_ground(self) -> bool:
        return all(t.is_ground() for t in self.triples)

    def subjects(self) -> frozenset:
        return frozenset(t.subject for t in self.triples)

    def predicates(self) -> frozenset:
        return frozenset(t.predicate for t in self.triples)
