# RDF model, N-Triples reader/writer and Turtle subset reader
from pathlib import Path

from kgc_study_kit.errors import StudyIOError
from .terms import (
    RDF_LANGSTRING,
    RDF_TYPE,
    XSD_DATE,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    RdfGraph,
    RdfTerm,
    RdfTriple,
)
from .ntriples import parse_ntriples, serialize_ntriples, term_to_ntriples, triple_to_ntriples
from .turtle import parse_turtle_subset


def parse_graph_file(path) -> RdfGraph:
    """Parse a `.nt` or `.ttl` file (UTF-8) into a graph."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise StudyIOError(f"cannot read graph file {path}: {e}") from e
    if path.suffix.lower() == ".ttl":
        return parse_turtle_subset(text)
    return parse_ntriples(text)


__all__ = [
    "BlankNode",
    "Iri",
    "Literal",
    "RdfGraph",
    "RdfTerm",
    "RdfTriple",
    "RDF_LANGSTRING",
    "RDF_TYPE",
    "XSD_DATE",
    "XSD_STRING",
    "parse_graph_file",
    "parse_ntriples",
    "parse_turtle_subset",
    "serialize_ntriples",
    "term_to_ntriples",
    "triple_to_ntriples",
]
