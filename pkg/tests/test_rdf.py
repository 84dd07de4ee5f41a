"""
Tests for the RDF model, the N-Triples reader/writer and the Turtle subset.

rdflib is used as an independent parser to cross-check fixture graphs.
"""

import pytest

from kgc_study_kit.errors import RdfSyntaxError, StudyIOError, TermError, UnsupportedConstruct
from kgc_study_kit.rdf import parse_graph_file
from kgc_study_kit.rdf.ntriples import escape_lexical, parse_ntriples, serialize_ntriples
from kgc_study_kit.rdf.terms import (
    RDF_LANGSTRING,
    RDF_TYPE,
    XSD_DATE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    RdfGraph,
    RdfTriple,
)
from kgc_study_kit.rdf.turtle import parse_turtle_subset
from kgc_study_kit.grading.canonical import graph_isomorphic
from kgc_study_kit.study.fixtures import expected_graphs

from conftest import ex, ground_graph


# ---------- terms ----------

def test_relative_iri_rejected():
    with pytest.raises(TermError):
        Iri("employee/ada")


def test_literal_defaults():
    assert Literal("x").datatype == XSD_STRING
    tagged = Literal("hallo", language="nl")
    assert tagged.datatype == RDF_LANGSTRING


def test_literal_invalid_language_tag():
    with pytest.raises(TermError):
        Literal("x", language="en_GB")


def test_langstring_without_tag_rejected():
    with pytest.raises(TermError):
        Literal("x", datatype=RDF_LANGSTRING)


def test_literal_term_equality_has_no_value_canonicalization():
    assert Literal("01", XSD_INTEGER) != Literal("1", XSD_INTEGER)


@pytest.mark.parametrize("label", ["", "a.", "a b", ".a", "-a", "x/y"])
def test_blank_node_label_grammar(label):
    with pytest.raises(TermError):
        BlankNode(label)


@pytest.mark.parametrize("label", ["b0", "0", "a.b", "genid-1", "n_x", "é9"])
def test_blank_node_labels_survive_serialization(label):
    graph = RdfGraph([RdfTriple(BlankNode(label), ex("p"), Literal("v"))])
    assert parse_ntriples(serialize_ntriples(graph)) == graph


def test_triple_subject_cannot_be_literal():
    with pytest.raises(TermError):
        RdfTriple(Literal("s"), ex("p"), ex("o"))


def test_graph_set_algebra():
    a = ground_graph(3)
    b = ground_graph(5)
    assert len(a & b) == 3
    assert len(b - a) == 2
    assert len(a | b) == 5
    assert len(a.with_triples(list(b))) == 5
    assert a.is_ground()


# ---------- N-Triples ----------

def test_parse_empty_document():
    assert len(parse_ntriples("")) == 0


def test_parse_language_literal():
    g = parse_ntriples('<http://ex.org/s> <http://ex.org/p> "hi"@en .\n')
    assert len(g) == 1
    (t,) = list(g)
    assert t.object == Literal("hi", RDF_LANGSTRING, "en")


def test_duplicates_collapse():
    lines = [f'<http://ex.org/s{i}> <http://ex.org/p> "v{i}" .' for i in range(8)]
    lines += [lines[0], lines[3]]
    g = parse_ntriples("\n".join(lines) + "\n")
    assert len(g) == 8


def test_comments_blank_lines_and_crlf():
    text = "# header\r\n\r\n<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> . # trailing\r\n"
    assert len(parse_ntriples(text)) == 1


def test_escapes_decoded():
    g = parse_ntriples('<http://ex.org/s> <http://ex.org/p> "caf\\u00E9\\t\\"x\\"" .\n')
    (t,) = list(g)
    assert t.object.lexical == 'café\t"x"'


def test_syntax_error_reports_line_and_column():
    text = '<http://ex.org/s> <http://ex.org/p> "ok" .\n<http://ex.org/s> <http://ex.org/p> "unterminated .\n'
    with pytest.raises(RdfSyntaxError) as info:
        parse_ntriples(text)
    assert info.value.line == 2
    assert info.value.column >= 1


def test_missing_final_dot_is_an_error():
    with pytest.raises(RdfSyntaxError):
        parse_ntriples("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o>\n")


def test_serialize_empty_and_single():
    assert serialize_ntriples(RdfGraph()) == ""
    g = RdfGraph([RdfTriple(ex("s"), ex("p"), Literal("v"))])
    assert serialize_ntriples(g) == '<http://ex.org/s> <http://ex.org/p> "v" .\n'


def test_serialize_is_sorted_with_lf_endings():
    text = serialize_ntriples(ground_graph(12))
    lines = text.split("\n")[:-1]
    assert lines == sorted(lines)
    assert "\r" not in text


def test_serialize_keeps_blank_labels_and_datatypes():
    g = RdfGraph([
        RdfTriple(BlankNode("b7"), ex("when"), Literal("2024-01-15", XSD_DATE)),
    ])
    assert serialize_ntriples(g) == (
        '_:b7 <http://ex.org/when> "2024-01-15"^^<http://www.w3.org/2001/XMLSchema#date> .\n'
    )


def test_escape_lexical_control_characters():
    assert escape_lexical('a"b\\c\nd\x01') == 'a\\"b\\\\c\\nd\\u0001'


def test_round_trip_awkward_literals():
    g = RdfGraph([
        RdfTriple(ex("s"), ex("p"), Literal(text))
        for text in ['quote " here', "back\\slash", "line\nbreak", "tab\there", "bell\x07", "émoji 🙂"]
    ] + [RdfTriple(BlankNode("x"), ex("p"), Literal("nl", language="nl-BE"))])
    assert parse_ntriples(serialize_ntriples(g)) == g


def test_round_trip_fixture_graphs():
    for graph in expected_graphs().values():
        assert parse_ntriples(serialize_ntriples(graph)) == graph


# ---------- Turtle subset ----------

def test_turtle_single_triple():
    g = parse_turtle_subset("@prefix ex: <http://ex.org/> . ex:s ex:p ex:o .")
    assert g == RdfGraph([RdfTriple(ex("s"), ex("p"), ex("o"))])


def test_turtle_predicate_list():
    g = parse_turtle_subset(
        "PREFIX ex: <http://ex.org/>\n"
        'ex:s a ex:Employee ; ex:firstName "Ada" ; ex:lastName "Peeters" .\n'
    )
    assert len(g) == 3
    assert RdfTriple(ex("s"), RDF_TYPE, ex("Employee")) in g


def test_turtle_object_list_and_numbers():
    g = parse_turtle_subset(
        "@prefix ex: <http://ex.org/> .\n"
        "ex:s ex:n 1, 2.5, 1e3 ; ex:flag true .\n"
    )
    assert len(g) == 4
    assert RdfTriple(ex("s"), ex("n"), Literal("1", XSD_INTEGER)) in g


def test_turtle_base_and_relative_iris():
    g = parse_turtle_subset("@base <http://ex.org/> . <s> <p> <o> .")
    assert g == RdfGraph([RdfTriple(ex("s"), ex("p"), ex("o"))])


def test_turtle_blank_node_property_list():
    g = parse_turtle_subset(
        "@prefix ex: <http://ex.org/> .\n"
        'ex:task ex:assignedTo [ ex:firstName "Ada" ; ex:lastName "Peeters" ] .\n'
    )
    assert len(g) == 3
    assert len(g.blank_nodes()) == 1


def test_turtle_anonymous_nodes_avoid_written_labels():
    g = parse_turtle_subset(
        "@prefix ex: <http://ex.org/> .\n"
        "_:genid0 ex:knows [ ex:age 40 ] .\n"
    )
    assert g.blank_nodes() == {BlankNode("genid0"), BlankNode("genid1")}
    assert parse_ntriples(serialize_ntriples(g)) == g


def test_turtle_long_strings_and_language():
    g = parse_turtle_subset(
        '@prefix ex: <http://ex.org/> .\nex:s ex:d """two\nlines"""@en .\n'
    )
    (t,) = list(g)
    assert t.object == Literal("two\nlines", language="en")


@pytest.mark.parametrize("text,construct", [
    ("@prefix ex: <http://ex.org/> .\nex:s ex:p ( ex:a ex:b ) .", "collection"),
    ("@prefix ex: <http://ex.org/> .\n<< ex:s ex:p ex:o >> ex:q ex:r .", "quoted triple"),
    ("@prefix ex: <http://ex.org/> .\nex:g { ex:s ex:p ex:o . }", "graph block"),
])
def test_turtle_unsupported_constructs(text, construct):
    with pytest.raises(UnsupportedConstruct) as info:
        parse_turtle_subset(text)
    assert info.value.line == 2
    assert info.value.construct == construct


def test_turtle_undeclared_prefix_is_a_syntax_error():
    with pytest.raises(RdfSyntaxError):
        parse_turtle_subset("ex:s ex:p ex:o .")


# ---------- cross-check with rdflib ----------

def _from_rdflib(graph) -> RdfGraph:
    import rdflib

    def term(t):
        if isinstance(t, rdflib.BNode):
            return BlankNode(str(t))
        if isinstance(t, rdflib.URIRef):
            return Iri(str(t))
        if t.language:
            return Literal(str(t), language=t.language)
        return Literal(str(t), Iri(str(t.datatype)) if t.datatype else None)

    return RdfGraph(RdfTriple(term(s), term(p), term(o)) for s, p, o in graph)


def test_fixture_graphs_written_as_turtle_by_rdflib_parse_equal():
    rdflib = pytest.importorskip("rdflib")
    for task_id, graph in expected_graphs().items():
        g = rdflib.Graph()
        g.parse(data=serialize_ntriples(graph), format="nt")
        g.bind("ex", rdflib.Namespace("http://example.com/"))
        turtle = g.serialize(format="turtle")
        assert parse_turtle_subset(turtle) == graph, task_id


def test_turtle_with_blank_nodes_matches_rdflib():
    rdflib = pytest.importorskip("rdflib")
    text = (
        "@prefix ex: <http://ex.org/> .\n"
        "ex:t1 ex:assignedTo [ ex:name \"Ada\" ; ex:knows _:b ] .\n"
        "_:b ex:name \"Bram\" .\n"
    )
    ours = parse_turtle_subset(text)
    theirs = _from_rdflib(rdflib.Graph().parse(data=text, format="turtle"))
    assert graph_isomorphic(ours, theirs)


# ---------- files ----------

def test_parse_graph_file_dispatches_on_suffix(tmp_path):
    nt = tmp_path / "g.nt"
    nt.write_text('<http://ex.org/s> <http://ex.org/p> "v" .\n', encoding="utf-8")
    ttl = tmp_path / "g.ttl"
    ttl.write_text('@prefix ex: <http://ex.org/> . ex:s ex:p "v" .', encoding="utf-8")
    assert parse_graph_file(nt) == parse_graph_file(ttl)


def test_parse_graph_file_missing(tmp_path):
    with pytest.raises(StudyIOError):
        parse_graph_file(tmp_path / "nope.nt")
