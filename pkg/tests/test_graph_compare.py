"""
Tests for blank-node canonicalization, isomorphism and triple-level accuracy.

Isomorphism is checked against a brute-force oracle that tries every
bijection between blank nodes with matching incident-triple signatures.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from kgc_study_kit.errors import EmptyInput, InconsistentStatus
from kgc_study_kit.grading import (
    TaskStatus,
    canonicalize_blank_nodes,
    diff_graphs,
    f_measure,
    find_blank_node_mapping,
    global_grade,
    grade_task,
    graph_isomorphic,
    macro_grade,
    precision_recall,
)
from kgc_study_kit.rdf.terms import RDF_TYPE, BlankNode, Literal, RdfGraph, RdfTriple
from kgc_study_kit.study.fixtures import expected_graphs

from conftest import ex, ground_graph


def _signature(graph: RdfGraph, node: BlankNode) -> tuple:
    """Label-free summary of a blank node's incident triples."""
    def show(term):
        if term == node:
            return "self"
        return "blank" if isinstance(term, BlankNode) else repr(term)
    return tuple(sorted(
        (show(t.subject), t.predicate.value, show(t.object))
        for t in graph if node in (t.subject, t.object)
    ))


def brute_force_isomorphic(a: RdfGraph, b: RdfGraph) -> bool:
    """Try every bijection that maps blank nodes onto nodes with the same signature."""
    if len(a) != len(b):
        return False
    nodes_a = sorted(a.blank_nodes())
    nodes_b = sorted(b.blank_nodes())
    if len(nodes_a) != len(nodes_b):
        return False
    classes: dict[tuple, tuple[list, list]] = {}
    for n in nodes_a:
        classes.setdefault(_signature(a, n), ([], []))[0].append(n)
    for n in nodes_b:
        if _signature(b, n) not in classes:
            return False
        classes[_signature(b, n)][1].append(n)
    if any(len(src) != len(dst) for src, dst in classes.values()):
        return False
    triples_b = b.triples
    per_class = [
        [dict(zip(src, perm)) for perm in itertools.permutations(dst)]
        for src, dst in classes.values()
    ]
    for parts in itertools.product(*per_class):
        mapping = {}
        for part in parts:
            mapping.update(part)
        if all(
            RdfTriple(mapping.get(t.subject, t.subject), t.predicate, mapping.get(t.object, t.object)) in triples_b
            for t in a
        ):
            return True
    return False


def cycle(labels, predicate="p") -> RdfGraph:
    nodes = [BlankNode(x) for x in labels]
    return RdfGraph(
        RdfTriple(nodes[i], ex(predicate), nodes[(i + 1) % len(nodes)]) for i in range(len(nodes))
    )


def cycles(sizes, prefix="v") -> RdfGraph:
    """Disjoint directed cycles of the given sizes."""
    triples = []
    start = 0
    for size in sizes:
        triples.extend(cycle([f"{prefix}{start + i}" for i in range(size)]))
        start += size
    return RdfGraph(triples)


def isolated(n: int, prefix="i") -> RdfGraph:
    """n blank nodes that are indistinguishable from one another."""
    return RdfGraph(RdfTriple(BlankNode(f"{prefix}{i}"), RDF_TYPE, ex("T")) for i in range(n))


def relabel(graph: RdfGraph, prefix: str, seed: int) -> RdfGraph:
    nodes = sorted(graph.blank_nodes())
    shuffled = list(range(len(nodes)))
    random.Random(seed).shuffle(shuffled)
    mapping = {n: BlankNode(f"{prefix}{i}") for n, i in zip(nodes, shuffled)}
    return RdfGraph(
        RdfTriple(mapping.get(t.subject, t.subject), t.predicate, mapping.get(t.object, t.object))
        for t in graph
    )


def random_graph(rng: random.Random, n_blank: int, n_triples: int) -> RdfGraph:
    blanks = [BlankNode(f"n{i}") for i in range(n_blank)]
    objects = blanks + [ex("o1"), Literal("v")]
    triples = set()
    while len(triples) < n_triples:
        triples.add(RdfTriple(rng.choice(blanks), ex(rng.choice("pq")), rng.choice(objects)))
    return RdfGraph(triples)


def random_partition(rng: random.Random, n: int) -> list:
    sizes = []
    while n:
        size = rng.randint(1, n)
        sizes.append(size)
        n -= size
    return sorted(sizes)


def corpus_pair(rng: random.Random, case: int) -> tuple:
    """Random, mutated and highly regular graph pairs with at most 7 blank nodes."""
    n_blank = rng.randint(1, 7)
    kind = case % 5
    if kind == 3:
        sizes = random_partition(rng, n_blank)
        other = sizes if rng.random() < 0.5 else random_partition(rng, n_blank)
        return cycles(sizes, "v"), relabel(cycles(other, "w"), "m", seed=case)
    if kind == 4:
        b = isolated(n_blank, "j")
        if rng.random() < 0.5:
            b = RdfGraph(
                RdfTriple(t.subject, t.predicate, ex("U")) if t.subject == BlankNode("j0") else t for t in b
            )
        return isolated(n_blank), relabel(b, "m", seed=case)
    a = random_graph(rng, n_blank, rng.randint(n_blank, n_blank + 5))
    if kind == 0:
        return a, relabel(a, "m", seed=case)
    if kind == 1:
        return a, random_graph(rng, n_blank, len(a))
    victim = sorted(a, key=repr)[rng.randrange(len(a))]
    flipped = ex("q") if victim.predicate == ex("p") else ex("p")
    mutant = RdfGraph([t for t in a if t != victim] + [RdfTriple(victim.subject, flipped, victim.object)])
    return a, relabel(mutant, "m", seed=case)


# ---------- canonicalization ----------

def test_ground_graph_is_unchanged():
    g = ground_graph(6)
    assert canonicalize_blank_nodes(g) == g


def test_single_edge_relabeling():
    a = RdfGraph([RdfTriple(BlankNode("a"), ex("p"), BlankNode("b"))])
    b = RdfGraph([RdfTriple(BlankNode("x"), ex("p"), BlankNode("y"))])
    ca, cb = canonicalize_blank_nodes(a), canonicalize_blank_nodes(b)
    assert ca == cb
    assert all(n.label.startswith("c") for n in ca.blank_nodes())


def test_isomorphic_six_cycles_share_a_canonical_form():
    a = cycle("abcdef")
    b = relabel(a, "z", seed=3)
    assert brute_force_isomorphic(a, b)
    assert canonicalize_blank_nodes(a) == canonicalize_blank_nodes(b)


def test_six_cycle_versus_two_triangles():
    """Same degree sequence everywhere; colour refinement alone cannot split them."""
    hexagon = cycle("abcdef")
    triangles = cycle("abc") | cycle("def")
    assert not brute_force_isomorphic(hexagon, triangles)
    assert canonicalize_blank_nodes(hexagon) != canonicalize_blank_nodes(triangles)
    assert not graph_isomorphic(hexagon, triangles)


def test_six_cycle_with_one_relabeled_edge_differs():
    a = cycle("abcdef")
    mutant = RdfGraph(
        [t for t in a if t.subject != BlankNode("a")]
        + [RdfTriple(BlankNode("a"), ex("q"), BlankNode("b"))]
    )
    assert not brute_force_isomorphic(a, mutant)
    assert canonicalize_blank_nodes(a) != canonicalize_blank_nodes(mutant)


def test_canonicalization_is_deterministic():
    g = cycle("abc") | RdfGraph([RdfTriple(BlankNode("a"), ex("name"), Literal("Ada"))])
    assert canonicalize_blank_nodes(g) == canonicalize_blank_nodes(relabel(g, "k", seed=9))


# ---------- isomorphism ----------

def test_graph_isomorphic_to_itself():
    for g in expected_graphs().values():
        assert graph_isomorphic(g, g)


def test_different_sizes_are_not_isomorphic():
    assert not graph_isomorphic(ground_graph(3), ground_graph(4))


def test_adversarial_two_node_pair():
    """Both graphs: two blank nodes, each with one outgoing and one incoming p edge."""
    swapped = RdfGraph([
        RdfTriple(BlankNode("a"), ex("p"), BlankNode("b")),
        RdfTriple(BlankNode("b"), ex("p"), BlankNode("a")),
    ])
    loops = RdfGraph([
        RdfTriple(BlankNode("a"), ex("p"), BlankNode("a")),
        RdfTriple(BlankNode("b"), ex("p"), BlankNode("b")),
    ])
    assert not brute_force_isomorphic(swapped, loops)
    assert not graph_isomorphic(swapped, loops)


def test_agrees_with_brute_force_on_corpus():
    rng = random.Random(2024)
    elapsed = 0.0
    verdicts = []
    for case in range(500):
        a, b = corpus_pair(rng, case)
        start = time.perf_counter()
        ours = graph_isomorphic(a, b)
        elapsed += time.perf_counter() - start
        assert ours == brute_force_isomorphic(a, b), (case, a, b)
        verdicts.append(ours)
    assert 50 < sum(verdicts) < 450
    assert elapsed < 60.0


@pytest.mark.parametrize("n", [7, 8, 10])
def test_indistinguishable_blank_nodes(n):
    g = isolated(n)
    other = relabel(isolated(n, "j"), "z", seed=n)
    start = time.perf_counter()
    assert canonicalize_blank_nodes(g) == canonicalize_blank_nodes(other)
    assert graph_isomorphic(g, other)
    assert time.perf_counter() - start < 5.0


def test_complete_graph_on_seven_blank_nodes():
    nodes = [BlankNode(f"k{i}") for i in range(7)]
    g = RdfGraph(RdfTriple(a, ex("p"), b) for a in nodes for b in nodes if a != b)
    start = time.perf_counter()
    assert graph_isomorphic(g, relabel(g, "z", seed=7))
    assert time.perf_counter() - start < 5.0


def test_regular_cycle_unions():
    start = time.perf_counter()
    assert not graph_isomorphic(cycles([6]), cycles([3, 3], "w"))
    assert not graph_isomorphic(cycles([7]), cycles([3, 4], "w"))
    assert graph_isomorphic(cycles([2, 2, 3]), relabel(cycles([3, 2, 2], "w"), "z", seed=11))
    assert not graph_isomorphic(cycles([2, 2, 2, 1]), cycles([2, 2, 3], "w"))
    assert time.perf_counter() - start < 5.0


def test_isomorphism_is_symmetric_and_transitive():
    a = cycle("abcd") | RdfGraph([RdfTriple(BlankNode("a"), ex("q"), Literal("x"))])
    b = relabel(a, "u", seed=1)
    c = relabel(b, "w", seed=2)
    assert graph_isomorphic(a, b) and graph_isomorphic(b, a)
    assert graph_isomorphic(b, c) and graph_isomorphic(a, c)


def test_mapping_witnesses_isomorphism():
    a = cycle("abcde")
    b = relabel(a, "r", seed=4)
    mapping = find_blank_node_mapping(a, b)
    assert mapping is not None
    assert mapping.apply(a) == b
    assert len(mapping.as_dict()) == 5
    assert find_blank_node_mapping(a, cycle("abcdef")) is None


# ---------- accuracy ----------

def test_precision_recall_identical():
    g = ground_graph(7)
    assert precision_recall(g, g) == (1.0, 1.0, 1.0)


def test_one_missing_triple():
    expected = ground_graph(10)
    generated = RdfGraph(list(expected)[:9])
    p, r, f = precision_recall(generated, expected)
    assert p == 1.0
    assert r == 0.9
    assert f == pytest.approx(18 / 19, abs=1e-12)


def test_two_spurious_triples():
    expected = ground_graph(10)
    generated = expected.with_triples(
        [RdfTriple(ex("x1"), ex("p"), Literal("bad")), RdfTriple(ex("x2"), ex("p"), Literal("bad"))]
    )
    p, r, f = precision_recall(generated, expected)
    assert p == pytest.approx(10 / 12, abs=1e-12)
    assert r == 1.0
    assert f == pytest.approx(20 / 22, abs=1e-12)


def test_deleting_and_adding_k_triples_on_fixtures():
    for expected in expected_graphs().values():
        n = len(expected)
        ordered = sorted(expected, key=repr)
        for k in range(1, n // 2 + 1):
            _, r, _ = precision_recall(RdfGraph(ordered[k:]), expected)
            assert r == float(Fraction(n - k, n))
            spurious = [RdfTriple(ex(f"junk{i}"), ex("p"), Literal("x")) for i in range(k)]
            p, _, _ = precision_recall(expected.with_triples(spurious), expected)
            assert p == float(Fraction(n, n + k))


def test_empty_generated_graph():
    assert precision_recall(RdfGraph(), ground_graph(4)) == (1.0, 0.0, 0.0)
    assert precision_recall(RdfGraph(), RdfGraph()) == (1.0, 1.0, 1.0)


def test_blank_nodes_match_after_canonicalization():
    expected = cycle("abc")
    generated = relabel(expected, "g", seed=5)
    assert precision_recall(generated, expected) == (1.0, 1.0, 1.0)


def test_f_measure_zero_when_both_zero():
    assert f_measure(0, 0) == 0.0
    assert f_measure(1, 0.5) == pytest.approx(2 / 3)


def test_diff_graphs():
    expected = ground_graph(5)
    generated = RdfGraph(list(ground_graph(4)) + [RdfTriple(ex("z"), ex("p"), Literal("z"))])
    diff = diff_graphs(generated, expected)
    assert len(diff.missing) == 1
    assert len(diff.spurious) == 1
    assert not diff.empty
    assert diff_graphs(expected, expected).empty


# ---------- grade_task / global ----------

def test_grade_completed_expected_graph():
    for task_id, expected in expected_graphs().items():
        grade = grade_task(task_id, expected, expected, TaskStatus.COMPLETED, 300.0)
        assert grade.isomorphic
        assert grade.accuracy == (1.0, 1.0, 1.0)
        assert grade.execution_time_seconds == 300.0


def test_grade_did_not_start():
    grade = grade_task("T1", None, ground_graph(3), TaskStatus.DID_NOT_START)
    assert grade.accuracy == (0.0, 0.0, 0.0)
    assert grade.execution_time_seconds is None
    assert not grade.isomorphic


def test_grade_did_not_finish_partial_submission():
    expected = ground_graph(12)
    partial = RdfGraph(sorted(expected, key=repr)[2:])
    grade = grade_task("T2", partial, expected, TaskStatus.DID_NOT_FINISH, 3600.0)
    assert not grade.isomorphic
    assert grade.precision == 1.0
    assert grade.recall == pytest.approx(10 / 12, abs=1e-12)


@pytest.mark.parametrize("submission,status,time", [
    (ground_graph(2), TaskStatus.DID_NOT_START, None),
    (None, TaskStatus.DID_NOT_START, 60.0),
    (None, TaskStatus.COMPLETED, 60.0),
    (ground_graph(2), TaskStatus.DID_NOT_FINISH, None),
    (ground_graph(2), TaskStatus.COMPLETED, -1.0),
])
def test_grade_inconsistent_status(submission, status, time):
    with pytest.raises(InconsistentStatus):
        grade_task("T1", submission, ground_graph(2), status, time)


def test_status_parse():
    assert TaskStatus.parse(" dnf ") is TaskStatus.DID_NOT_FINISH
    with pytest.raises(InconsistentStatus):
        TaskStatus.parse("done")


def test_global_grade_micro_average():
    expected = ground_graph(10)
    missing = grade_task("T1", RdfGraph(), expected, TaskStatus.DID_NOT_FINISH, 100.0)
    perfect = grade_task("T2", expected, expected, TaskStatus.COMPLETED, 100.0)
    p, r, _ = global_grade([missing, perfect])
    assert r == 0.5
    assert p == 1.0
    assert global_grade([perfect, perfect]) == (1.0, 1.0, 1.0)


def test_global_grade_sums_counts_not_ratios():
    small_expected = ground_graph(2)
    big_expected = RdfGraph(RdfTriple(ex(f"b{i}"), ex("q"), Literal(str(i))) for i in range(20))
    half = grade_task("T1", RdfGraph(list(small_expected)[:1]), small_expected, TaskStatus.COMPLETED, 10.0)
    full = grade_task("T2", big_expected, big_expected, TaskStatus.COMPLETED, 10.0)
    _, r, _ = global_grade([half, full])
    assert r == float(Fraction(21, 22))
    assert macro_grade([half, full]).recall == pytest.approx(0.75)


def test_global_grade_needs_grades():
    with pytest.raises(EmptyInput):
        global_grade([])
