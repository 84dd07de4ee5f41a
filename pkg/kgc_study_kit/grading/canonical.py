"""
Blank-node canonicalization and RDF graph isomorphism.

Each blank node gets a colour: the SHA-256 of its incident triples with ground
terms written out and other blank nodes replaced by their current colour.
Colours are refined round by round until the partition stops splitting.
Remaining ties are broken by individualizing one member of the smallest tied
class (with a colour unique to the search depth) and refining again; among
all complete labelings the one whose sorted N-Triples serialization is
smallest wins.

Members of a tied class are skipped when an explored member is their twin
(swapping the two is an automorphism) or lies in the same orbit under the
automorphisms found so far that fix the individualized path. Automorphisms
come from pairs of leaves with identical serializations.
"""

import hashlib
from dataclasses import dataclass
from typing import Optional

from kgc_study_kit.rdf.ntriples import term_to_ntriples, triple_to_ntriples
from kgc_study_kit.rdf.terms import BlankNode, RdfGraph, RdfTriple
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

CANONICAL_PREFIX = "c"


@dataclass(frozen=True)
class BlankNodeMapping:
    """Bijection between blank-node labels of two graphs (source -> target)."""
    pairs: tuple  # sorted ((source_label, target_label), ...)

    def __post_init__(self):
        sources = [s for s, _ in self.pairs]
        targets = [t for _, t in self.pairs]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            raise ValueError("blank node mapping must be injective")

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def apply(self, graph: RdfGraph) -> RdfGraph:
        mapping = {BlankNode(s): BlankNode(t) for s, t in self.pairs}
        return _relabel(graph, mapping)


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\x1f")
    return h.hexdigest()


def _relabel(graph: RdfGraph, mapping: dict) -> RdfGraph:
    return RdfGraph(
        RdfTriple(mapping.get(t.subject, t.subject), t.predicate, mapping.get(t.object, t.object))
        for t in graph
    )


class _Canonicalizer:
    def __init__(self, graph: RdfGraph):
        self.graph = graph
        self.nodes = sorted(graph.blank_nodes())
        self.incident: dict[BlankNode, list[RdfTriple]] = {b: [] for b in self.nodes}
        for t in graph:
            if isinstance(t.subject, BlankNode):
                self.incident[t.subject].append(t)
            if isinstance(t.object, BlankNode) and t.object != t.subject:
                self.incident[t.object].append(t)
        self.best: Optional[tuple[str, dict]] = None
        self.leaves = 0
        self.seen: dict[str, dict] = {}
        self.automorphisms: list[dict] = []
        self.twin: dict[BlankNode, BlankNode] = {}

    def _term(self, term, node, colours) -> str:
        if term == node:
            return "@self"
        if isinstance(term, BlankNode):
            return "@" + (colours[term] if colours is not None else "bnode")
        return term_to_ntriples(term)

    def _edge(self, t: RdfTriple, node, colours) -> str:
        return (
            f"{self._term(t.subject, node, colours)} {term_to_ntriples(t.predicate)} "
            f"{self._term(t.object, node, colours)}"
        )

    def initial_colours(self) -> dict:
        return {
            b: _digest("init", *sorted(self._edge(t, b, None) for t in self.incident[b]))
            for b in self.nodes
        }

    def refine(self, colours: dict) -> dict:
        classes = len(set(colours.values()))
        while True:
            refined = {
                b: _digest(colours[b], *sorted(self._edge(t, b, colours) for t in self.incident[b]))
                for b in self.nodes
            }
            refined_classes = len(set(refined.values()))
            if refined_classes == classes:
                return colours
            colours, classes = refined, refined_classes

    def _swap_is_automorphism(self, u: BlankNode, v: BlankNode) -> bool:
        swap = {u: v, v: u}
        touched = set(self.incident[u]) | set(self.incident[v])
        moved = {
            RdfTriple(swap.get(t.subject, t.subject), t.predicate, swap.get(t.object, t.object))
            for t in touched
        }
        return moved == touched

    def find_twins(self, colours: dict):
        """Group blank nodes whose transposition is an automorphism; each group is searched once."""
        by_colour: dict[str, list] = {}
        for b in self.nodes:
            by_colour.setdefault(colours[b], []).append(b)
        for members in by_colour.values():
            reps: list[BlankNode] = []
            for b in members:
                rep = next((r for r in reps if self._swap_is_automorphism(r, b)), None)
                if rep is None:
                    reps.append(b)
                    rep = b
                self.twin[b] = rep

    def _leaf(self, colours: dict):
        self.leaves += 1
        order = sorted(self.nodes, key=lambda b: colours[b])
        mapping = {b: BlankNode(f"{CANONICAL_PREFIX}{i}") for i, b in enumerate(order)}
        text = "\n".join(sorted(triple_to_ntriples(t) for t in _relabel(self.graph, mapping)))
        earlier = self.seen.get(text)
        if earlier is None:
            self.seen[text] = mapping
        else:
            inverse = {canon: b for b, canon in mapping.items()}
            automorphism = {b: inverse[canon] for b, canon in earlier.items()}
            if any(b != image for b, image in automorphism.items()):
                self.automorphisms.append(automorphism)
        if self.best is None or text < self.best[0]:
            self.best = (text, mapping)

    def _orbit(self, node: BlankNode, fixed: tuple) -> set:
        generators = [g for g in self.automorphisms if all(g[v] == v for v in fixed)]
        orbit = {node}
        frontier = [node]
        while frontier:
            current = frontier.pop()
            for g in generators:
                image = g[current]
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        return orbit

    def search(self, colours: dict, path: tuple = ()):
        colours = self.refine(colours)
        classes: dict[str, list] = {}
        for b in self.nodes:
            classes.setdefault(colours[b], []).append(b)
        tied = [(len(members), colour) for colour, members in classes.items() if len(members) > 1]
        if not tied:
            self._leaf(colours)
            return
        _, colour = min(tied)
        explored: list[BlankNode] = []
        for b in classes[colour]:
            if any(self.twin[e] == self.twin[b] for e in explored):
                continue
            # automorphisms fixing the path map explored subtrees onto this one
            if explored and self._orbit(b, path) & set(explored):
                continue
            explored.append(b)
            branch = dict(colours)
            branch[b] = _digest(colour, "individualized", str(len(path)))
            self.search(branch, path + (b,))

    def labeling(self) -> dict:
        colours = self.initial_colours()
        self.find_twins(colours)
        self.search(colours)
        if self.leaves > 1:
            logger.debug(f"Canonical labeling explored {self.leaves} leaves for {len(self.nodes)} blank nodes")
        return self.best[1]


def canonical_labeling(graph: RdfGraph) -> dict:
    """Map each blank node of `graph` to its canonical blank node."""
    if graph.is_ground():
        return {}
    return _Canonicalizer(graph).labeling()


def canonicalize_blank_nodes(graph: RdfGraph) -> RdfGraph:
    """Relabel blank nodes deterministically; isomorphic graphs give equal results."""
    mapping = canonical_labeling(graph)
    if not mapping:
        return graph
    return _relabel(graph, mapping)


def _quick_mismatch(a: RdfGraph, b: RdfGraph) -> bool:
    if len(a) != len(b):
        return True
    if len(a.blank_nodes()) != len(b.blank_nodes()):
        return True
    ground_a = {t for t in a if t.is_ground()}
    ground_b = {t for t in b if t.is_ground()}
    return ground_a != ground_b


def graph_isomorphic(a: RdfGraph, b: RdfGraph) -> bool:
    """True iff a bijection of blank nodes makes the triple sets equal."""
    if _quick_mismatch(a, b):
        return False
    if a.is_ground():
        return a.triples == b.triples
    return canonicalize_blank_nodes(a) == canonicalize_blank_nodes(b)


def find_blank_node_mapping(a: RdfGraph, b: RdfGraph) -> Optional[BlankNodeMapping]:
    """Return a bijection a -> b witnessing isomorphism, or None."""
    if _quick_mismatch(a, b):
        return None
    label_a = canonical_labeling(a)
    label_b = canonical_labeling(b)
    if _relabel(a, label_a) != _relabel(b, label_b):
        return None
    inverse_b = {canon: original for original, canon in label_b.items()}
    pairs = tuple(sorted((src.label, inverse_b[canon].label) for src, canon in label_a.items()))
    return BlankNodeMapping(pairs)
