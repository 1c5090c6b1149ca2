"""Realizability of crossing specifications as simple drawings.

A crossing specification gives, for every (directed) edge e, the ordered
sequence of edges crossing e along its direction.  It is realizable as a
drawing iff an auxiliary graph -- built by planarizing each edge into a
path through shared crossing vertices, subdividing edges between crossing
vertices, and bracing each crossing vertex -- is planar.

The same machinery drives the exhaustive audit of 6-cycle specifications:
every crossing set satisfying the local-thrackle condition but missing an
opposite pair, under every per-edge crossing order, is non-realizable.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Optional

from .errors import InputError
from .graphs import (
    AbstractGraph,
    CrossingPattern,
    Edge,
    cycle_graph,
    edge,
    edge_key,
    three_edge_paths,
)
from .planarity import lr_planar


@dataclass(frozen=True)
class CrossingLists:
    """Per directed edge, the ordered list of edges crossing it.

    The direction is for reference only: reversing an edge and its list
    describes the same drawing.
    """

    graph: AbstractGraph
    directions: tuple  # of (tail, head), one per edge, deterministic order
    lists: dict        # (tail, head) -> tuple of crossing edges, in crossing order

    def __post_init__(self):
        directed = set(self.directions)
        undirected = {edge(u, v) for u, v in directed}
        if len(directed) != len(self.graph.edges) or undirected != self.graph.edges:
            raise InputError("directions must orient each edge exactly once")
        if set(self.lists) != directed:
            raise InputError("every directed edge needs a crossing list (possibly empty)")
        partner_sets = {}
        for (u, v), seq in self.lists.items():
            e = edge(u, v)
            seen = set()
            for f in seq:
                if f not in self.graph.edges:
                    raise InputError(f"crossing list of {(u, v)} names unknown edge {f}")
                if f == e or (f & e):
                    raise InputError(f"edge {edge_key(e)} lists an adjacent or identical edge")
                if f in seen:
                    raise InputError(f"edge {edge_key(e)} lists {edge_key(f)} twice")
                seen.add(f)
            partner_sets[e] = seen
        for e, partners in partner_sets.items():
            for f in partners:
                if e not in partner_sets[f]:
                    raise InputError(
                        f"asymmetric lists: {edge_key(f)} in l({edge_key(e)}) "
                        f"but not conversely")

    @classmethod
    def from_sequences(cls, graph: AbstractGraph, lists: dict,
                       directions: Optional[Iterable] = None) -> "CrossingLists":
        if directions is None:
            directions = default_directions(graph)
        directions = tuple(tuple(d) for d in directions)
        norm = {}
        for de in directions:
            seq = lists.get(de, lists.get(edge(*de), ()))
            norm[de] = tuple(frozenset(f) for f in seq)
        return cls(graph, directions, norm)

    def crossing_pairs(self) -> frozenset:
        pairs = set()
        for (u, v), seq in self.lists.items():
            e = edge(u, v)
            for f in seq:
                pairs.add(frozenset((e, f)))
        return frozenset(pairs)

    def pattern(self) -> CrossingPattern:
        return CrossingPattern(self.graph, frozenset(self.crossing_pairs()))

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph.to_json_dict(),
            "directions": [[str(u), str(v)] for u, v in self.directions],
            "lists": {
                f"{u}->{v}": [[str(a) for a in edge_key(f)] for f in self.lists[(u, v)]]
                for u, v in self.directions
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CrossingLists":
        graph = AbstractGraph.from_json_dict(data["graph"])
        directions = tuple(tuple(d) for d in data["directions"])
        lists = {}
        for key, seq in data["lists"].items():
            u, _, v = key.partition("->")
            lists[(u, v)] = tuple(frozenset(f) for f in seq)
        return cls(graph, directions, lists)


def default_directions(graph: AbstractGraph) -> tuple:
    return tuple(tuple(edge_key(e)) for e in graph.sorted_edges())


def reverse_spec(spec: CrossingLists) -> CrossingLists:
    """The same specification with every edge direction (and list) reversed."""
    directions = tuple((v, u) for u, v in spec.directions)
    lists = {(v, u): tuple(reversed(spec.lists[(u, v)])) for u, v in spec.directions}
    return CrossingLists(spec.graph, directions, lists)


def relabel_spec(spec: CrossingLists, mapping: dict) -> CrossingLists:
    """Push the specification through a vertex bijection."""

    def mv(v):
        return mapping[v]

    def me(e: Edge) -> Edge:
        a, b = e
        return edge(mv(a), mv(b))

    graph = AbstractGraph(frozenset(mv(v) for v in spec.graph.vertices),
                          frozenset(me(e) for e in spec.graph.edges))
    directions = tuple((mv(u), mv(v)) for u, v in spec.directions)
    lists = {(mv(u), mv(v)): tuple(me(f) for f in spec.lists[(u, v)])
             for u, v in spec.directions}
    return CrossingLists(graph, directions, lists)


# ---------------------------------------------------------------------------
# The auxiliary graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuxiliaryGraph:
    graph: AbstractGraph
    crossing_vertices: frozenset
    subdivision_vertices: frozenset
    duplicate_edges: int  # bracing/path edges that coincided (as a set, harmless for planarity)


def _cross_name(e: Edge, f: Edge):
    return ("x",) + tuple(sorted((edge_key(e), edge_key(f)), key=repr))


def build_auxiliary_graph(spec: CrossingLists) -> AuxiliaryGraph:
    """Planarize, subdivide, and brace a crossing specification.

    Each directed edge u->v becomes the path u, {e,f1}, ..., {e,fm}, v
    following its crossing list; crossing vertices are shared between the
    two lists naming them.  Every edge joining two crossing vertices is
    subdivided once.  Each crossing vertex has exactly four neighbors after
    subdivision, two along each of its edges, and the four "diagonal" pairs
    between the two sides are braced.
    """
    paths = {}
    crossing_vertices = set()
    for de in spec.directions:
        e = edge(*de)
        nodes = [de[0]]
        for f in spec.lists[de]:
            x = _cross_name(e, f)
            crossing_vertices.add(x)
            nodes.append(x)
        nodes.append(de[1])
        paths[de] = nodes

    subdivision_vertices = set()
    final_paths = {}
    for de, nodes in paths.items():
        seq = [nodes[0]]
        for i, (a, b) in enumerate(zip(nodes, nodes[1:])):
            if a in crossing_vertices and b in crossing_vertices:
                s = ("s", de, i)
                subdivision_vertices.add(s)
                seq.append(s)
            seq.append(b)
        final_paths[de] = seq

    edges = set()
    duplicates = 0

    def add(a, b):
        nonlocal duplicates
        e = frozenset((a, b))
        if e in edges:
            duplicates += 1
        else:
            edges.add(e)

    for seq in final_paths.values():
        for a, b in zip(seq, seq[1:]):
            add(a, b)

    # bracing: the two path-neighbors along e against the two along f
    position = {}
    for de, seq in final_paths.items():
        e = edge(*de)
        for i, node in enumerate(seq):
            if node in crossing_vertices:
                position[(node, e)] = (seq[i - 1], seq[i + 1])
    for x in sorted(crossing_vertices, key=repr):
        e, f = frozenset(x[1]), frozenset(x[2])
        a, b = position[(x, e)]
        c, d = position[(x, f)]
        if len({a, b, c, d}) != 4:
            raise InputError(f"crossing vertex {x} does not have four distinct neighbors")
        add(a, c)
        add(a, d)
        add(b, c)
        add(b, d)

    vertices = set(spec.graph.vertices) | crossing_vertices | subdivision_vertices
    return AuxiliaryGraph(
        AbstractGraph(frozenset(vertices), frozenset(edges)),
        frozenset(crossing_vertices),
        frozenset(subdivision_vertices),
        duplicates,
    )


def expected_auxiliary_counts(spec: CrossingLists) -> tuple:
    """(vertex count, edge count before set collapse) implied by the construction."""
    n = len(spec.graph.vertices)
    lengths = [len(spec.lists[de]) for de in spec.directions]
    crossings = sum(lengths) // 2
    subdivisions = sum(max(0, m - 1) for m in lengths)
    path_edges = sum(1 if m == 0 else 2 * m for m in lengths)
    return n + crossings + subdivisions, path_edges + 4 * crossings


def is_realizable(spec: CrossingLists) -> bool:
    """Does a simple drawing with exactly these ordered crossings exist?"""
    return lr_planar(build_auxiliary_graph(spec).graph)


def _realizable_from_json(data: dict) -> bool:
    return is_realizable(CrossingLists.from_json_dict(data))


# ---------------------------------------------------------------------------
# Enumeration of crossing orders
# ---------------------------------------------------------------------------


def enumerate_crossing_lists(graph: AbstractGraph, crossing_set: Iterable,
                             directions: Optional[tuple] = None) -> Iterator[CrossingLists]:
    """All specifications whose unordered crossing pairs equal ``crossing_set``.

    The stream is the Cartesian product, over edges in canonical order, of
    all permutations of each edge's crossing partners -- deterministic
    lexicographic order.
    """
    pairs = set()
    for pair in crossing_set:
        e, f = tuple(pair)
        e, f = frozenset(e), frozenset(f)
        if e & f:
            raise InputError(f"adjacent edges {edge_key(e)}, {edge_key(f)} cannot cross")
        if e not in graph.edges or f not in graph.edges:
            raise InputError("crossing set names an unknown edge")
        pairs.add(frozenset((e, f)))
    if directions is None:
        directions = default_directions(graph)
    partners = {edge(u, v): [] for u, v in directions}
    for pair in sorted(pairs, key=lambda p: tuple(sorted(map(edge_key, p)))):
        e, f = sorted(pair, key=edge_key)
        partners[e].append(f)
        partners[f].append(e)
    for seq in partners.values():
        seq.sort(key=edge_key)
    per_edge = [list(permutations(partners[edge(u, v)])) for u, v in directions]
    for combo in product(*per_edge):
        lists = {de: tuple(seq) for de, seq in zip(directions, combo)}
        yield CrossingLists(graph, directions, lists)


# ---------------------------------------------------------------------------
# The 6-cycle audit
# ---------------------------------------------------------------------------


def c6_edge(i: int) -> Edge:
    return edge(i % 6, (i + 1) % 6)


def c6_mandatory_pairs() -> frozenset:
    """End-edge pairs of all 3-edge paths of the 6-cycle.

    These pairs must cross in any local-thrackle drawing; deriving them from
    the path enumeration (rather than hardcoding index arithmetic) keeps the
    audit honest.
    """
    g = cycle_graph(6)
    pairs = set()
    for path in three_edge_paths(g):
        first, _, last = path.edges
        pairs.add(frozenset((first, last)))
    return frozenset(pairs)


def c6_opposite_pairs() -> tuple:
    return tuple(frozenset((c6_edge(i), c6_edge(i + 3))) for i in range(3))


def c6_thrackle_set() -> frozenset:
    return frozenset(set(c6_mandatory_pairs()) | set(c6_opposite_pairs()))


def c6_local_thrackle_sets(excluded_pair: frozenset) -> list:
    """The four crossing sets: mandatory pairs, excluded opposite pair absent,
    free choice on the other two opposite pairs."""
    others = [p for p in c6_opposite_pairs() if p != excluded_pair]
    if len(others) != 2:
        raise InputError("excluded pair must be one of the three opposite pairs")
    sets = []
    for take in product((False, True), repeat=2):
        chosen = set(c6_mandatory_pairs())
        for yes, pair in zip(take, others):
            if yes:
                chosen.add(pair)
        sets.append(frozenset(chosen))
    return sets


@dataclass
class AuditReport:
    tested: int = 0
    realizable: int = 0
    witnesses: list = field(default_factory=list)
    per_set: list = field(default_factory=list)
    symmetry: dict = field(default_factory=dict)
    witness_cap: int = 10

    def to_json_dict(self) -> dict:
        return {
            "tested": self.tested,
            "realizable": self.realizable,
            "witnesses": self.witnesses,
            "per_set": self.per_set,
            "symmetry": self.symmetry,
        }


def _audit_crossing_sets(graph: AbstractGraph, crossing_sets: Iterable,
                         jobs: int = 1, stop_at_first: bool = False,
                         witness_cap: int = 10) -> AuditReport:
    report = AuditReport(witness_cap=witness_cap)
    for cs in crossing_sets:
        tested = realizable = 0
        specs = enumerate_crossing_lists(graph, cs)
        if jobs > 1:
            payloads = [spec.to_json_dict() for spec in specs]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                verdicts = pool.map(_realizable_from_json, payloads, chunksize=64)
                for payload, ok in zip(payloads, verdicts):
                    tested += 1
                    if ok:
                        realizable += 1
                        if len(report.witnesses) < witness_cap:
                            report.witnesses.append(payload)
                        if stop_at_first:
                            break
        else:
            for spec in specs:
                tested += 1
                if is_realizable(spec):
                    realizable += 1
                    if len(report.witnesses) < witness_cap:
                        report.witnesses.append(spec.to_json_dict())
                    if stop_at_first:
                        break
        report.tested += tested
        report.realizable += realizable
        report.per_set.append({
            "crossings": sorted(
                [sorted(map(list, map(edge_key, pair))) for pair in cs]),
            "tested": tested,
            "realizable": realizable,
        })
        if stop_at_first and realizable:
            break
    return report


def c6_local_thrackle_audit(jobs: int = 1, symmetry_check: bool = True) -> AuditReport:
    """Exhaustively test all local-thrackle, non-thrackle 6-cycle specifications.

    The primary run excludes the opposite pair {e0, e3} from crossing; the
    symmetry check repeats the audit with each of the other two opposite
    pairs excluded and records their (expectedly identical) outcomes.
    """
    graph = cycle_graph(6)
    opposite = c6_opposite_pairs()
    report = _audit_crossing_sets(graph, c6_local_thrackle_sets(opposite[0]), jobs=jobs)
    if symmetry_check:
        for pair in opposite:
            sub = _audit_crossing_sets(graph, c6_local_thrackle_sets(pair), jobs=jobs)
            key = "excluded " + " x ".join(str(sorted(edge_key(e))) for e in sorted(pair, key=edge_key))
            report.symmetry[key] = {"tested": sub.tested, "realizable": sub.realizable}
    return report


def c6_thrackle_control(jobs: int = 1, stop_at_first: bool = True) -> AuditReport:
    """Control run: the full thrackle crossing set must admit a realizable order."""
    graph = cycle_graph(6)
    return _audit_crossing_sets(graph, [c6_thrackle_set()], jobs=jobs,
                                stop_at_first=stop_at_first)


def load_spec(path: str) -> CrossingLists:
    with open(path) as fh:
        return CrossingLists.from_json_dict(json.load(fh))
