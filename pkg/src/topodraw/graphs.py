"""Abstract graphs and crossing patterns.

A crossing pattern is the weak-isomorphism-level description of a simple
drawing: the underlying graph plus the set of unordered edge pairs that
cross.  This module holds the purely combinatorial predicates (thrackle,
local thrackle, plane / self-intersecting paths), the brute-force matcher
against the canonical two-line bipartite pattern, and the abstract-graph
classifiers used by the geometric characterization (caterpillars, spiked
cycles, theta graphs).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional

from .errors import InputError

Edge = frozenset

#: Orderings of a bipartite pattern are brute-forced; k!^2 stays trivial
#: up to this part size and explodes quickly beyond it.
TWO_LINE_ORDER_CAP = 5


def edge(u, v) -> Edge:
    if u == v:
        raise InputError(f"self-loop at {u!r}")
    return frozenset((u, v))


def _skey(v) -> str:
    return str(v)


def edge_key(e: Edge) -> tuple:
    return tuple(sorted(e, key=_skey))


@dataclass(frozen=True)
class AbstractGraph:
    """Finite simple undirected graph over opaque hashable vertex ids."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            if not isinstance(e, frozenset) or len(e) != 2:
                raise InputError(f"edge {e!r} is not an unordered pair of distinct vertices")
            if not e <= self.vertices:
                raise InputError(f"edge {edge_key(e)} has an undeclared endpoint")

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "AbstractGraph":
        es = set()
        vs = set(vertices)
        for u, v in edges:
            es.add(edge(u, v))
            vs.add(u)
            vs.add(v)
        return cls(frozenset(vs), frozenset(es))

    def sorted_vertices(self) -> list:
        return sorted(self.vertices, key=_skey)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=edge_key)

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = e
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def connected_components(self) -> list[frozenset]:
        adj = self.adjacency()
        seen = set()
        comps = []
        for start in self.sorted_vertices():
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def subgraph(self, vertices) -> "AbstractGraph":
        vs = frozenset(vertices)
        return AbstractGraph(vs, frozenset(e for e in self.edges if e <= vs))

    def without_edge(self, e: Edge) -> "AbstractGraph":
        return AbstractGraph(self.vertices, self.edges - {e})

    def to_json_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.sorted_vertices()],
            "edges": [[str(a) for a in edge_key(e)] for e in self.sorted_edges()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "AbstractGraph":
        try:
            vertices = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"graph JSON must have 'vertices' and 'edges': {exc}")
        return cls.from_edges([tuple(e) for e in edges], vertices)


def complete_graph(vertices: Iterable) -> AbstractGraph:
    vs = list(vertices)
    return AbstractGraph.from_edges(combinations(vs, 2), vs)


def complete_bipartite(us: Iterable, vs: Iterable) -> AbstractGraph:
    us, vs = list(us), list(vs)
    return AbstractGraph.from_edges(((u, v) for u in us for v in vs), us + vs)


def cycle_graph(n: int) -> AbstractGraph:
    """Cycle on vertices 0..n-1 with edges {i, i+1 mod n}."""
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return AbstractGraph.from_edges([(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> AbstractGraph:
    return AbstractGraph.from_edges([(i, i + 1) for i in range(n - 1)], range(n))


# ---------------------------------------------------------------------------
# Crossing patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternViolation:
    rule: str
    edges: tuple

    def describe(self) -> str:
        return f"{self.rule}: {[edge_key(e) if isinstance(e, frozenset) else e for e in self.edges]}"


@dataclass(frozen=True)
class PatternReport:
    valid: bool
    violations: tuple = ()


@dataclass(frozen=True)
class CrossingPattern:
    """A graph together with the set of unordered crossing edge pairs."""

    graph: AbstractGraph
    crossings: frozenset  # of frozenset({edge, edge})

    @classmethod
    def from_pairs(cls, graph: AbstractGraph, pairs: Iterable) -> "CrossingPattern":
        xs = set()
        for e, f in pairs:
            e = frozenset(e)
            f = frozenset(f)
            if e == f:
                raise InputError(f"crossing pair repeats the edge {edge_key(e)}")
            xs.add(frozenset((e, f)))
        return cls(graph, frozenset(xs))

    def crosses(self, e: Edge, f: Edge) -> bool:
        return frozenset((e, f)) in self.crossings

    def sorted_crossings(self) -> list[tuple]:
        return sorted((tuple(sorted(pair, key=edge_key)) for pair in self.crossings),
                      key=lambda p: (edge_key(p[0]), edge_key(p[1])))

    def to_json_dict(self) -> dict:
        d = self.graph.to_json_dict()
        d["crossings"] = [
            [[str(x) for x in edge_key(e)], [str(x) for x in edge_key(f)]]
            for e, f in self.sorted_crossings()
        ]
        return d

    @classmethod
    def from_json_dict(cls, data: dict) -> "CrossingPattern":
        graph = AbstractGraph.from_json_dict(data)
        pairs = data.get("crossings", [])
        return cls.from_pairs(graph, [(tuple(e), tuple(f)) for e, f in pairs])


def validate_simple_pattern(pattern: CrossingPattern) -> PatternReport:
    """Check the simple-drawing invariants of a crossing pattern.

    Violations are data, not failures: each one names the offending edge
    pair and the rule it breaks.
    """
    violations = []
    for pair in pattern.crossings:
        es = tuple(sorted(pair, key=edge_key))
        if len(es) != 2:
            violations.append(PatternViolation("malformed crossing pair", es))
            continue
        e, f = es
        if e not in pattern.graph.edges or f not in pattern.graph.edges:
            violations.append(PatternViolation("unknown edge", es))
        elif e & f:
            violations.append(PatternViolation("adjacent edges cross", es))
    return PatternReport(valid=not violations, violations=tuple(violations))


def _require_valid(pattern: CrossingPattern) -> None:
    report = validate_simple_pattern(pattern)
    if not report.valid:
        raise InputError(
            "invalid crossing pattern: " + "; ".join(v.describe() for v in report.violations)
        )


@dataclass(frozen=True)
class PathWitness:
    """A path given by its vertex sequence; edges are the consecutive pairs."""

    vertices: tuple

    @property
    def edges(self) -> tuple:
        return tuple(edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, graph: AbstractGraph) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("path repeats a vertex")
        for e in self.edges:
            if e not in graph.edges:
                raise InputError(f"path uses non-edge {edge_key(e)}")


def independent_edge_pairs(graph: AbstractGraph) -> Iterator[tuple]:
    for e, f in combinations(graph.sorted_edges(), 2):
        if not (e & f):
            yield e, f


def is_thrackle(pattern: CrossingPattern):
    """True iff every vertex-disjoint edge pair crosses.

    Returns ``(True, None)`` or ``(False, (e, f))`` with one non-crossing
    independent pair as the counterexample.
    """
    _require_valid(pattern)
    for e, f in independent_edge_pairs(pattern.graph):
        if not pattern.crosses(e, f):
            return False, (e, f)
    return True, None


def three_edge_paths(graph: AbstractGraph) -> Iterator[PathWitness]:
    """All paths with 3 edges, each undirected path yielded exactly once."""
    adj = graph.adjacency()
    for mid in graph.sorted_edges():
        x, y = sorted(mid, key=_skey)
        for a in adj[x]:
            if a == y:
                continue
            for b in adj[y]:
                if b == x or b == a:
                    continue
                yield PathWitness((a, x, y, b))


def is_local_thrackle(pattern: CrossingPattern):
    """True iff the end edges of every 3-edge path cross.

    In a valid simple pattern adjacent edges never cross, so a 3-edge path
    is plane exactly when its end edges do not cross.  On failure returns a
    plane 3-path witness.
    """
    _require_valid(pattern)
    for path in three_edge_paths(pattern.graph):
        first, _, last = path.edges
        if not pattern.crosses(first, last):
            return False, path
    return True, None


def _path_search(pattern: CrossingPattern, k: int, want_plane: bool) -> Optional[PathWitness]:
    adj = pattern.graph.adjacency()
    order = pattern.graph.sorted_vertices()

    def extend(path: list, path_edges: list, crossing_seen: bool) -> Optional[tuple]:
        if len(path_edges) == k:
            if want_plane or crossing_seen:
                return tuple(path)
            return None
        last = path[-1]
        for nxt in sorted(adj[last], key=_skey):
            if nxt in path:
                continue
            e = edge(last, nxt)
            if want_plane and any(pattern.crosses(e, f) for f in path_edges):
                continue
            seen = crossing_seen or (not want_plane and any(pattern.crosses(e, f) for f in path_edges))
            path.append(nxt)
            path_edges.append(e)
            found = extend(path, path_edges, seen)
            path.pop()
            path_edges.pop()
            if found is not None:
                return found
        return None

    for start in order:
        found = extend([start], [], False)
        if found is not None:
            return PathWitness(found)
    return None


def find_plane_path(pattern: CrossingPattern, k: int) -> Optional[PathWitness]:
    """Exhaustively search for a k-edge path whose edges pairwise do not cross."""
    _require_valid(pattern)
    if k < 1:
        raise InputError("path length must be positive")
    return _path_search(pattern, k, want_plane=True)


def find_self_intersecting_path(pattern: CrossingPattern, k: int) -> Optional[PathWitness]:
    """Search for a k-edge path at least two of whose edges cross each other."""
    _require_valid(pattern)
    if k < 3:
        raise InputError("paths shorter than 3 edges cannot self-intersect in a simple drawing")
    return _path_search(pattern, k, want_plane=False)


# ---------------------------------------------------------------------------
# The canonical two-line bipartite pattern
# ---------------------------------------------------------------------------


def two_line_pattern(s: int, t: int) -> CrossingPattern:
    """Crossing pattern of the complete bipartite graph drawn on two vertical lines.

    Parts u1..us and v1..vt; edge u_i v_s crosses u_j v_t iff going from the
    first line to the second the two segments swap vertical order, i.e.
    (i < j) xor (s < t).  The geometry module reproduces this set from
    actual coordinates; here it is the combinatorial ground truth.
    """
    us = [f"u{i}" for i in range(1, s + 1)]
    vs = [f"v{j}" for j in range(1, t + 1)]
    graph = complete_bipartite(us, vs)
    crossings = []
    for i, j in combinations(range(s), 2):
        for a, b in combinations(range(t), 2):
            # i < j and a < b: the crossing pair joins u_i to the later v
            crossings.append((edge(us[i], vs[b]), edge(us[j], vs[a])))
    return CrossingPattern.from_pairs(graph, crossings)


def matches_two_line_order(pattern: CrossingPattern, ordered_u: tuple, ordered_v: tuple) -> bool:
    """Does the pattern equal the canonical two-line crossing set under these orders?"""
    k = len(ordered_u)
    for i, j in combinations(range(k), 2):
        for a, b in combinations(range(len(ordered_v)), 2):
            must = edge(ordered_u[i], ordered_v[b]), edge(ordered_u[j], ordered_v[a])
            must_not = edge(ordered_u[i], ordered_v[a]), edge(ordered_u[j], ordered_v[b])
            if not pattern.crosses(*must):
                return False
            if pattern.crosses(*must_not):
                return False
    return True


def two_line_orderings(pattern: CrossingPattern, part_u: Iterable, part_v: Iterable):
    """Find vertex orders of the two parts under which the pattern is the two-line one.

    Brute force over all pairs of orderings; returns ``(ordered_u, ordered_v)``
    or None.  The part sizes must be equal and at most TWO_LINE_ORDER_CAP.
    """
    _require_valid(pattern)
    part_u, part_v = list(part_u), list(part_v)
    k = len(part_u)
    if len(part_v) != k:
        raise InputError("both parts must have the same size")
    if k > TWO_LINE_ORDER_CAP:
        raise InputError(
            f"part size {k} exceeds the brute-force cap {TWO_LINE_ORDER_CAP}"
        )
    expected = complete_bipartite(part_u, part_v)
    if pattern.graph.vertices != expected.vertices or pattern.graph.edges != expected.edges:
        raise InputError("pattern graph is not the complete bipartite graph on the given parts")
    # Necessary count: one crossing per (pair from U, pair from V).
    if len(pattern.crossings) != (k * (k - 1) // 2) ** 2:
        return None
    for pu in permutations(part_u):
        for pv in permutations(part_v):
            if matches_two_line_order(pattern, pu, pv):
                return pu, pv
    return None


# ---------------------------------------------------------------------------
# Theta graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaWitness:
    hubs: tuple
    paths: tuple  # three vertex sequences hub1 .. hub2 of length 3 each


def theta_three_graph() -> AbstractGraph:
    """Two hubs joined by three internally disjoint paths of three edges each."""
    edges = []
    for i in range(3):
        a, b = f"a{i}", f"b{i}"
        edges += [("x", a), (a, b), (b, "y")]
    return AbstractGraph.from_edges(edges)


def find_theta_three(graph: AbstractGraph) -> Optional[ThetaWitness]:
    """Search for two vertices joined by three internally disjoint 3-edge paths."""
    adj = graph.adjacency()
    vertices = graph.sorted_vertices()
    for x, y in combinations(vertices, 2):
        middles = []
        for a in adj[x]:
            if a in (x, y):
                continue
            for b in adj[a]:
                if b in (x, y, a):
                    continue
                if y in adj[b]:
                    middles.append((a, b))
        # pick three pairwise disjoint middle pairs
        def pick(start: int, chosen: list) -> Optional[list]:
            if len(chosen) == 3:
                return chosen
            for idx in range(start, len(middles)):
                a, b = middles[idx]
                if any(a in m or b in m for m in chosen):
                    continue
                res = pick(idx + 1, chosen + [(a, b)])
                if res is not None:
                    return res
            return None

        chosen = pick(0, [])
        if chosen is not None:
            paths = tuple((x, a, b, y) for a, b in chosen)
            return ThetaWitness((x, y), paths)
    return None


# ---------------------------------------------------------------------------
# Caterpillars, spiked cycles, and the geometric drawability classifiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentCertificate:
    vertices: tuple
    kind: str  # "caterpillar" | "spiked-cycle" | "other"
    cycle_length: int = 0

    @property
    def is_caterpillar(self) -> bool:
        return self.kind == "caterpillar"

    @property
    def is_spiked_cycle(self) -> bool:
        return self.kind == "spiked-cycle"


@dataclass(frozen=True)
class ClassificationResult:
    verdict: bool
    components: tuple
    reason: str = ""


def _is_path_shape(graph: AbstractGraph) -> bool:
    """Is the graph a simple path (possibly a single vertex or empty)?"""
    n = len(graph.vertices)
    if n == 0:
        return True
    if len(graph.edges) != n - 1:
        return False
    if len(graph.connected_components()) != 1:
        return False
    degs = Counter(graph.degree(v) for v in graph.vertices)
    return all(d <= 2 for d in degs)


def classify_component(graph: AbstractGraph, comp: frozenset) -> ComponentCertificate:
    sub = graph.subgraph(comp)
    n, m = len(sub.vertices), len(sub.edges)
    cert_vertices = tuple(sorted(comp, key=_skey))

    if m == n - 1:  # tree: caterpillar iff stripping leaves leaves a path
        non_leaves = frozenset(v for v in sub.vertices if sub.degree(v) >= 2)
        if _is_path_shape(sub.subgraph(non_leaves)):
            return ComponentCertificate(cert_vertices, "caterpillar")
        return ComponentCertificate(cert_vertices, "other")

    if m == n:  # exactly one cycle
        # iteratively strip degree-1 vertices to expose the cycle
        core = set(sub.vertices)
        adj = {v: set(ns) for v, ns in sub.adjacency().items()}
        stack = [v for v in core if len(adj[v]) <= 1]
        while stack:
            v = stack.pop()
            if v not in core:
                continue
            core.discard(v)
            for w in adj[v]:
                adj[w].discard(v)
                if w in core and len(adj[w]) <= 1:
                    stack.append(w)
        # spiked cycle: every vertex off the cycle is a leaf of the component
        if all(sub.degree(v) == 1 for v in sub.vertices if v not in core):
            return ComponentCertificate(cert_vertices, "spiked-cycle", cycle_length=len(core))
        return ComponentCertificate(cert_vertices, "other")

    return ComponentCertificate(cert_vertices, "other")


def classify_geometric_local_thrackleable(graph: AbstractGraph) -> ClassificationResult:
    """Can the graph be drawn with straight segments so that no 3-edge path is plane?

    Holds exactly when every component is a caterpillar, a spiked cycle of
    odd length, or a spiked cycle of even length at least eight.
    """
    certs = tuple(classify_component(graph, comp) for comp in graph.connected_components())
    for cert in certs:
        if cert.is_caterpillar:
            continue
        if cert.is_spiked_cycle:
            L = cert.cycle_length
            if L % 2 == 1 or L >= 8:
                continue
            return ClassificationResult(False, certs, f"even spiked cycle of length {L} < 8")
        return ClassificationResult(False, certs, "component is neither caterpillar nor spiked cycle")
    return ClassificationResult(True, certs)


def classify_geometric_thrackleable(graph: AbstractGraph) -> ClassificationResult:
    """Can the graph be drawn with straight segments so that all independent edges cross?

    Holds exactly when the graph is a disjoint union of caterpillars, or one
    odd spiked cycle together with isolated vertices.
    """
    certs = tuple(classify_component(graph, comp) for comp in graph.connected_components())
    if all(c.is_caterpillar for c in certs):
        return ClassificationResult(True, certs)
    spiked = [c for c in certs if c.is_spiked_cycle and c.cycle_length % 2 == 1]
    others = [c for c in certs if not (c.is_spiked_cycle and c.cycle_length % 2 == 1)]
    if len(spiked) == 1 and all(len(c.vertices) == 1 for c in others):
        return ClassificationResult(True, certs)
    return ClassificationResult(False, certs, "not caterpillars only, nor one odd spiked cycle plus isolated vertices")


# ---------------------------------------------------------------------------
# JSON convenience
# ---------------------------------------------------------------------------


def load_graph(path: str) -> AbstractGraph:
    with open(path) as fh:
        return AbstractGraph.from_json_dict(json.load(fh))


def load_pattern(path: str) -> CrossingPattern:
    with open(path) as fh:
        return CrossingPattern.from_json_dict(json.load(fh))
