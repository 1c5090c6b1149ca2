"""Monotone-path / monochromatic-clique machinery and the extraction pipeline.

Given a 5-colored complete ordered graph with more than t*m^4 vertices,
either some color in 1..4 carries a monotone path of m edges or some t+1
vertices have identical longest-path labels and hence induce a clique in
color 5.  On order-type tables of genuine simple drawings the per-color
graphs are transitive, so a monotone path upgrades to a clique; labeling
pairs of the second part by these cliques and finding a monochromatically
labeled subset extracts a sub-drawing weakly isomorphic to the two-line
pattern.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Optional

from .errors import BudgetExceededError, InconsistencyError, InputError
from .graphs import CrossingPattern, complete_bipartite, edge, matches_two_line_order
from .tables import TypeTable

PATH_COLORS = (1, 2, 3, 4)
CLIQUE_COLOR = 5


@dataclass(frozen=True)
class OrderedColoredGraph:
    """Complete graph on 0..n-1 with every pair colored.

    Colors are arbitrary hashable labels; the path/clique step additionally
    requires them to be the order types 1..5.
    """

    n: int
    colors: Mapping  # (i, j) with i<j -> color

    def __post_init__(self):
        for i, j in combinations(range(self.n), 2):
            if (i, j) not in self.colors:
                raise InputError(f"pair {(i, j)} is uncolored; the graph must be complete")

    def color(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self.colors[(i, j)]


@dataclass(frozen=True)
class MonotonePathWitness:
    color: int
    vertices: tuple  # strictly increasing


@dataclass(frozen=True)
class CliqueWitness:
    color: int
    vertices: tuple


def _verify_monotone_path(g: OrderedColoredGraph, w: MonotonePathWitness) -> None:
    if any(a >= b for a, b in zip(w.vertices, w.vertices[1:])):
        raise InconsistencyError("path is not monotone")
    if any(g.color(a, b) != w.color for a, b in zip(w.vertices, w.vertices[1:])):
        raise InconsistencyError("path is not monochromatic")


def _verify_clique(g: OrderedColoredGraph, w: CliqueWitness) -> None:
    if any(g.color(a, b) != w.color for a, b in combinations(w.vertices, 2)):
        raise InconsistencyError("clique is not monochromatic")


def monotone_path_or_clique(g: OrderedColoredGraph, m: int, t: int):
    """A monotone m-edge path in a color 1..4, or a (t+1)-clique in color 5.

    One left-to-right pass computes, per vertex and path color, the longest
    monotone monochromatic path ending there.  If no label coordinate
    reaches m, vertices sharing a label 4-tuple pairwise join in color 5.
    Returns None only when the graph has at most t*m^4 vertices; beyond
    that the pigeonhole guarantees a witness.

    Witnesses are deterministic: the lexicographically smallest (color,
    vertex set) available.
    """
    if m < 1 or t < 1:
        raise InputError("m and t must be positive")
    if any(c not in (1, 2, 3, 4, 5) for c in g.colors.values()):
        raise InputError("the path/clique step needs colors in 1..5")
    n = g.n
    longest = [[0] * 5 for _ in range(n)]  # [v][c-1] for c in 1..4; [4] unused
    for j in range(n):
        for i in range(j):
            c = g.color(i, j)
            if c == CLIQUE_COLOR:
                continue
            if longest[j][c - 1] < longest[i][c - 1] + 1:
                longest[j][c - 1] = longest[i][c - 1] + 1

    # longest path starting at v, per color, for lexicographic reconstruction
    reach = [[0] * 4 for _ in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            c = g.color(i, j)
            if c == CLIQUE_COLOR:
                continue
            if reach[i][c - 1] < reach[j][c - 1] + 1:
                reach[i][c - 1] = reach[j][c - 1] + 1

    for c in PATH_COLORS:
        if max((longest[v][c - 1] for v in range(n)), default=0) < m:
            continue
        # greedy lexicographically smallest m-edge monotone path in color c
        start = next(v for v in range(n) if reach[v][c - 1] >= m)
        path = [start]
        remaining = m
        while remaining:
            cur = path[-1]
            nxt = next(w for w in range(cur + 1, n)
                       if g.color(cur, w) == c and reach[w][c - 1] >= remaining - 1)
            path.append(nxt)
            remaining -= 1
        witness = MonotonePathWitness(c, tuple(path))
        _verify_monotone_path(g, witness)
        return witness

    classes = defaultdict(list)
    for v in range(n):
        classes[tuple(longest[v][:4])].append(v)
    candidates = [tuple(sorted(vs)[: t + 1]) for vs in classes.values() if len(vs) > t]
    if candidates:
        S = min(candidates)
        witness = CliqueWitness(CLIQUE_COLOR, S)
        _verify_clique(g, witness)  # forced by the label argument
        return witness
    if n > t * m ** 4:
        raise InconsistencyError("pigeonhole guarantee violated; labeling bug")
    return None


def find_monochromatic_clique(g: OrderedColoredGraph, k: int,
                              budget: int = 2_000_000) -> Optional[CliqueWitness]:
    """Exhaustive monochromatic k-clique search over all colors.

    Colors here may be arbitrary hashable labels, not just 1..5.  Raises
    BudgetExceededError instead of returning an unverified "none" when the
    search space is too large.
    """
    if k < 1:
        raise InputError("k must be positive")
    by_color = defaultdict(set)
    for (i, j), c in g.colors.items():
        by_color[c].add((i, j))
    explored = 0
    for c in sorted(by_color, key=repr):
        pairs = by_color[c]
        adj = defaultdict(set)
        for i, j in pairs:
            adj[i].add(j)
            adj[j].add(i)
        vertices = sorted(adj)
        if k == 1:
            if g.n:
                return CliqueWitness(c, (0,))
            continue

        found = None

        def extend(clique, candidates):
            nonlocal explored, found
            if found is not None:
                return
            explored += 1
            if explored > budget:
                raise BudgetExceededError(f"clique search exceeded {budget} nodes")
            if len(clique) == k:
                found = tuple(clique)
                return
            for v in list(candidates):
                if found is not None:
                    return
                if len(clique) + 1 + sum(1 for u in candidates if u > v) < k:
                    break
                extend(clique + [v], [u for u in candidates if u > v and u in adj[v]])

        extend([], vertices)
        if found is not None:
            return CliqueWitness(c, found)
    return None


# ---------------------------------------------------------------------------
# Transitivity of per-type ordered graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransitivityViolation:
    order_type: int
    s: int
    t: int
    triple: tuple  # i < j < l with (i,j), (j,l) of the type but not (i,l)


def check_type_transitivity(table: TypeTable) -> Optional[TransitivityViolation]:
    """First triple violating transitivity of a type-w graph, or None."""
    nu = len(table.part_u)
    for s, t in table.v_pairs():
        for i, j, l in combinations(range(nu), 3):
            for w in PATH_COLORS:
                if (table.type_at(i, j, s, t) == w
                        and table.type_at(j, l, s, t) == w
                        and table.type_at(i, l, s, t) != w):
                    return TransitivityViolation(w, s, t, (i, j, l))
    return None


# ---------------------------------------------------------------------------
# End-to-end extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtractionResult:
    status: str  # "success" | "plane-bipartite" | "transitivity-violation"
    #            | "insufficient-u" | "insufficient-v"
    subset_u: tuple = ()      # indices into table.part_u
    subset_v: tuple = ()      # indices into table.part_v
    order_type: int = 0
    ordering_u: tuple = ()    # vertex labels, in two-line order
    ordering_v: tuple = ()
    violation: Optional[TransitivityViolation] = None

    @property
    def success(self) -> bool:
        return self.status == "success"

    def to_json_dict(self) -> dict:
        d = {"status": self.status}
        if self.status == "success":
            d.update({
                "S": list(self.subset_u),
                "T": list(self.subset_v),
                "type": self.order_type,
                "orderings": {"U": list(self.ordering_u), "V": list(self.ordering_v)},
            })
        elif self.status == "plane-bipartite":
            d.update({"S": list(self.subset_u), "T": list(self.subset_v), "type": 5})
        elif self.status == "transitivity-violation" and self.violation is not None:
            v = self.violation
            d["violation"] = {"type": v.order_type, "v_pair": [v.s, v.t], "triple": list(v.triple)}
        return d


def _pattern_from_table(table: TypeTable, subset_u, subset_v) -> CrossingPattern:
    """Crossing pattern of the sub-drawing on (subset_u, subset_v) implied by types."""
    labels_u = [table.part_u[i] for i in subset_u]
    labels_v = [table.part_v[s] for s in subset_v]
    graph = complete_bipartite(labels_u, labels_v)
    pairs = []
    for (ai, i), (aj, j) in combinations(list(enumerate(subset_u)), 2):
        for (bs, s), (bt, t) in combinations(list(enumerate(subset_v)), 2):
            w = table.type_at(i, j, s, t)
            if w in (1, 2):
                pairs.append((edge(labels_u[ai], labels_v[bt]), edge(labels_u[aj], labels_v[bs])))
            elif w in (3, 4):
                pairs.append((edge(labels_u[ai], labels_v[bs]), edge(labels_u[aj], labels_v[bt])))
    return CrossingPattern.from_pairs(graph, pairs)


def extract_two_line(table: TypeTable, k: int,
                     clique_budget: int = 2_000_000) -> ExtractionResult:
    """Find S in U and T in V on which every 4-tuple shares one crossing type.

    For each pair (s, t) of the second part, run the path-or-clique step on
    the type coloring of U with m = k-1 and t = 2; a path upgrades to a
    k-clique by transitivity (verified explicitly), a color-5 result yields
    a triangle.  Pairs of V are then labeled by their (type, clique), and a
    monochromatically labeled k-subset of V completes the extraction.  A
    common label of type 5 would force a plane drawing of a complete
    3-by-k bipartite graph, which is impossible for k >= 3 and reported as
    a failure certificate of the input.
    """
    if k < 2:
        raise InputError("k must be at least 2")
    nu, nv = len(table.part_u), len(table.part_v)
    if nv < k:
        return ExtractionResult("insufficient-v")

    labels = {}
    for s, t in table.v_pairs():
        colors = {(i, j): table.type_at(i, j, s, t) for i, j in table.u_pairs()}
        g = OrderedColoredGraph(nu, colors)
        witness = monotone_path_or_clique(g, m=k - 1, t=2)
        if witness is None:
            return ExtractionResult("insufficient-u")
        if isinstance(witness, MonotonePathWitness):
            S = witness.vertices[:k]
            w = witness.color
            if any(table.type_at(i, j, s, t) != w for i, j in combinations(S, 2)):
                # the path vertices fail to induce a clique, so some triple
                # inside S must break transitivity; locate and certify it
                for a, b, c in combinations(S, 3):
                    if (table.type_at(a, b, s, t) == w
                            and table.type_at(b, c, s, t) == w
                            and table.type_at(a, c, s, t) != w):
                        return ExtractionResult(
                            "transitivity-violation",
                            violation=TransitivityViolation(w, s, t, (a, b, c)))
                raise InconsistencyError("non-clique path without a violating triple")
        else:
            S = witness.vertices
            w = CLIQUE_COLOR
        labels[(s, t)] = (w, tuple(S))

    bound = 4 * _binom(nu, k) + _binom(nu, 3)
    if len(set(labels.values())) > bound:
        raise InconsistencyError("label count exceeds its combinatorial bound")

    clique = find_monochromatic_clique(OrderedColoredGraph(nv, labels), k,
                                       budget=clique_budget)
    if clique is None:
        return ExtractionResult("insufficient-v")
    w, S = clique.color
    T = clique.vertices
    if w == CLIQUE_COLOR:
        return ExtractionResult("plane-bipartite", subset_u=S, subset_v=T, order_type=5)

    # re-validate: every 4-tuple on (S, T) carries the common type
    for i, j in combinations(S, 2):
        for s, t in combinations(T, 2):
            if table.type_at(i, j, s, t) != w:
                raise InconsistencyError("extracted subset fails re-validation")

    pattern = _pattern_from_table(table, S, T)
    ordering_u = tuple(table.part_u[i] for i in S)
    asc = tuple(table.part_v[s] for s in T)
    desc = tuple(reversed(asc))
    matches = [ov for ov in (asc, desc) if matches_two_line_order(pattern, ordering_u, ov)]
    if len(matches) != 1:
        raise InconsistencyError(
            f"expected exactly one matching V-orientation, got {len(matches)}")
    return ExtractionResult("success", subset_u=S, subset_v=T, order_type=w,
                            ordering_u=ordering_u, ordering_v=matches[0])


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
