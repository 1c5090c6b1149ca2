"""Planarity testing.

Two independent routes are kept on purpose:

* ``lr_planar`` -- the left-right (de Fraysseix--Ossona de Mendez--
  Rosenstiehl) test, implemented from scratch.  Linear-time in spirit,
  comfortably fast at this package's scale, and able to emit a combinatorial
  embedding (rotation system) for planar graphs.
* ``planar_by_rotation_search`` -- a brute-force embedder that enumerates
  rotation systems per connected component and counts faces against Euler's
  formula.  Exponential, guarded by a budget; used to cross-validate the
  left-right test on small graphs.

``kuratowski_subgraph`` extracts a K5/K3,3-subdivision witness from a
non-planar graph by greedy edge deletion.

The left-right test follows the constraint-stack formulation: a DFS
orientation assigns each edge a lowpoint and a nesting depth, then a second
DFS maintains a stack of conflict pairs of back-edge intervals that must be
embedded on opposite sides of the spine; the graph is planar iff the
constraints never force two edges with distinct return heights onto the
same side of both halves of a pair.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Optional

from .errors import BudgetExceededError, InconsistencyError, InputError
from .graphs import AbstractGraph, Edge, edge, edge_key


class _NonPlanar(Exception):
    pass


class _Interval:
    __slots__ = ("low", "high")

    def __init__(self, low=None, high=None):
        self.low = low
        self.high = high

    def empty(self):
        return self.low is None and self.high is None

    def copy(self):
        return _Interval(self.low, self.high)


class _ConflictPair:
    __slots__ = ("left", "right")

    def __init__(self, left=None, right=None):
        self.left = left if left is not None else _Interval()
        self.right = right if right is not None else _Interval()

    def swap(self):
        self.left, self.right = self.right, self.left


class _LRPlanarity:
    def __init__(self, graph: AbstractGraph):
        self.adj = {v: sorted(ns, key=str) for v, ns in graph.adjacency().items()}
        self.roots = []
        self.height = {v: None for v in self.adj}
        self.parent_edge = {v: None for v in self.adj}
        self.lowpt = {}
        self.lowpt2 = {}
        self.nesting_depth = {}
        self.oriented = set()
        self.ordered_adjs = {}
        self.ref = {}
        self.side = {}
        self.S = []
        self.stack_bottom = {}
        self.lowpt_edge = {}

    # -- phase 1: DFS orientation with lowpoints ---------------------------

    def orient(self):
        for v in sorted(self.adj, key=str):
            if self.height[v] is None:
                self.height[v] = 0
                self.roots.append(v)
                self._dfs1(v)

    def _dfs1(self, root):
        stack = [(root, iter(self.adj[root]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if (v, w) in self.oriented or (w, v) in self.oriented:
                    continue
                e = (v, w)
                self.oriented.add(e)
                self.lowpt[e] = self.height[v]
                self.lowpt2[e] = self.height[v]
                if self.height[w] is None:  # tree edge
                    self.parent_edge[w] = e
                    self.height[w] = self.height[v] + 1
                    stack.append((w, iter(self.adj[w])))
                    advanced = True
                    break
                # back edge
                self.lowpt[e] = self.height[w]
                self._finish_edge(e, v)
            if not advanced:
                stack.pop()
                pe = self.parent_edge[v]
                if pe is not None:
                    self._finish_edge(pe, pe[0])

    def _finish_edge(self, e, v):
        """Set e's nesting depth and fold its lowpoints into its parent edge."""
        self.nesting_depth[e] = 2 * self.lowpt[e]
        if self.lowpt2[e] < self.height[v]:  # e is chordal
            self.nesting_depth[e] += 1
        pe = self.parent_edge[v]
        if pe is not None:
            if self.lowpt[e] < self.lowpt[pe]:
                self.lowpt2[pe] = min(self.lowpt[pe], self.lowpt2[e])
                self.lowpt[pe] = self.lowpt[e]
            elif self.lowpt[e] > self.lowpt[pe]:
                self.lowpt2[pe] = min(self.lowpt2[pe], self.lowpt[e])
            else:
                self.lowpt2[pe] = min(self.lowpt2[pe], self.lowpt2[e])

    # -- phase 2: testing ----------------------------------------------------

    def test(self) -> bool:
        for v in self.adj:
            self.ordered_adjs[v] = sorted(
                (w for w in self.adj[v]
                 if (v, w) in self.oriented),
                key=lambda w: (self.nesting_depth[(v, w)], str(w)))
        for e in self.oriented:
            self.ref[e] = None
            self.side[e] = 1
        try:
            for root in self.roots:
                self._dfs2(root)
        except _NonPlanar:
            return False
        return True

    def _dfs2(self, root):
        # iterative DFS mirroring the recursive structure: each frame walks the
        # ordered outgoing edges of v, recursing into tree edges
        stack = [(root, 0)]
        while stack:
            v, idx = stack.pop()
            adjs = self.ordered_adjs[v]
            descended = False
            while idx < len(adjs):
                w = adjs[idx]
                ei = (v, w)
                self.stack_bottom[ei] = len(self.S)
                if ei == self.parent_edge[w]:  # tree edge: descend
                    stack.append((v, idx))
                    stack.append((w, 0))
                    descended = True
                    break
                # back edge
                self.lowpt_edge[ei] = ei
                self.S.append(_ConflictPair(right=_Interval(ei, ei)))
                self._integrate(v, idx, ei)
                idx += 1
            if descended:
                continue
            e = self.parent_edge[v]
            if e is not None:
                self._remove_back_edges(e)
                # resume the parent frame's loop: integrate the finished tree edge
                pv, pidx = stack.pop()
                ei = (pv, self.ordered_adjs[pv][pidx])
                self._integrate(pv, pidx, ei)
                stack.append((pv, pidx + 1))

    def _integrate(self, v, idx, ei):
        """After processing outgoing edge ei of v, fold its constraints in."""
        if self.lowpt[ei] < self.height[v]:  # ei has a return edge
            first = self.ordered_adjs[v][0]
            e = self.parent_edge[v]
            if ei == (v, first):
                self.lowpt_edge[e] = self.lowpt_edge[ei]
            else:
                self._add_constraints(ei, e)

    def _conflicting(self, interval: _Interval, b) -> bool:
        return (not interval.empty()) and self.lowpt[interval.high] > self.lowpt[b]

    def _add_constraints(self, ei, e):
        P = _ConflictPair()
        # merge return edges of ei into P.right
        while True:
            Q = self.S.pop()
            if not Q.left.empty():
                Q.swap()
            if not Q.left.empty():
                raise _NonPlanar
            if self.lowpt[Q.right.low] > self.lowpt[e]:
                if P.right.empty():
                    P.right.high = Q.right.high
                else:
                    self.ref[P.right.low] = Q.right.high
                P.right.low = Q.right.low
            else:  # align
                self.ref[Q.right.low] = self.lowpt_edge[e]
            if len(self.S) == self.stack_bottom[ei]:
                break
        # merge conflicting return edges of earlier siblings into P.left
        while self.S and (self._conflicting(self.S[-1].left, ei)
                          or self._conflicting(self.S[-1].right, ei)):
            Q = self.S.pop()
            if self._conflicting(Q.right, ei):
                Q.swap()
            if self._conflicting(Q.right, ei):
                raise _NonPlanar
            # merge the part of Q.right below lowpt(ei) into P.right
            self.ref[P.right.low] = Q.right.high
            if Q.right.low is not None:
                P.right.low = Q.right.low
            if P.left.empty():
                P.left.high = Q.left.high
            else:
                self.ref[P.left.low] = Q.left.high
            P.left.low = Q.left.low
        if not (P.left.empty() and P.right.empty()):
            self.S.append(P)

    def _lowest(self, P: _ConflictPair) -> int:
        if P.left.empty():
            return self.lowpt[P.right.low]
        if P.right.empty():
            return self.lowpt[P.left.low]
        return min(self.lowpt[P.left.low], self.lowpt[P.right.low])

    def _remove_back_edges(self, e):
        u = e[0]
        # drop entire conflict pairs that return no lower than u
        while self.S and self._lowest(self.S[-1]) == self.height[u]:
            P = self.S.pop()
            if P.left.low is not None:
                self.side[P.left.low] = -1
        if self.S:  # one pair may need trimming
            P = self.S.pop()
            while P.left.high is not None and P.left.high[1] == u:
                P.left.high = self.ref[P.left.high]
            if P.left.high is None and P.left.low is not None:
                self.ref[P.left.low] = P.right.low
                self.side[P.left.low] = -1
                P.left.low = None
            while P.right.high is not None and P.right.high[1] == u:
                P.right.high = self.ref[P.right.high]
            if P.right.high is None and P.right.low is not None:
                self.ref[P.right.low] = P.left.low
                self.side[P.right.low] = -1
                P.right.low = None
            self.S.append(P)
        # the side of e is the side of a highest return edge
        if self.lowpt[e] < self.height[u]:
            top = self.S[-1]
            hl, hr = top.left.high, top.right.high
            if hl is not None and (hr is None or self.lowpt[hl] > self.lowpt[hr]):
                self.ref[e] = hl
            else:
                self.ref[e] = hr

    # -- phase 3: embedding ----------------------------------------------------

    def _sign(self, e) -> int:
        chain = []
        while self.ref[e] is not None:
            chain.append(e)
            e = self.ref[e]
        s = self.side[e]
        for e2 in reversed(chain):
            self.side[e2] *= s
            s = self.side[e2]
            self.ref[e2] = None
        return s

    def embedding(self) -> dict:
        """Rotation system of a planar graph: vertex -> clockwise neighbor list."""
        for e in self.oriented:
            self.nesting_depth[e] *= self._sign(e)
        rotations = {v: [] for v in self.adj}
        for v in self.adj:
            self.ordered_adjs[v] = sorted(
                (w for w in self.adj[v] if (v, w) in self.oriented),
                key=lambda w: (self.nesting_depth[(v, w)], str(w)))
            rotations[v] = list(self.ordered_adjs[v])
        left_ref = {}
        right_ref = {}

        def insert_after(v, w, ref):
            rotations[v].insert(rotations[v].index(ref) + 1, w)

        def insert_before(v, w, ref):
            rotations[v].insert(rotations[v].index(ref), w)

        for root in self.roots:
            stack = [(root, 0)]
            while stack:
                v, idx = stack.pop()
                adjs = self.ordered_adjs[v]
                descended = False
                while idx < len(adjs):
                    w = adjs[idx]
                    ei = (v, w)
                    idx += 1
                    if ei == self.parent_edge[w]:  # tree edge
                        rotations[w].insert(0, v)
                        left_ref[v] = w
                        right_ref[v] = w
                        stack.append((v, idx))
                        stack.append((w, 0))
                        descended = True
                        break
                    # back edge: insert the half-edge at the ancestor
                    if self.side[ei] == 1:
                        insert_after(w, v, right_ref[w])
                    else:
                        insert_before(w, v, left_ref[w])
                        left_ref[w] = v
                if descended:
                    continue
        return rotations


def _euler_reject(graph: AbstractGraph) -> bool:
    n, m = len(graph.vertices), len(graph.edges)
    return n >= 3 and m > 3 * n - 6


def lr_planar(graph: AbstractGraph) -> bool:
    """Left-right planarity test."""
    if _euler_reject(graph):
        return False
    lr = _LRPlanarity(graph)
    lr.orient()
    return lr.test()


def is_planar(graph: AbstractGraph) -> bool:
    return lr_planar(graph)


def planar_embedding(graph: AbstractGraph) -> Optional[dict]:
    """Rotation system for a planar graph, or None if the graph is not planar."""
    if _euler_reject(graph):
        return None
    lr = _LRPlanarity(graph)
    lr.orient()
    if not lr.test():
        return None
    return lr.embedding()


def count_faces(graph: AbstractGraph, rotations: dict) -> int:
    """Number of face orbits of a rotation system (graph must have an edge)."""
    darts = set()
    for e in graph.edges:
        u, v = e
        darts.add((u, v))
        darts.add((v, u))
    index = {v: {w: i for i, w in enumerate(ns)} for v, ns in rotations.items()}
    faces = 0
    seen = set()
    for start in darts:
        if start in seen:
            continue
        faces += 1
        cur = start
        while True:
            seen.add(cur)
            u, v = cur
            ns = rotations[v]
            nxt = ns[(index[v][u] + 1) % len(ns)]
            cur = (v, nxt)
            if cur == start:
                break
    return faces


def validate_embedding(graph: AbstractGraph, rotations: dict) -> bool:
    """Does the rotation system embed each connected component in the plane?"""
    for comp in graph.connected_components():
        sub = graph.subgraph(comp)
        n, m = len(sub.vertices), len(sub.edges)
        if m == 0:
            continue
        rot = {v: [w for w in rotations[v] if w in comp] for v in comp}
        if any(sorted(rot[v], key=str) != sorted(sub.adjacency()[v], key=str) for v in comp):
            raise InputError("rotation system does not match the graph adjacency")
        f = count_faces(sub, rot)
        if n - m + f != 2:
            return False
    return True


# ---------------------------------------------------------------------------
# Brute-force oracle: exhaustive rotation-system search
# ---------------------------------------------------------------------------


def _rotation_count(degrees) -> int:
    total = 1
    for d in degrees:
        for k in range(2, d):
            total *= k
        if total > 10 ** 18:
            return total
    return total


def planar_by_rotation_search(graph: AbstractGraph, budget: int = 500_000) -> bool:
    """Decide planarity by trying every rotation system, component by component.

    Raises BudgetExceededError when a component admits more rotation systems
    than ``budget`` (the search space was not exhausted, so no verdict).
    """
    for comp in graph.connected_components():
        sub = graph.subgraph(comp)
        if len(sub.edges) == 0:
            continue
        if not _component_rotation_planar(sub, budget):
            return False
    return True


def _component_rotation_planar(sub: AbstractGraph, budget: int) -> bool:
    adj = {v: sorted(ns, key=str) for v, ns in sub.adjacency().items()}
    vertices = sub.sorted_vertices()
    n, m = len(vertices), len(sub.edges)
    target_faces = 2 - n + m
    degrees = [len(adj[v]) for v in vertices]
    if _rotation_count(degrees) > budget:
        raise BudgetExceededError(
            f"component has about {_rotation_count(degrees)} rotation systems; budget {budget}")
    # cyclic orders: fix the first neighbor, permute the rest
    choices = []
    for v in vertices:
        ns = adj[v]
        if len(ns) <= 2:
            choices.append([tuple(ns)])
        else:
            choices.append([(ns[0],) + rest for rest in permutations(ns[1:])])
    for combo in product(*choices):
        rotations = dict(zip(vertices, combo))
        if count_faces(sub, rotations) == target_faces:
            return True
    return False


# ---------------------------------------------------------------------------
# Kuratowski witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "K5" or "K3,3"
    subgraph: AbstractGraph


def kuratowski_subgraph(graph: AbstractGraph) -> KuratowskiWitness:
    """A K5- or K3,3-subdivision inside a non-planar graph.

    Deletes edges greedily while the graph stays non-planar; the edge-minimal
    non-planar remainder is exactly a Kuratowski subdivision.
    """
    if lr_planar(graph):
        raise InputError("graph is planar; no Kuratowski subgraph exists")
    H = graph
    shrinking = True
    while shrinking:
        shrinking = False
        for e in H.sorted_edges():
            candidate = H.without_edge(e)
            if not lr_planar(candidate):
                H = candidate
                shrinking = True
                break
    used = frozenset(v for e in H.edges for v in e)
    H = H.subgraph(used)
    branch_degrees = sorted(H.degree(v) for v in H.vertices if H.degree(v) >= 3)
    if branch_degrees == [4, 4, 4, 4, 4]:
        kind = "K5"
    elif branch_degrees == [3, 3, 3, 3, 3, 3]:
        kind = "K3,3"
    else:
        raise InconsistencyError(
            f"edge-minimal non-planar graph has branch degrees {branch_degrees}")
    return KuratowskiWitness(kind, H)


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    embedding: Optional[dict] = None
    kuratowski: Optional[KuratowskiWitness] = None


def check_planarity(graph: AbstractGraph, certificate: bool = False) -> PlanarityResult:
    """Planarity verdict, optionally with an embedding or Kuratowski witness."""
    planar = lr_planar(graph)
    if not certificate:
        return PlanarityResult(planar)
    if planar:
        return PlanarityResult(True, embedding=planar_embedding(graph))
    return PlanarityResult(False, kuratowski=kuratowski_subgraph(graph))
