"""Straight-line and x-monotone drawings with exact rational predicates.

All geometric tests are done in exact rational arithmetic (``fractions``);
there are no epsilon comparisons anywhere.  Orientation follows the
mathematical convention: ``orientation(p, q, r) = +1`` when r lies to the
left of the directed line p -> q (counterclockwise positive).  "Clockwise"
in the order-type classification therefore means the reversed cyclic order
of the counterclockwise angular sweep; flipping this convention would swap
types 1<->2 and 3<->4 everywhere at once.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import DegenerateDrawingError, InconsistencyError, InputError
from .graphs import (
    AbstractGraph,
    CrossingPattern,
    Edge,
    PatternReport,
    PatternViolation,
    complete_bipartite,
    edge,
    edge_key,
    is_local_thrackle,
)
from .tables import TypeTable

Point = tuple  # (Fraction, Fraction)


def frac(value) -> Fraction:
    """Exact rational from int, Fraction, numeric string, or (num, den) pair."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise InputError(f"cannot interpret {value!r} as an exact rational (floats are rejected)")


def point(x, y) -> Point:
    return (frac(x), frac(y))


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of twice the signed area of triangle pqr (+1 = counterclockwise)."""
    area2 = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if area2 > 0:
        return 1
    if area2 < 0:
        return -1
    return 0


def _within_box(p: Point, q: Point, r: Point) -> bool:
    """For r collinear with pq: does r lie on the closed segment pq?"""
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ab and cd share exactly one interior point."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def crossing_point(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Exact intersection point of two properly crossing segments."""
    dx1, dy1 = b[0] - a[0], b[1] - a[1]
    dx2, dy2 = d[0] - c[0], d[1] - c[1]
    denom = dx1 * dy2 - dy1 * dx2
    if denom == 0:
        raise InconsistencyError("parallel segments have no crossing point")
    t = ((c[0] - a[0]) * dy2 - (c[1] - a[1]) * dx2) / denom
    return (a[0] + t * dx1, a[1] + t * dy1)


def _segment_contact(a: Point, b: Point, c: Point, d: Point):
    """Classify how closed segments ab and cd meet.

    Returns ``(kind, point)`` with kind one of "none", "proper", "touch"
    (a single shared point involving a segment endpoint), or "overlap"
    (collinear segments sharing more than one point; point is None).
    """
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return "proper", crossing_point(a, b, c, d)
    if o1 == 0 and o2 == 0:  # collinear supporting lines
        on = [p for p in (c, d) if _within_box(a, b, p)] + \
             [p for p in (a, b) if _within_box(c, d, p)]
        distinct = set(on)
        if not distinct:
            return "none", None
        if len(distinct) == 1:
            return "touch", next(iter(distinct))
        return "overlap", None
    for p, (x, y, o) in ((c, (a, b, o1)), (d, (a, b, o2))):
        if o == 0 and _within_box(x, y, p):
            return "touch", p
    for p, (x, y, o) in ((a, (c, d, o3)), (b, (c, d, o4))):
        if o == 0 and _within_box(x, y, p):
            return "touch", p
    return "none", None


# ---------------------------------------------------------------------------
# Exact angular order of direction vectors around a point
# ---------------------------------------------------------------------------


def _angular_half(v: tuple) -> int:
    x, y = v
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def ccw_sorted_labels(labeled: Sequence[tuple]) -> tuple:
    """Sort ``(label, vector)`` pairs counterclockwise starting at the +x axis.

    Vectors must be pairwise non-parallel rational vectors.
    """

    def cmp(a, b):
        (_, va), (_, vb) = a, b
        ha, hb = _angular_half(va), _angular_half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = va[0] * vb[1] - va[1] * vb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        raise InconsistencyError("parallel edge directions at a crossing")

    ordered = sorted(labeled, key=functools.cmp_to_key(cmp))
    return tuple(lab for lab, _ in ordered)


def classify_order_type(first_pair_crosses: bool, ccw_labels: Sequence[str]) -> int:
    """Map a crossing 4-tuple to its order type 1..5 family member.

    ``first_pair_crosses`` is True when the crossing pair is
    {u_i v_t, u_j v_s} (types 1/2) and False for {u_i v_s, u_j v_t}
    (types 3/4).  ``ccw_labels`` is the counterclockwise cyclic order of
    the four edge-segment directions at the crossing, using the labels
    "ui", "uj", "vs", "vt".
    """
    seq = list(ccw_labels)
    start = seq.index("ui")
    seq = tuple(seq[start:] + seq[:start])
    if first_pair_crosses:
        if seq == ("ui", "uj", "vt", "vs"):
            return 1
        if seq == ("ui", "vs", "vt", "uj"):
            return 2
    else:
        if seq == ("ui", "uj", "vs", "vt"):
            return 3
        if seq == ("ui", "vt", "vs", "uj"):
            return 4
    raise InconsistencyError(f"cyclic order {seq} does not alternate between the crossing edges")


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------


class GeometricDrawing:
    """A graph drawn with straight segments or x-monotone polylines.

    Coordinates are exact rationals.  General position (distinct points, no
    vertex inside an edge, no tangencies, no overlaps, no three edges through
    one point) is enforced at construction; a violation raises
    DegenerateDrawingError.  Non-simplicity (adjacent edges crossing, a pair
    crossing twice -- possible with polylines) is *not* an error here: it is
    reported by crossing_pattern_of.
    """

    def __init__(self, graph: AbstractGraph, coordinates: dict, polylines: Optional[dict] = None):
        self.graph = graph
        self.coordinates = {v: (frac(p[0]), frac(p[1])) for v, p in coordinates.items()}
        self.polylines = {}
        for e, pts in (polylines or {}).items():
            e = frozenset(e)
            self.polylines[e] = tuple((frac(p[0]), frac(p[1])) for p in pts)
        self._validate_basics()
        self._crossings, self._violations = self._analyze_pairs()

    # -- geometry access ----------------------------------------------------

    def edge_points(self, e: Edge) -> tuple:
        """Full point sequence of the edge geometry, endpoints included."""
        if e in self.polylines:
            return self.polylines[e]
        a, b = edge_key(e)
        return (self.coordinates[a], self.coordinates[b])

    def edge_segments(self, e: Edge) -> list:
        pts = self.edge_points(e)
        return list(zip(pts, pts[1:]))

    def endpoint_order(self, e: Edge) -> tuple:
        """The two vertices of e in the order their coordinates appear in edge_points."""
        pts = self.edge_points(e)
        a, b = edge_key(e)
        if self.coordinates[a] == pts[0]:
            return a, b
        return b, a

    # -- validation ----------------------------------------------------------

    def _validate_basics(self):
        missing = self.graph.vertices - set(self.coordinates)
        if missing:
            raise InputError(f"no coordinates for vertices {sorted(missing, key=str)}")
        seen = {}
        for v in self.graph.sorted_vertices():
            p = self.coordinates[v]
            if p in seen:
                raise DegenerateDrawingError(f"vertices {seen[p]!r} and {v!r} share point {p}", (v,))
            seen[p] = v
        for e, pts in self.polylines.items():
            if e not in self.graph.edges:
                raise InputError(f"polyline for unknown edge {edge_key(e)}")
            if len(pts) < 2:
                raise InputError(f"polyline for {edge_key(e)} needs at least two points")
            ends = {pts[0], pts[-1]}
            want = {self.coordinates[v] for v in e}
            if ends != want:
                raise InputError(f"polyline endpoints for {edge_key(e)} do not match its vertices")
            xs = [p[0] for p in pts]
            increasing = all(a < b for a, b in zip(xs, xs[1:]))
            decreasing = all(a > b for a, b in zip(xs, xs[1:]))
            if not (increasing or decreasing):  # either storage direction is fine
                raise InputError(f"polyline for {edge_key(e)} is not strictly x-monotone")
        # no vertex point inside any non-incident edge
        for v in self.graph.sorted_vertices():
            p = self.coordinates[v]
            for e in self.graph.sorted_edges():
                if v in e:
                    continue
                for a, b in self.edge_segments(e):
                    if orientation(a, b, p) == 0 and _within_box(a, b, p):
                        raise DegenerateDrawingError(
                            f"vertex {v!r} lies on edge {edge_key(e)}", (v, e))

    def _analyze_pairs(self):
        """All pairwise edge contacts: proper crossings and simplicity violations."""
        crossings = {}  # frozenset({e, f}) -> list of points
        violations = []
        point_uses = {}  # crossing point -> set of edges through it
        edges = self.graph.sorted_edges()
        vertex_points = {self.coordinates[v] for v in self.graph.vertices}
        for e, f in combinations(edges, 2):
            shared = e & f
            proper_points = []
            for a, b in self.edge_segments(e):
                for c, d in self.edge_segments(f):
                    kind, pt = _segment_contact(a, b, c, d)
                    if kind == "none":
                        continue
                    if kind == "proper":
                        proper_points.append(pt)
                    elif kind == "overlap":
                        raise DegenerateDrawingError(
                            f"edges {edge_key(e)} and {edge_key(f)} overlap along a segment", (e, f))
                    else:  # touch
                        if shared and pt in vertex_points and pt == self.coordinates[next(iter(shared))]:
                            continue  # the legitimate shared endpoint of adjacent edges
                        raise DegenerateDrawingError(
                            f"edges {edge_key(e)} and {edge_key(f)} touch at {pt} without crossing",
                            (e, f))
            if proper_points:
                if shared:
                    violations.append(PatternViolation("adjacent edges cross", (e, f)))
                elif len(proper_points) > 1:
                    violations.append(PatternViolation("edge pair crosses more than once", (e, f)))
                crossings[frozenset((e, f))] = proper_points
                for pt in proper_points:
                    point_uses.setdefault(pt, set()).update((e, f))
        for pt, through in point_uses.items():
            if len(through) > 2:
                raise DegenerateDrawingError(
                    f"{len(through)} edges pass through the common point {pt}",
                    tuple(sorted(through, key=edge_key)))
        return crossings, violations

    # -- JSON -----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        pts = {
            str(v): [p[0].numerator, p[0].denominator, p[1].numerator, p[1].denominator]
            for v, p in sorted(self.coordinates.items(), key=lambda kv: str(kv[0]))
        }
        data = {
            "points": pts,
            "edges": [[str(a) for a in edge_key(e)] for e in self.graph.sorted_edges()],
        }
        if self.polylines:
            data["polylines"] = {
                "|".join(str(a) for a in edge_key(e)): [
                    [p[0].numerator, p[0].denominator, p[1].numerator, p[1].denominator]
                    for p in pts_
                ]
                for e, pts_ in sorted(self.polylines.items(), key=lambda kv: edge_key(kv[0]))
            }
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "GeometricDrawing":
        try:
            raw_points = data["points"]
            raw_edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"drawing JSON must have 'points' and 'edges': {exc}")
        coords = {}
        for v, quad in raw_points.items():
            if len(quad) != 4:
                raise InputError(f"point for {v!r} must be [x_num, x_den, y_num, y_den]")
            coords[v] = (Fraction(quad[0], quad[1]), Fraction(quad[2], quad[3]))
        graph = AbstractGraph.from_edges([tuple(e) for e in raw_edges], coords.keys())
        polylines = {}
        for key, pts in (data.get("polylines") or {}).items():
            u, _, v = key.partition("|")
            polylines[frozenset((u, v))] = [
                (Fraction(q[0], q[1]), Fraction(q[2], q[3])) for q in pts
            ]
        return cls(graph, coords, polylines)


def crossing_pattern_of(drawing: GeometricDrawing):
    """Crossing pattern of a drawing plus its simplicity report.

    The pattern records every edge pair whose geometries properly cross.
    The report lists simplicity violations (adjacent edges crossing, pairs
    crossing more than once); a drawing with violations is not a simple
    drawing and downstream predicates will reject the pattern.
    """
    pairs = [tuple(pair) for pair in drawing._crossings]
    pattern = CrossingPattern.from_pairs(drawing.graph, pairs)
    report = PatternReport(valid=not drawing._violations, violations=tuple(drawing._violations))
    return pattern, report


def simple_crossing_pattern(drawing: GeometricDrawing) -> CrossingPattern:
    pattern, report = crossing_pattern_of(drawing)
    if not report.valid:
        raise InputError(
            "drawing is not simple: " + "; ".join(v.describe() for v in report.violations))
    return pattern


# ---------------------------------------------------------------------------
# Order types
# ---------------------------------------------------------------------------


def _direction_labels(drawing: GeometricDrawing, e: Edge, x: Point, label_by_vertex: dict) -> list:
    """Labeled local directions of edge e at its crossing point x."""
    first, last = drawing.endpoint_order(e)
    for a, b in drawing.edge_segments(e):
        if orientation(a, b, x) == 0 and _within_box(a, b, x) and x not in (a, b):
            return [
                (label_by_vertex[first], (a[0] - x[0], a[1] - x[1])),
                (label_by_vertex[last], (b[0] - x[0], b[1] - x[1])),
            ]
    raise InconsistencyError(f"crossing point {x} not interior to edge {edge_key(e)}")


def order_type(drawing: GeometricDrawing, u_i, u_j, v_s, v_t) -> int:
    """Order type (1..5) of the K_{2,2} induced on (u_i, u_j, v_s, v_t).

    u_i must precede u_j in the U-order and v_s precede v_t in the V-order;
    the four edges u*v* must exist in the drawing.
    """
    for a, b in ((u_i, v_s), (u_i, v_t), (u_j, v_s), (u_j, v_t)):
        if edge(a, b) not in drawing.graph.edges:
            raise InputError(f"missing edge {(a, b)} for order-type classification")
    first_pair = frozenset((edge(u_i, v_t), edge(u_j, v_s)))
    second_pair = frozenset((edge(u_i, v_s), edge(u_j, v_t)))
    pts1 = drawing._crossings.get(first_pair, [])
    pts2 = drawing._crossings.get(second_pair, [])
    if pts1 and pts2:
        raise InconsistencyError(
            "both independent pairs of an induced 4-cycle cross; impossible in a simple drawing")
    if not pts1 and not pts2:
        return 5
    if len(pts1) > 1 or len(pts2) > 1:
        raise InconsistencyError("edge pair crosses more than once; not a simple drawing")
    labels = {u_i: "ui", u_j: "uj", v_s: "vs", v_t: "vt"}
    if pts1:
        x = pts1[0]
        dirs = (_direction_labels(drawing, edge(u_i, v_t), x, labels)
                + _direction_labels(drawing, edge(u_j, v_s), x, labels))
        return classify_order_type(True, ccw_sorted_labels(dirs))
    x = pts2[0]
    dirs = (_direction_labels(drawing, edge(u_i, v_s), x, labels)
            + _direction_labels(drawing, edge(u_j, v_t), x, labels))
    return classify_order_type(False, ccw_sorted_labels(dirs))


def type_table_from_drawing(drawing: GeometricDrawing, part_u: Sequence, part_v: Sequence) -> TypeTable:
    """Order types of all 4-tuples of a simple complete bipartite drawing."""
    expected = complete_bipartite(part_u, part_v)
    if drawing.graph.edges != expected.edges or drawing.graph.vertices != expected.vertices:
        raise InputError("drawing is not the complete bipartite graph on the given parts")
    _, report = crossing_pattern_of(drawing)
    if not report.valid:
        raise InputError("drawing is not simple; refusing to classify order types")
    types = {}
    for i, j in combinations(range(len(part_u)), 2):
        for s, t in combinations(range(len(part_v)), 2):
            types[(i, j, s, t)] = order_type(drawing, part_u[i], part_u[j], part_v[s], part_v[t])
    return TypeTable(tuple(part_u), tuple(part_v), types)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def two_line_drawing(s: int, t: int, y_u: Optional[Sequence] = None,
                     y_v: Optional[Sequence] = None) -> GeometricDrawing:
    """Complete bipartite drawing with U on the y-axis and V on the line x = 1.

    The crossing pattern is independent of the exact (strictly increasing)
    y-coordinates.  The defaults space the two sides geometrically (powers
    of 2 and 3): uniform spacing on both lines is degenerate from three
    vertices per part on, because opposite segments concur in a single
    point, and degenerate coordinates are rejected rather than perturbed.
    """
    if s < 1 or t < 1:
        raise InputError("part sizes must be positive")
    y_u = [Fraction(2 ** i) for i in range(s)] if y_u is None else [frac(y) for y in y_u]
    y_v = [Fraction(3 ** j) for j in range(t)] if y_v is None else [frac(y) for y in y_v]
    if len(y_u) != s or len(y_v) != t:
        raise InputError("coordinate sequences must match the part sizes")
    for seq, name in ((y_u, "yU"), (y_v, "yV")):
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise InputError(f"{name} must be strictly increasing")
    us = [f"u{i}" for i in range(1, s + 1)]
    vs = [f"v{j}" for j in range(1, t + 1)]
    coords = {u: (Fraction(0), y) for u, y in zip(us, y_u)}
    coords.update({v: (Fraction(1), y) for v, y in zip(vs, y_v)})
    return GeometricDrawing(complete_bipartite(us, vs), coords)


def two_line_parts(drawing: GeometricDrawing) -> tuple:
    """The (U, V) vertex lists of a two_line_drawing, in index order."""
    us = sorted((v for v in drawing.graph.vertices if str(v).startswith("u")),
                key=lambda v: int(str(v)[1:]))
    vs = sorted((v for v in drawing.graph.vertices if str(v).startswith("v")),
                key=lambda v: int(str(v)[1:]))
    return us, vs


def canonical_two_line_table(k: int) -> TypeTable:
    """Order-type table of the canonical two-line drawing with k vertices per part."""
    d = two_line_drawing(k, k)
    us, vs = two_line_parts(d)
    return type_table_from_drawing(d, us, vs)


def _rational_ngon(n: int, precision_bits: int, jitter: int) -> list:
    """Rational approximation of a regular n-gon, deterministically jittered."""
    scale = 1 << precision_bits
    pts = []
    for i in range(n):
        theta = 2 * math.pi * i / n
        jx = ((i * 7919 + jitter * 104729) % 13) - 6 if jitter else 0
        jy = ((i * 6101 + jitter * 99991) % 11) - 5 if jitter else 0
        x = Fraction(round(math.cos(theta) * scale) + jx, scale)
        y = Fraction(round(math.sin(theta) * scale) + jy, scale)
        pts.append((x, y))
    return pts


def spiked_ngon_step(n: int) -> int:
    """The chord step for the n-gon construction: n/2-1 or n/2-2, whichever is odd."""
    m = n // 2 - 1
    if m % 2 == 0:
        m = n // 2 - 2
    return m


def ngon_spiked_cycle(n: int, spike_counts: Optional[Sequence[int]] = None,
                      max_attempts: int = 12) -> GeometricDrawing:
    """Straight-line local-thrackle drawing of an n-cycle with optional spikes.

    Vertices sit on a (rationally approximated) regular n-gon; cycle edges
    join v_i to v_{i+m} with m = n/2-1 or n/2-2, whichever is odd, which
    wraps far enough around (3m > n) that consecutive-but-one chords cross.
    Spikes at v_i are drawn to points on the interval v_{i+m} v_{i+m+1}.
    The construction is re-verified: the returned drawing always passes the
    local-thrackle check.

    n must be even, at least 8, and not 10 (for n = 10 the wrap-around
    condition fails and no such chord construction exists).
    """
    if n % 2 != 0 or n < 8:
        raise InputError("n must be an even integer >= 8")
    if n == 10:
        raise InputError(
            "n = 10 is not supported: the odd chord step is 3 and 3*3 < 10, so the "
            "chord construction is not a local thrackle for this size")
    if spike_counts is None:
        spike_counts = [0] * n
    spike_counts = list(spike_counts)
    if len(spike_counts) != n or any(c < 0 for c in spike_counts):
        raise InputError("spike_counts must give a nonnegative count per cycle vertex")
    m = spiked_ngon_step(n)
    assert math.gcd(n, m) == 1 and 3 * m > n

    last_error = None
    for attempt in range(max_attempts):
        base = _rational_ngon(n, precision_bits=20, jitter=attempt)
        names = [f"v{i}" for i in range(n)]
        coords = {names[i]: base[i] for i in range(n)}
        edges = [(names[i], names[(i + m) % n]) for i in range(n)]
        for i, count in enumerate(spike_counts):
            a = base[(i + m) % n]
            b = base[(i + m + 1) % n]
            for j in range(count):
                t = Fraction(j + 1, count + 1)
                p = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                if attempt:
                    p = (p[0] * (1 - Fraction(1 + j, 4096)), p[1] * (1 - Fraction(1 + j, 4096)))
                w = f"w{i}_{j}"
                coords[w] = p
                edges.append((names[i], w))
        graph = AbstractGraph.from_edges(edges, names)
        try:
            drawing = GeometricDrawing(graph, coords)
        except DegenerateDrawingError as exc:
            last_error = exc
            continue
        pattern, report = crossing_pattern_of(drawing)
        if not report.valid:
            last_error = InconsistencyError("straight-line drawing unexpectedly non-simple")
            continue
        ok, _ = is_local_thrackle(pattern)
        if ok:
            return drawing
        raise InconsistencyError(
            f"n-gon construction with n={n} failed the local-thrackle check; "
            "this contradicts the wrap-around argument")
    raise InconsistencyError(f"could not reach general position after {max_attempts} attempts: {last_error}")


# ---------------------------------------------------------------------------
# SVG convenience (no layout logic; coordinates are used as-is)
# ---------------------------------------------------------------------------


def drawing_to_svg(drawing: GeometricDrawing, size: int = 480) -> str:
    pts = [drawing.coordinates[v] for v in drawing.graph.sorted_vertices()]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    span = max(maxx - minx, maxy - miny) or 1.0
    pad = 0.08 * span

    def sx(x):
        return (float(x) - minx + pad) / (span + 2 * pad) * size

    def sy(y):
        return size - (float(y) - miny + pad) / (span + 2 * pad) * size

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">']
    for e in drawing.graph.sorted_edges():
        seq = " ".join(f"{sx(p[0]):.2f},{sy(p[1]):.2f}" for p in drawing.edge_points(e))
        parts.append(f'<polyline points="{seq}" fill="none" stroke="black" stroke-width="1"/>')
    for v in drawing.graph.sorted_vertices():
        p = drawing.coordinates[v]
        parts.append(f'<circle cx="{sx(p[0]):.2f}" cy="{sy(p[1]):.2f}" r="3" fill="crimson"/>')
        parts.append(f'<text x="{sx(p[0]) + 5:.2f}" y="{sy(p[1]) - 5:.2f}" '
                     f'font-size="10">{v}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
