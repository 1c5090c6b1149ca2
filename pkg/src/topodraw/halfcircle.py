"""The half-circle random drawing model.

Vertices sit on the x-axis; every edge of the complete graph is a
semicircle in the upper or lower half plane.  Two edges cross iff their
intervals interleave on the axis and they were drawn on the same side,
which makes crossing patterns, order types, and the probability that a
separated pair of k-sets induces the two-line pattern all exactly
computable.

Randomness contract: a drawing is sampled from ``random.Random(seed)`` by
drawing one bit per edge, edges enumerated in lexicographic position order
(i < j); bit 1 means upper.  Monte Carlo trial t uses the t-th 64-bit
integer drawn from ``random.Random(seed)`` as its own drawing seed, so
trials are reproducible individually and independent of chunking.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from math import comb, sqrt
from typing import Sequence

import numpy as np

from .errors import InconsistencyError, InputError
from .graphs import (
    CrossingPattern,
    complete_bipartite,
    complete_graph,
    edge,
    edge_key,
    two_line_orderings,
)
from .geometry import classify_order_type
from .tables import TypeTable

UPPER = "upper"
LOWER = "lower"

#: weak-isomorphism matching brute-forces k!^2 orderings
PART_SIZE_CAP = 5


@dataclass(frozen=True)
class HalfCircleDrawing:
    """Complete graph drawn with semicircular edges over an ordered vertex line."""

    order: tuple                # vertices, left to right
    sides: dict                 # frozenset({u, v}) -> "upper" | "lower"

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise InputError("vertex order repeats a vertex")
        want = {frozenset(p) for p in combinations(self.order, 2)}
        if set(self.sides) != want:
            raise InputError("every vertex pair needs a side assignment")
        if any(s not in (UPPER, LOWER) for s in self.sides.values()):
            raise InputError("sides must be 'upper' or 'lower'")

    @property
    def n(self) -> int:
        return len(self.order)

    def position(self, v) -> int:
        return self.order.index(v)

    def positions(self) -> dict:
        return {v: i for i, v in enumerate(self.order)}

    def side(self, u, v) -> str:
        return self.sides[edge(u, v)]

    def to_json_dict(self) -> dict:
        keyed = {}
        for e, s in self.sides.items():
            a, b = sorted((str(x) for x in e))
            keyed[f"{a}|{b}"] = s
        return {"order": list(self.order), "sides": dict(sorted(keyed.items()))}

    @classmethod
    def from_json_dict(cls, data: dict) -> "HalfCircleDrawing":
        try:
            order = tuple(data["order"])
            raw = data["sides"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"drawing JSON must have 'order' and 'sides': {exc}")
        byname = {str(v): v for v in order}
        if len(byname) != len(order) or any("|" in str(v) for v in order):
            raise InputError("vertex names must be unique and must not contain '|'")
        sides = {}
        for key, s in raw.items():
            a, _, b = key.partition("|")
            sides[edge(byname[a], byname[b])] = s
        return cls(order, sides)


def edge_bit_count(n: int) -> int:
    return comb(n, 2)


def sample_mask(n: int, seed: int) -> int:
    """Side bits of a sampled drawing packed into an int, bit i = i-th edge upper."""
    rng = random.Random(seed)
    mask = 0
    for b in range(edge_bit_count(n)):
        if rng.getrandbits(1):
            mask |= 1 << b
    return mask


def sample_drawing(n: int, seed: int) -> HalfCircleDrawing:
    """Fair independent side per edge; same seed, same drawing."""
    if n < 1:
        raise InputError("n must be at least 1")
    mask = sample_mask(n, seed)
    sides = {}
    for b, (i, j) in enumerate(combinations(range(n), 2)):
        sides[edge(i, j)] = UPPER if (mask >> b) & 1 else LOWER
    return HalfCircleDrawing(tuple(range(n)), sides)


def _interleaved(a: int, b: int, c: int, d: int) -> bool:
    """Intervals [a,b] and [c,d] (a<b, c<d) interleave on the line."""
    return a < c < b < d or c < a < d < b


def edges_cross(d: HalfCircleDrawing, e, f) -> bool:
    pos = d.positions()
    e, f = frozenset(e), frozenset(f)
    if e & f:
        return False
    a, b = sorted(pos[v] for v in e)
    c, dd = sorted(pos[v] for v in f)
    return _interleaved(a, b, c, dd) and d.sides[e] == d.sides[f]


def crossing_pattern(d: HalfCircleDrawing) -> CrossingPattern:
    """The crossing pattern of the whole drawing; always a valid simple pattern."""
    graph = complete_graph(d.order)
    pairs = [(e, f) for e, f in combinations(sorted(graph.edges, key=edge_key), 2)
             if edges_cross(d, e, f)]
    return CrossingPattern.from_pairs(graph, pairs)


# ---------------------------------------------------------------------------
# Separated pairs and two-line counting
# ---------------------------------------------------------------------------


def enumerate_separated_pairs(order: Sequence, k: int) -> list:
    """All unordered pairs {outer, inner} of disjoint k-sets in separated position.

    The outer set occupies a nonempty prefix plus a (possibly empty) suffix
    of the combined 2k positions; the inner set is the contiguous middle.
    Every 2k-subset contributes exactly k pairs.
    """
    n = len(order)
    if k < 1 or 2 * k > n:
        raise InputError("need 1 <= k and 2k <= n")
    out = []
    for chosen in combinations(range(n), 2 * k):
        for j in range(1, k + 1):
            outer = chosen[:j] + chosen[j + k:]
            inner = chosen[j:j + k]
            out.append((tuple(order[p] for p in outer), tuple(order[p] for p in inner)))
    return out


def pair_induces_two_line(d: HalfCircleDrawing, S: Sequence, T: Sequence) -> bool:
    """Is the bipartite sub-drawing between S and T weakly isomorphic to the
    two-line pattern?  Both role assignments are tried."""
    S, T = list(S), list(T)
    k = len(S)
    if len(T) != k:
        raise InputError("S and T must have equal size")
    if k > PART_SIZE_CAP:
        raise InputError(f"part size {k} exceeds the brute-force cap {PART_SIZE_CAP}")
    graph = complete_bipartite(S, T)
    bip_edges = [edge(u, v) for u in S for v in T]
    pairs = [(e, f) for e, f in combinations(bip_edges, 2) if edges_cross(d, e, f)]
    pattern = CrossingPattern.from_pairs(graph, pairs)
    if two_line_orderings(pattern, S, T) is not None:
        return True
    return two_line_orderings(pattern, T, S) is not None


def count_two_line_pairs(d: HalfCircleDrawing, k: int, scan: str = "separated"):
    """Number of disjoint k-set pairs inducing the two-line pattern, with witnesses.

    ``scan`` is "separated" (only separated pairs, the ones that can ever
    succeed) or "all" (every disjoint pair; must agree with the former).
    """
    if scan not in ("separated", "all"):
        raise InputError("scan must be 'separated' or 'all'")
    if scan == "separated":
        candidates = enumerate_separated_pairs(d.order, k)
    else:
        candidates = []
        verts = list(d.order)
        for S in combinations(verts, k):
            rest = [v for v in verts if v not in S]
            for T in combinations(rest, k):
                if min(d.position(v) for v in S) < min(d.position(v) for v in T):
                    candidates.append((S, T))
    count = 0
    witnesses = []
    for S, T in candidates:
        if pair_induces_two_line(d, S, T):
            count += 1
            witnesses.append((tuple(S), tuple(T)))
    return count, witnesses


# ---------------------------------------------------------------------------
# Exact per-pair probability
# ---------------------------------------------------------------------------


def _abstract_split(k: int, j: int):
    """Canonical separated configuration on positions 0..2k-1 with outer split j."""
    if not 1 <= j <= k:
        raise InputError("split index j must satisfy 1 <= j <= k")
    positions = tuple(range(2 * k))
    outer = positions[:j] + positions[j + k:]
    inner = positions[j:j + k]
    bit_edges = [(o, i) for o in outer for i in inner]  # bit b  <->  bit_edges[b]
    return outer, inner, bit_edges


def _exceptional_bits(k: int, j: int) -> tuple:
    """Bit indices of the two side-free edges of a separated configuration.

    With the outer set split into a prefix S1 and suffix S2, they join the
    rightmost vertex of S1 to the leftmost inner vertex, and the leftmost
    vertex of S2 (or of S1 when S2 is empty) to the rightmost inner vertex.
    """
    outer, inner, bit_edges = _abstract_split(k, j)
    u1 = j - 1                      # rightmost of the prefix part
    u0 = j + k if j < k else 0      # leftmost of the suffix part, else of the prefix
    v0, v1 = inner[0], inner[-1]
    return bit_edges.index((u1, v0)), bit_edges.index((u0, v1))


def _drawing_from_mask(k: int, j: int, mask: int) -> HalfCircleDrawing:
    _, _, bit_edges = _abstract_split(k, j)
    sides = {edge(a, b): UPPER for a, b in combinations(range(2 * k), 2)}
    for b, (o, i) in enumerate(bit_edges):
        sides[edge(o, i)] = UPPER if (mask >> b) & 1 else LOWER
    return HalfCircleDrawing(tuple(range(2 * k)), sides)


@dataclass(frozen=True)
class SplitReport:
    split: int
    favorable: int
    total: int
    structure_matches: bool  # favorable set == {global side} x {two free edges}

    @property
    def probability(self) -> Fraction:
        return Fraction(self.favorable, self.total)


@dataclass(frozen=True)
class ExactProbabilityReport:
    k: int
    splits: tuple
    probability: Fraction
    formula_asserted: bool  # the 2^(3-k^2) identity is asserted only for k >= 3


def _favorable_masks(k: int, j: int) -> list:
    """Masks whose induced bipartite pattern matches the two-line pattern."""
    outer, inner, bit_edges = _abstract_split(k, j)
    nbits = k * k
    interleaved_pairs = []
    for b1, b2 in combinations(range(nbits), 2):
        (o1, i1), (o2, i2) = bit_edges[b1], bit_edges[b2]
        if o1 == o2 or i1 == i2:
            continue
        a, b = sorted((o1, i1))
        c, d = sorted((o2, i2))
        if _interleaved(a, b, c, d):
            interleaved_pairs.append((b1, b2))
    target = (k * (k - 1) // 2) ** 2
    masks = np.arange(1 << nbits, dtype=np.int64)
    same_side_count = np.zeros(masks.shape, dtype=np.int32)
    for b1, b2 in interleaved_pairs:
        same_side_count += 1 - (((masks >> b1) ^ (masks >> b2)) & 1).astype(np.int32)
    candidates = np.nonzero(same_side_count == target)[0]
    favorable = []
    for mask in candidates.tolist():
        d = _drawing_from_mask(k, j, mask)
        if pair_induces_two_line(d, outer, inner):
            favorable.append(mask)
    return favorable


def exact_pair_report(k: int) -> ExactProbabilityReport:
    """Enumerate all 2^(k^2) side assignments for every separated split index.

    For k >= 3 the probability must come out as 2^(3-k^2) for each split,
    and the favorable assignments must be exactly a global side choice
    times free sides for the two exceptional edges; both are asserted.
    For k = 2 the enumeration result is reported without asserting the
    closed form.
    """
    if k not in (2, 3, 4):
        raise InputError("exact enumeration supports k in {2, 3, 4}")
    total = 1 << (k * k)
    splits = []
    for j in range(1, k + 1):
        favorable = _favorable_masks(k, j)
        x1, x2 = _exceptional_bits(k, j)
        free = {x1, x2}
        base_bits = [b for b in range(k * k) if b not in free]
        expected = set()
        for side in (0, 1):
            base = sum(side << b for b in base_bits)
            for m1 in (0, 1):
                for m2 in (0, 1):
                    expected.add(base | (m1 << x1) | (m2 << x2))
        splits.append(SplitReport(j, len(favorable), total,
                                  structure_matches=set(favorable) == expected))
    probs = {s.probability for s in splits}
    if len(probs) != 1:
        raise InconsistencyError(f"separated splits disagree: { {str(p) for p in probs} }")
    prob = probs.pop()
    if k >= 3:
        if prob != Fraction(8, total):
            raise InconsistencyError(f"k={k}: enumerated probability {prob} != 2^(3-k^2)")
        if not all(s.structure_matches for s in splits):
            raise InconsistencyError(f"k={k}: favorable-set structure assertion failed")
    return ExactProbabilityReport(k, tuple(splits), prob, formula_asserted=k >= 3)


def exact_pair_probability(k: int) -> Fraction:
    return exact_pair_report(k).probability


def expected_count(n: int, k: int) -> Fraction:
    """k * C(n, 2k) * 2^(3-k^2): separated pairs times the per-pair probability."""
    if 2 * k > n:
        raise InputError("need 2k <= n")
    return k * comb(n, 2 * k) * Fraction(8, 1 << (k * k))


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _verdict_table(k: int, j: int) -> np.ndarray:
    """Verdict per side mask for the canonical (k, j) separated configuration."""
    table = np.zeros(1 << (k * k), dtype=np.uint8)
    for mask in _favorable_masks(k, j):
        table[mask] = 1
    return table


def _pair_bit_columns(n: int, k: int):
    """For each separated pair of positions, its split j and global edge-bit indices
    in canonical order (outer ascending x inner ascending)."""
    bit_of = {pair: b for b, pair in enumerate(combinations(range(n), 2))}
    specs = []
    for chosen in combinations(range(n), 2 * k):
        for j in range(1, k + 1):
            outer = chosen[:j] + chosen[j + k:]
            inner = chosen[j:j + k]
            cols = [bit_of[tuple(sorted((o, i)))] for o in outer for i in inner]
            specs.append((j, cols))
    return specs


def count_via_tables(n: int, k: int, masks: np.ndarray) -> np.ndarray:
    """Two-line pair counts for many drawings at once (masks: int64 edge bits)."""
    counts = np.zeros(masks.shape, dtype=np.int64)
    for j, cols in _pair_bit_columns(n, k):
        keys = np.zeros(masks.shape, dtype=np.int64)
        for b, col in enumerate(cols):
            keys |= ((masks >> col) & 1) << b
        counts += _verdict_table(k, j)[keys]
    return counts


@dataclass(frozen=True)
class MonteCarloReport:
    n: int
    k: int
    trials: int
    mean: float
    stderr: float
    total: int

    def to_json_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "trials": self.trials,
                "mean": self.mean, "stderr": self.stderr, "total": self.total}


def trial_seeds(seed: int, trials: int) -> list:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


def _counts_for_seed_chunk(args) -> list:
    n, k, seeds = args
    masks = np.fromiter((sample_mask(n, s) for s in seeds), dtype=np.int64, count=len(seeds))
    return count_via_tables(n, k, masks).tolist()


def montecarlo_expectation(n: int, k: int, trials: int, seed: int,
                           jobs: int = 1) -> MonteCarloReport:
    """Sample mean and standard error of the two-line pair count."""
    if trials < 1:
        raise InputError("no samples: trials must be at least 1")
    if 2 * k > n:
        raise InputError("need 2k <= n")
    if k > PART_SIZE_CAP:
        raise InputError(f"k exceeds the cap {PART_SIZE_CAP}")
    if edge_bit_count(n) > 62:
        raise InputError("n too large for packed edge masks")
    seeds = trial_seeds(seed, trials)
    if jobs > 1:
        chunk = (trials + jobs - 1) // jobs
        parts = [(n, k, seeds[i:i + chunk]) for i in range(0, trials, chunk)]
        counts: list = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_counts_for_seed_chunk, parts):
                counts.extend(part)
        arr = np.asarray(counts, dtype=np.int64)
    else:
        arr = np.asarray(_counts_for_seed_chunk((n, k, seeds)), dtype=np.int64)
    mean = float(arr.mean())
    stderr = float(arr.std(ddof=1) / sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloReport(n, k, trials, mean, stderr, int(arr.sum()))


def exhaustive_expectation(n: int, k: int) -> Fraction:
    """Exact expectation by enumerating every side assignment of every edge."""
    m = edge_bit_count(n)
    if m > 16:
        raise InputError("exhaustive enumeration is limited to C(n,2) <= 16 edges")
    masks = np.arange(1 << m, dtype=np.int64)
    counts = count_via_tables(n, k, masks)
    return Fraction(int(counts.sum()), 1 << m)


# ---------------------------------------------------------------------------
# Order types of semicircular 4-tuples
# ---------------------------------------------------------------------------


def _arc_directions(a: int, b: int, x0: Fraction, side: str, label_left: str,
                    label_right: str) -> list:
    """Labeled (sign, q) directions of the arc over [a, b] at axis point x0.

    A direction stands for the vector (sign * Y, q) with Y = |y0| > 0 the
    (irrational) height of the crossing; angular comparisons only ever need
    the sign of rational combinations, so Y stays symbolic.
    """
    mid = Fraction(a + b, 2)
    q = x0 - mid
    if side == UPPER:
        return [(label_right, (1, -q)), (label_left, (-1, q))]
    return [(label_right, (1, q)), (label_left, (-1, -q))]


def _ccw_sorted_symbolic(labeled: list) -> tuple:
    """CCW angular sort of (label, (sign, q)) symbolic directions."""

    def half(v):
        s, q = v
        if q > 0 or (q == 0 and s > 0):
            return 0
        return 1

    def cmp(x, y):
        (_, va), (_, vb) = x, y
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = va[0] * vb[1] - va[1] * vb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        raise InconsistencyError("parallel arc directions at a crossing")

    return tuple(lab for lab, _ in sorted(labeled, key=cmp_to_key(cmp)))


def order_type_of(d: HalfCircleDrawing, u_i, u_j, v_s, v_t) -> int:
    """Order type (1..5) of the K_{2,2} induced on the four vertices.

    The crossing point of two same-side interleaved semicircles and the
    cyclic order of the four arc directions there are derived in closed
    form from the axis positions; all comparisons are exact.
    """
    pos = d.positions()
    labels = {u_i: "ui", u_j: "uj", v_s: "vs", v_t: "vt"}
    first_pair = (edge(u_i, v_t), edge(u_j, v_s))   # types 1/2 when crossing
    second_pair = (edge(u_i, v_s), edge(u_j, v_t))  # types 3/4 when crossing
    cross1 = edges_cross(d, *first_pair)
    cross2 = edges_cross(d, *second_pair)
    if cross1 and cross2:
        raise InconsistencyError("both independent pairs cross; impossible in this model")
    if not cross1 and not cross2:
        return 5
    e1, e2 = first_pair if cross1 else second_pair
    side = d.sides[e1]
    if side != d.sides[e2]:
        raise InconsistencyError("crossing arcs must share a side")
    a1, b1 = sorted(pos[v] for v in e1)
    a2, b2 = sorted(pos[v] for v in e2)
    denom = (a1 + b1) - (a2 + b2)
    if denom == 0:
        raise InconsistencyError("interleaved arcs cannot share their midpoint")
    x0 = Fraction(a1 * b1 - a2 * b2, denom)
    y0_sq = 2 * Fraction(a1 + b1, 2) * x0 - a1 * b1 - x0 * x0
    if y0_sq <= 0:
        raise InconsistencyError("crossing height must be positive")
    by_pos = {pos[v]: v for v in (u_i, u_j, v_s, v_t)}
    dirs = _arc_directions(a1, b1, x0, side, labels[by_pos[a1]], labels[by_pos[b1]])
    dirs += _arc_directions(a2, b2, x0, side, labels[by_pos[a2]], labels[by_pos[b2]])
    return classify_order_type(cross1, _ccw_sorted_symbolic(dirs))


def type_table(d: HalfCircleDrawing, part_u: Sequence, part_v: Sequence) -> TypeTable:
    """Order types of all 4-tuples over two disjoint ordered vertex sets."""
    part_u, part_v = list(part_u), list(part_v)
    if set(part_u) & set(part_v):
        raise InputError("parts must be disjoint")
    types = {}
    for i, j in combinations(range(len(part_u)), 2):
        for s, t in combinations(range(len(part_v)), 2):
            types[(i, j, s, t)] = order_type_of(d, part_u[i], part_u[j], part_v[s], part_v[t])
    return TypeTable(tuple(part_u), tuple(part_v), types)


def export_type_table(n: int, k: int, seed: int) -> TypeTable:
    """Sample a drawing and derive a table on seeded random disjoint k-subsets.

    The subsets and their orders are drawn from the same seeded stream that
    follows the drawing sample, so the export is reproducible end to end.
    """
    if 2 * k > n:
        raise InputError("need 2k <= n")
    d = sample_drawing(n, seed)
    rng = random.Random(f"subsets:{seed}")
    verts = list(range(n))
    part_u = rng.sample(verts, k)
    part_v = rng.sample([v for v in verts if v not in part_u], k)
    return type_table(d, part_u, part_v)


def load_drawing(path: str) -> HalfCircleDrawing:
    with open(path) as fh:
        return HalfCircleDrawing.from_json_dict(json.load(fh))
