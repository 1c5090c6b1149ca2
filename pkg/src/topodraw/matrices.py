"""Forbidden 2x4 submatrix patterns in two-row matrices.

A two-row matrix records, column by column, the endpoint pairs of edges in
the order they meet a reference curve.  Two submatrix shapes encode a
self-intersecting 4-edge path and are therefore forbidden:

    F1 = [a b a b]      F2 = [* a a *]
         [* s s *]           [s t s t]     (a != b, s != t; * arbitrary)

Pattern-free matrices with distinct columns obey the extremal bound
m <= 17 * n * log2(n) in the number n of distinct symbols; the bound check
doubles as an integration test of the detector.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import InputError


@dataclass(frozen=True)
class TwoRowMatrix:
    top: tuple
    bottom: tuple

    def __post_init__(self):
        if len(self.top) != len(self.bottom):
            raise InputError("top and bottom rows must have equal length")
        if set(self.top) & set(self.bottom):
            raise InputError("top and bottom symbols must come from disjoint roles")

    @property
    def m(self) -> int:
        return len(self.top)

    def column(self, c: int) -> tuple:
        return (self.top[c], self.bottom[c])

    def symbols(self) -> set:
        return set(self.top) | set(self.bottom)

    def to_json_dict(self) -> dict:
        return {"top": list(self.top), "bottom": list(self.bottom)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TwoRowMatrix":
        try:
            return cls(tuple(data["top"]), tuple(data["bottom"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"matrix JSON must have 'top' and 'bottom': {exc}")


@dataclass(frozen=True)
class PatternWitness:
    pattern: str  # "F1" | "F2"
    columns: tuple  # c1 < c2 < c3 < c4
    symbols: dict

    def to_json_dict(self) -> dict:
        return {"pattern": self.pattern, "columns": list(self.columns),
                "symbols": {k: str(v) for k, v in self.symbols.items()}}


def _matches_f1(M: TwoRowMatrix, c1, c2, c3, c4) -> bool:
    a, b = M.top[c1], M.top[c2]
    return (a != b and M.top[c3] == a and M.top[c4] == b
            and M.bottom[c2] == M.bottom[c3])


def _matches_f2(M: TwoRowMatrix, c1, c2, c3, c4) -> bool:
    s, t = M.bottom[c1], M.bottom[c2]
    return (s != t and M.bottom[c3] == s and M.bottom[c4] == t
            and M.top[c2] == M.top[c3])


def contains_forbidden_bruteforce(M: TwoRowMatrix) -> Optional[PatternWitness]:
    """O(m^4) oracle: test every column 4-tuple against both shapes."""
    for cs in combinations(range(M.m), 4):
        if _matches_f1(M, *cs):
            return PatternWitness("F1", cs, {"a": M.top[cs[0]], "b": M.top[cs[1]],
                                             "s": M.bottom[cs[1]]})
        if _matches_f2(M, *cs):
            return PatternWitness("F2", cs, {"a": M.top[cs[1]], "s": M.bottom[cs[0]],
                                             "t": M.bottom[cs[1]]})
    return None


def contains_forbidden_submatrix(M: TwoRowMatrix) -> Optional[PatternWitness]:
    """Indexed scan: for each middle column pair, look up outer occurrences.

    A witness for F1 is a pair c2 < c3 with equal bottoms and distinct tops
    such that top[c3] occurs before c2 and top[c2] occurs after c3; F2 is
    the transpose.  Agrees with the brute-force oracle; the witness found
    may differ, but existence never does.
    """
    m = M.m
    first_top: dict = {}
    first_bottom: dict = {}
    for c in range(m):
        first_top.setdefault(M.top[c], c)
        first_bottom.setdefault(M.bottom[c], c)
    last_top: dict = {}
    last_bottom: dict = {}
    for c in range(m - 1, -1, -1):
        last_top.setdefault(M.top[c], c)
        last_bottom.setdefault(M.bottom[c], c)

    for c2, c3 in combinations(range(m), 2):
        if M.bottom[c2] == M.bottom[c3] and M.top[c2] != M.top[c3]:
            c1 = first_top.get(M.top[c3])
            c4 = last_top.get(M.top[c2])
            if c1 is not None and c1 < c2 and c4 is not None and c4 > c3:
                return PatternWitness("F1", (c1, c2, c3, c4),
                                      {"a": M.top[c3], "b": M.top[c2], "s": M.bottom[c2]})
        if M.top[c2] == M.top[c3] and M.bottom[c2] != M.bottom[c3]:
            c1 = first_bottom.get(M.bottom[c3])
            c4 = last_bottom.get(M.bottom[c2])
            if c1 is not None and c1 < c2 and c4 is not None and c4 > c3:
                return PatternWitness("F2", (c1, c2, c3, c4),
                                      {"a": M.top[c2], "s": M.bottom[c3], "t": M.bottom[c2]})
    return None


def _extends_pattern_free(top: list, bottom: list, new_top, new_bottom) -> bool:
    """Would appending the column create an F1/F2 ending at it?

    The new column is rightmost, so it can only play the c4 role.
    """
    m = len(top)
    first_top: dict = {}
    first_bottom: dict = {}
    for c in range(m):
        first_top.setdefault(top[c], c)
        first_bottom.setdefault(bottom[c], c)
    for c2 in range(m):
        # F1 with c4 = new column: tops (a, b, a, b=new_top), bottoms (*, s, s, *)
        if top[c2] == new_top:
            for c3 in range(c2 + 1, m):
                if (bottom[c3] == bottom[c2] and top[c3] != top[c2]):
                    c1 = first_top.get(top[c3])
                    if c1 is not None and c1 < c2:
                        return True
        # F2 with c4 = new column
        if bottom[c2] == new_bottom:
            for c3 in range(c2 + 1, m):
                if (top[c3] == top[c2] and bottom[c3] != bottom[c2]):
                    c1 = first_bottom.get(bottom[c3])
                    if c1 is not None and c1 < c2:
                        return True
    return False


@dataclass(frozen=True)
class BoundReport:
    columns: int
    distinct_columns: int
    duplicate_columns: int
    symbol_count: int
    bound: float
    pattern_witness: Optional[PatternWitness]
    within_bound: bool
    hypothesis_ok: bool  # distinct columns and pattern-free
    lemma_violation: bool

    def to_json_dict(self) -> dict:
        return {
            "columns": self.columns,
            "distinct_columns": self.distinct_columns,
            "duplicate_columns": self.duplicate_columns,
            "symbols": self.symbol_count,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "hypothesis_ok": self.hypothesis_ok,
            "lemma_violation": self.lemma_violation,
            "pattern": self.pattern_witness.to_json_dict() if self.pattern_witness else None,
        }


def pptt_bound_check(M: TwoRowMatrix) -> BoundReport:
    """Check m <= 17 * n * log2(n) on the deduplicated matrix.

    Duplicate columns are reported and removed first (the bound's hypothesis
    needs distinct columns).  A pattern-free matrix over the bound would be
    a lemma violation and must never occur.
    """
    seen = set()
    dedup_top, dedup_bottom = [], []
    for c in range(M.m):
        col = M.column(c)
        if col in seen:
            continue
        seen.add(col)
        dedup_top.append(col[0])
        dedup_bottom.append(col[1])
    dedup = TwoRowMatrix(tuple(dedup_top), tuple(dedup_bottom))
    witness = contains_forbidden_submatrix(dedup)
    n = len(dedup.symbols())
    bound = 17 * n * math.log2(n) if n > 1 else 0.0
    within = dedup.m <= bound
    hypothesis_ok = witness is None
    return BoundReport(
        columns=M.m,
        distinct_columns=dedup.m,
        duplicate_columns=M.m - dedup.m,
        symbol_count=n,
        bound=bound,
        pattern_witness=witness,
        within_bound=within,
        hypothesis_ok=hypothesis_ok,
        lemma_violation=hypothesis_ok and not within,
    )


def random_matrix(rng: random.Random, max_cols: int = 30,
                  top_alphabet: int = 6, bottom_alphabet: int = 6) -> TwoRowMatrix:
    """Uniform random matrix (not necessarily pattern-free)."""
    m = rng.randint(1, max_cols)
    top = tuple(f"u{rng.randrange(top_alphabet)}" for _ in range(m))
    bottom = tuple(f"v{rng.randrange(bottom_alphabet)}" for _ in range(m))
    return TwoRowMatrix(top, bottom)


def random_pattern_free_matrix(rng: random.Random, max_cols: int = 30,
                               top_alphabet: int = 6, bottom_alphabet: int = 6,
                               distinct_columns: bool = True,
                               max_rejects: int = 200) -> TwoRowMatrix:
    """Greedy extension: append random columns that keep the matrix pattern-free."""
    target = rng.randint(1, max_cols)
    top: list = []
    bottom: list = []
    seen = set()
    rejects = 0
    while len(top) < target and rejects < max_rejects:
        cand = (f"u{rng.randrange(top_alphabet)}", f"v{rng.randrange(bottom_alphabet)}")
        if distinct_columns and cand in seen:
            rejects += 1
            continue
        if _extends_pattern_free(top, bottom, *cand):
            rejects += 1
            continue
        top.append(cand[0])
        bottom.append(cand[1])
        seen.add(cand)
    return TwoRowMatrix(tuple(top), tuple(bottom))


@dataclass(frozen=True)
class StressReport:
    trials: int
    lemma_violations: int
    max_columns_seen: int

    def to_json_dict(self) -> dict:
        return {"trials": self.trials, "lemma_violations": self.lemma_violations,
                "max_columns_seen": self.max_columns_seen}


def stress_bound(trials: int, seed: int, max_cols: int = 30) -> StressReport:
    """Generate pattern-free matrices and count (expected zero) bound violations."""
    if trials < 1:
        raise InputError("trials must be at least 1")
    rng = random.Random(seed)
    violations = 0
    max_seen = 0
    for _ in range(trials):
        M = random_pattern_free_matrix(rng, max_cols=max_cols)
        report = pptt_bound_check(M)
        max_seen = max(max_seen, report.distinct_columns)
        if report.lemma_violation:
            violations += 1
    return StressReport(trials, violations, max_seen)


def rename_symbols(M: TwoRowMatrix, top_map: dict, bottom_map: dict) -> TwoRowMatrix:
    return TwoRowMatrix(tuple(top_map[x] for x in M.top),
                        tuple(bottom_map[x] for x in M.bottom))


def load_matrix(path: str) -> TwoRowMatrix:
    with open(path) as fh:
        return TwoRowMatrix.from_json_dict(json.load(fh))
