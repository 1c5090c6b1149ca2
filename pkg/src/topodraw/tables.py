"""Order-type tables of complete bipartite drawings.

A table records, for ordered parts U and V, the order type (1..5) of every
4-tuple (U[i], U[j], V[s], V[t]) with i < j and s < t.  Tables are produced
by the geometry and half-circle modules and consumed by the extraction
pipeline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .errors import InputError

ORDER_TYPES = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class TypeTable:
    part_u: tuple
    part_v: tuple
    types: Mapping  # (i, j, s, t) with i<j, s<t  ->  type in 1..5

    def __post_init__(self):
        nu, nv = len(self.part_u), len(self.part_v)
        for i, j in combinations(range(nu), 2):
            for s, t in combinations(range(nv), 2):
                w = self.types.get((i, j, s, t))
                if w not in ORDER_TYPES:
                    raise InputError(f"missing or invalid type for 4-tuple {(i, j, s, t)}: {w!r}")

    def type_at(self, i: int, j: int, s: int, t: int) -> int:
        if i > j:
            i, j = j, i
        if s > t:
            s, t = t, s
        return self.types[(i, j, s, t)]

    def u_pairs(self):
        return combinations(range(len(self.part_u)), 2)

    def v_pairs(self):
        return combinations(range(len(self.part_v)), 2)

    def to_json_dict(self) -> dict:
        entries = [
            {"u": [i, j], "v": [s, t], "type": w}
            for (i, j, s, t), w in sorted(self.types.items())
        ]
        return {"U": list(self.part_u), "V": list(self.part_v), "types": entries}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TypeTable":
        try:
            part_u = tuple(data["U"])
            part_v = tuple(data["V"])
            entries = data["types"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"type table JSON must have 'U', 'V' and 'types': {exc}")
        types = {}
        for ent in entries:
            i, j = ent["u"]
            s, t = ent["v"]
            types[(i, j, s, t)] = ent["type"]
        return cls(part_u, part_v, types)


def uniform_table(nu: int, nv: int, w: int) -> TypeTable:
    """Table in which every 4-tuple has the same type; U and V are 0..n-1."""
    if w not in ORDER_TYPES:
        raise InputError(f"invalid order type {w!r}")
    types = {
        (i, j, s, t): w
        for i, j in combinations(range(nu), 2)
        for s, t in combinations(range(nv), 2)
    }
    return TypeTable(tuple(range(nu)), tuple(range(nv)), types)


def load_table(path: str) -> TypeTable:
    with open(path) as fh:
        return TypeTable.from_json_dict(json.load(fh))
