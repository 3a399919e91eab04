"""Berenstein-Zelevinsky triangle diagrams for sl_m.

The diagram is a triangular array of vertex *trios*, one per upward cell of a
triangle with m-1 cells to an edge: trio (r, c) for 0 <= c <= r <= m-2, each
carrying a top (``t``), bottom-left (``l``) and bottom-right (``r``) vertex.
Each downward gap between trios (r, c), (r+1, c), (r+1, c+1) is a hexagon.
Neighbouring hexagons share vertices.  The outer trio vertices form the
three sides, read counter-clockwise:

* side 1 (bottom, left to right): ``l, r`` of trios (m-2, 0), ..., (m-2, m-2)
* side 2 (right, bottom to top):  ``r, t`` of trios (m-2, m-2), ..., (0, 0)
* side 3 (left, top to bottom):   ``t, l`` of trios (0, 0), ..., (m-2, 0)

Consecutive pairs along a side belong to one trio, so the omega_i
coefficient of a side's boundary weight is the sum of its i-th pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class BZDiagram:
    m: int
    vertex_ids: tuple[str, ...]
    hexagons: tuple[tuple[int, int, int, int, int, int], ...]
    corners: tuple[int, int, int]
    sides: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_ids)

    def index(self, vid: str) -> int:
        return self.vertex_ids.index(vid)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "vertices": list(self.vertex_ids),
            "hexagons": [[self.vertex_ids[i] for i in h] for h in self.hexagons],
            "corners": [self.vertex_ids[i] for i in self.corners],
            "sides": [[self.vertex_ids[i] for i in s] for s in self.sides],
        }


def _vid(r: int, c: int, pos: str) -> str:
    return f"r{r}c{c}{pos}"


@lru_cache(maxsize=None)
def build_diagram(m: int) -> BZDiagram:
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    k = m - 2
    ids = [_vid(r, c, p) for r in range(k + 1) for c in range(r + 1) for p in "tlr"]
    idx = {v: i for i, v in enumerate(ids)}
    hexagons = []
    for r in range(k):
        for c in range(r + 1):
            # clockwise from the top-left vertex
            hexagons.append((
                idx[_vid(r, c, "l")],
                idx[_vid(r, c, "r")],
                idx[_vid(r + 1, c + 1, "t")],
                idx[_vid(r + 1, c + 1, "l")],
                idx[_vid(r + 1, c, "r")],
                idx[_vid(r + 1, c, "t")],
            ))
    bottom = []
    for c in range(k + 1):
        bottom += [idx[_vid(k, c, "l")], idx[_vid(k, c, "r")]]
    right = []
    for r in range(k, -1, -1):
        right += [idx[_vid(r, r, "r")], idx[_vid(r, r, "t")]]
    left = []
    for r in range(k + 1):
        left += [idx[_vid(r, 0, "t")], idx[_vid(r, 0, "l")]]
    corners = (idx[_vid(k, 0, "l")], idx[_vid(k, k, "r")], idx[_vid(0, 0, "t")])
    return BZDiagram(m, tuple(ids), tuple(hexagons), corners, (tuple(bottom), tuple(right), tuple(left)))


def hexagon_constraints(d: BZDiagram) -> list[tuple[int, ...]]:
    """Rows x_A + x_B - x_E - x_D = 0, three per hexagon (opposite edges 1&4, 2&5, 3&6)."""
    rows = []
    for h in d.hexagons:
        for s in range(3):
            row = [0] * d.num_vertices
            a, b = h[s], h[s + 1]
            e, dd = h[s + 3], h[(s + 4) % 6]
            row[a] += 1
            row[b] += 1
            row[e] -= 1
            row[dd] -= 1
            rows.append(tuple(row))
    return rows


def side_weight_rows(d: BZDiagram, side: int) -> list[tuple[int, ...]]:
    """Linear forms giving the omega_1..omega_{m-1} coefficients on a side."""
    reading = d.sides[side - 1]
    rows = []
    for i in range(d.m - 1):
        row = [0] * d.num_vertices
        row[reading[2 * i]] += 1
        row[reading[2 * i + 1]] += 1
        rows.append(tuple(row))
    return rows


@dataclass(frozen=True)
class BZWeighting:
    diagram: BZDiagram
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.diagram.num_vertices:
            raise ValueError("wrong number of values for diagram")
        if any(v < 0 for v in self.values):
            raise ValueError("BZ weightings are nonnegative")

    def is_valid(self) -> bool:
        return all(
            sum(a * v for a, v in zip(row, self.values)) == 0
            for row in hexagon_constraints(self.diagram)
        )

    def __add__(self, other: "BZWeighting") -> "BZWeighting":
        if other.diagram.m != self.diagram.m:
            raise ValueError("cannot add weightings of different diagrams")
        return BZWeighting(self.diagram, tuple(a + b for a, b in zip(self.values, other.values)))

    def to_json(self) -> str:
        return json.dumps({vid: v for vid, v in zip(self.diagram.vertex_ids, self.values)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, m: int) -> "BZWeighting":
        d = build_diagram(m)
        raw = json.loads(text)
        unknown = set(raw) - set(d.vertex_ids)
        if unknown:
            raise ValueError(f"unknown vertex ids {sorted(unknown)}")
        return cls(d, tuple(int(raw.get(v, 0)) for v in d.vertex_ids))


def zero_weighting(m: int) -> BZWeighting:
    d = build_diagram(m)
    return BZWeighting(d, (0,) * d.num_vertices)


def boundary_weight(w: BZWeighting, side: int) -> tuple[int, ...]:
    if side not in (1, 2, 3):
        raise ValueError("side must be 1, 2 or 3")
    return tuple(sum(a * v for a, v in zip(row, w.values)) for row in side_weight_rows(w.diagram, side))


def boundary_weights(w: BZWeighting) -> tuple[tuple[int, ...], ...]:
    return tuple(boundary_weight(w, s) for s in (1, 2, 3))


def triangle_cone(m: int):
    """The cone BZ_3(m) graded by total boundary degree."""
    from .lattice import IntegerCone

    d = build_diagram(m)
    grading = [0] * d.num_vertices
    for side in (1, 2, 3):
        for row in side_weight_rows(d, side):
            for i, a in enumerate(row):
                grading[i] += a
    return IntegerCone(d.num_vertices, tuple(hexagon_constraints(d)), tuple(grading), names=d.vertex_ids)


def triangle_boundary_map(m: int) -> list[tuple[int, ...]]:
    d = build_diagram(m)
    return [row for side in (1, 2, 3) for row in side_weight_rows(d, side)]


@lru_cache(maxsize=None)
def sl3_named_triangles() -> dict[str, BZWeighting]:
    """The eight minimal sl_3 triangles: X, Y and P_ij (omega_1 on side i, omega_2 on side j)."""
    from .lattice import fiber_points

    cone = triangle_cone(3)
    pi = triangle_boundary_map(3)
    d = build_diagram(3)
    w1, w2, zero = (1, 0), (0, 1), (0, 0)
    targets = {"X": (w1, w1, w1), "Y": (w2, w2, w2)}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                sides = [zero, zero, zero]
                sides[i - 1], sides[j - 1] = w1, w2
                targets[f"P{i}{j}"] = tuple(sides)
    out = {}
    for name, tgt in targets.items():
        pts = fiber_points(cone, pi, [c for w in tgt for c in w])
        assert len(pts) == 1, f"{name} fiber is not a single point"
        out[name] = BZWeighting(d, pts[0])
    return out
