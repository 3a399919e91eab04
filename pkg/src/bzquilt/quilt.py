"""Quilts: one BZ triangle per trinode, glued along internal tree edges.

Side assignment at a trinode follows its rotation, starting (side 1) from the
neighbour whose branch holds the smallest leaf.  Gluing along an internal edge
equates the omega_i coefficient read on one side with the omega_{m-i}
coefficient read on the other, i.e. the two virtual weights are dual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .bzdiagram import BZWeighting, build_diagram, hexagon_constraints, side_weight_rows
from .lattice import IntegerCone
from .liealg import dual
from .tree import ProperSubtree, Tree, parse_tree


class Quilt:
    def __init__(self, tree: Tree, m: int):
        if m < 2:
            raise ValueError("m must be at least 2")
        tree = tree.canonical()
        self.tree = tree
        self.m = m
        self.diagram = build_diagram(m)
        self.trinodes = tree.trinodes
        self.block = {v: k for k, v in enumerate(self.trinodes)}
        self.side_of: dict[tuple[int, int], int] = {}
        for v in self.trinodes:
            nbs = tree.rotation[v]
            first = min(range(3), key=lambda i: min(tree.branch_leaves(v, nbs[i])))
            for s in range(3):
                self.side_of[(v, nbs[(first + s) % 3])] = s + 1

    @property
    def vertices_per_diagram(self) -> int:
        return self.diagram.num_vertices

    @property
    def num_vars(self) -> int:
        return len(self.trinodes) * self.vertices_per_diagram

    def var(self, trinode: int, vertex: int) -> int:
        return self.block[trinode] * self.vertices_per_diagram + vertex

    def variables_of(self, trinodes) -> list[int]:
        nv = self.vertices_per_diagram
        return [self.block[v] * nv + i for v in sorted(trinodes) for i in range(nv)]

    def var_name(self, i: int) -> str:
        k, vert = divmod(i, self.vertices_per_diagram)
        return f"{self.trinodes[k]}.{self.diagram.vertex_ids[vert]}"

    def _lift(self, trinode: int, row) -> tuple[int, ...]:
        out = [0] * self.num_vars
        base = self.block[trinode] * self.vertices_per_diagram
        for i, a in enumerate(row):
            out[base + i] = a
        return tuple(out)

    def reading_rows(self, trinode: int, towards: int) -> list[tuple[int, ...]]:
        """Coefficient forms of the side of ``trinode`` facing neighbour ``towards``."""
        side = self.side_of[(trinode, towards)]
        return [self._lift(trinode, row) for row in side_weight_rows(self.diagram, side)]

    @cached_property
    def hexagon_equations(self) -> list[tuple[int, ...]]:
        rows = hexagon_constraints(self.diagram)
        return [self._lift(v, row) for v in self.trinodes for row in rows]

    @cached_property
    def gluing_equations(self) -> list[tuple[int, ...]]:
        out = []
        m = self.m
        for u, v in self.tree.internal_edges:
            ru = self.reading_rows(u, v)
            rv = self.reading_rows(v, u)
            for i in range(m - 1):
                out.append(tuple(a - b for a, b in zip(ru[i], rv[m - 2 - i])))
        return out

    @cached_property
    def equations(self) -> list[tuple[int, ...]]:
        return self.hexagon_equations + self.gluing_equations

    @cached_property
    def boundary_rows(self) -> list[tuple[int, ...]]:
        """Rows of the boundary map: leaf 1's coefficients, then leaf 2's, ..."""
        rows = []
        for leaf in self.tree.leaves:
            _, u = self.tree.leaf_edge(leaf)
            rows.extend(self.reading_rows(u, leaf))
        return rows

    @cached_property
    def grading(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.boundary_rows))

    @cached_property
    def cone(self) -> IntegerCone:
        names = tuple(self.var_name(i) for i in range(self.num_vars))
        return IntegerCone(self.num_vars, tuple(self.equations), self.grading, names=names)

    @cached_property
    def omega2_rows(self) -> list[tuple[int, ...]]:
        if self.m != 3:
            raise ValueError("the omega_2 functional is defined for m = 3")
        return self.boundary_rows[1::2]

    def weighting(self, values) -> "QuiltWeighting":
        return QuiltWeighting(self, tuple(int(x) for x in values))

    def zero(self) -> "QuiltWeighting":
        return self.weighting((0,) * self.num_vars)

    def place(self, pieces: dict[int, BZWeighting]) -> "QuiltWeighting":
        """Weighting assembled from per-trinode BZ weightings (missing trinodes are zero)."""
        values = [0] * self.num_vars
        nv = self.vertices_per_diagram
        for v, w in pieces.items():
            base = self.block[v] * nv
            values[base : base + nv] = w.values
        return self.weighting(values)


@lru_cache(maxsize=None)
def build_quilt(t: Tree, m: int) -> Quilt:
    return Quilt(t, m)


@dataclass(frozen=True)
class QuiltWeighting:
    quilt: Quilt
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.quilt.num_vars:
            raise ValueError("wrong number of values for quilt")

    def is_valid(self) -> bool:
        return self.quilt.cone.contains(self.values)

    def __add__(self, other: "QuiltWeighting") -> "QuiltWeighting":
        if other.quilt is not self.quilt:
            raise ValueError("weightings live on different quilts")
        return QuiltWeighting(self.quilt, tuple(a + b for a, b in zip(self.values, other.values)))

    def to_json(self) -> dict:
        q = self.quilt
        return {
            "tree": q.tree.render(),
            "m": q.m,
            "values": {q.var_name(i): v for i, v in enumerate(self.values) if v},
        }

    @classmethod
    def from_json(cls, data) -> "QuiltWeighting":
        if isinstance(data, str):
            data = json.loads(data)
        q = build_quilt(parse_tree(data["tree"]), int(data["m"]))
        index = {q.var_name(i): i for i in range(q.num_vars)}
        values = [0] * q.num_vars
        for key, v in data["values"].items():
            if key not in index:
                raise ValueError(f"unknown variable {key!r}")
            values[index[key]] = int(v)
        return cls(q, tuple(values))


def _apply(row, values) -> int:
    return sum(a * v for a, v in zip(row, values) if a)


def boundary_map(w: QuiltWeighting) -> tuple[tuple[int, ...], ...]:
    """Boundary weight of each leaf, indexed by leaf label order."""
    q = w.quilt
    flat = [_apply(row, w.values) for row in q.boundary_rows]
    k = q.m - 1
    return tuple(tuple(flat[i * k : (i + 1) * k]) for i in range(q.tree.n))


def side_reading(w: QuiltWeighting, trinode: int, towards: int) -> tuple[int, ...]:
    return tuple(_apply(row, w.values) for row in w.quilt.reading_rows(trinode, towards))


def glue_duality_check(w: QuiltWeighting, e: tuple[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Virtual weights read on both sides of an internal edge; for valid w they are dual."""
    u, v = sorted(e)
    if w.quilt.tree.is_leaf(u):
        raise ValueError(f"{e} is a leaf edge")
    return side_reading(w, u, v), side_reading(w, v, u)


def restrict(w: QuiltWeighting, region) -> QuiltWeighting | BZWeighting:
    """Restriction to a trinode (a BZ weighting), or to a subtree / set of trinodes
    (a weighting of the same quilt, zero elsewhere)."""
    q = w.quilt
    nv = q.vertices_per_diagram
    if isinstance(region, int):
        base = q.block[region] * nv
        return BZWeighting(q.diagram, w.values[base : base + nv])
    if isinstance(region, ProperSubtree):
        keep = {v for v in region.vertices if not q.tree.is_leaf(v)}
    else:
        keep = set(region)
    values = [0] * q.num_vars
    for i in q.variables_of(keep):
        values[i] = w.values[i]
    return QuiltWeighting(q, tuple(values))


def support(w: QuiltWeighting) -> frozenset[tuple[int, int]]:
    q = w.quilt
    out = set()
    for u, v in q.tree.edges:
        ends = [x for x in (u, v) if not q.tree.is_leaf(x)]
        if any(any(side_reading(w, x, v if x == u else u)) for x in ends):
            out.add((u, v))
    return frozenset(out)


def omega2_functional(w: QuiltWeighting) -> int:
    if w.quilt.m != 3:
        raise ValueError("the omega_2 functional is defined for m = 3")
    return sum(wt[1] for wt in boundary_map(w))


def is_dual_pair(a, b) -> bool:
    return tuple(a) == dual(tuple(b))


def fiber_count(t: Tree, weights, *, limit=None) -> int:
    """Number of quilt weightings whose leaf boundary weights are ``weights`` (leaf order)."""
    from .lattice import count_fiber

    weights = [tuple(int(c) for c in w) for w in weights]
    if len(weights) != t.n:
        raise ValueError(f"expected {t.n} weights, got {len(weights)}")
    ranks = {len(w) for w in weights}
    if len(ranks) != 1:
        raise ValueError("weights must share a common rank")
    q = build_quilt(t, ranks.pop() + 1)
    return count_fiber(q.cone, q.boundary_rows, [c for w in weights for c in w], limit=limit)
