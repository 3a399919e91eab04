"""Generators and relations of the sl_3 quilt semigroups.

Minimal generators are built by propagation over the span of a leaf subset:
branch trinodes carry X or Y, pass-through trinodes carry some P_ij, and the
reading flips to its dual across every internal edge.  Relations come in two
families: swaps of the halves of two generators across an edge, and lifts of
the single-triangle cubic X*Y = P12*P23*P31 to every trinode.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from .bzdiagram import sl3_named_triangles
from .lattice import (
    BinomialMove,
    MoveIndex,
    factorization_components,
    factorizations,
    normalize_moves,
    vector_sum,
)
from .quilt import (
    Quilt,
    QuiltWeighting,
    boundary_map,
    build_quilt,
    omega2_functional,
    restrict,
    support,
)
from .tree import ProperSubtree, Tree, caterpillar, is_odd_subtree, proper_subtrees, subtree

log = logging.getLogger(__name__)

OMEGA1, OMEGA2 = 1, 2


@dataclass(frozen=True)
class GeneratorTag:
    weighting: QuiltWeighting
    subtree: ProperSubtree
    variant: int

    @property
    def values(self) -> tuple[int, ...]:
        return self.weighting.values

    @property
    def leaf_set(self) -> tuple[int, ...]:
        return self.subtree.leaf_set


@dataclass(frozen=True)
class RelationFamily:
    swaps: tuple[BinomialMove, ...]
    cubics: tuple[BinomialMove, ...]

    @property
    def all(self) -> list[BinomialMove]:
        return list(self.swaps) + list(self.cubics)


def _local_piece(span_degree: int, side_in: int, reading: int, out_side: int | None):
    pieces = sl3_named_triangles()
    if span_degree == 3:
        return pieces["X" if reading == OMEGA1 else "Y"]
    if reading == OMEGA1:
        return pieces[f"P{side_in}{out_side}"]
    return pieces[f"P{out_side}{side_in}"]


def _propagate(q: Quilt, s: ProperSubtree, start_reading: int) -> QuiltWeighting:
    t = q.tree
    leaf0 = s.leaf_set[0]
    _, u0 = t.leaf_edge(leaf0)
    pieces = {}
    stack = [(u0, leaf0, start_reading)]
    while stack:
        v, prev, reading = stack.pop()
        side_in = q.side_of[(v, prev)]
        onward = [x for x in t.neighbors(v) if x != prev and x in s.vertices]
        deg = s.degree(v)
        out_side = q.side_of[(v, onward[0])] if deg == 2 else None
        pieces[v] = _local_piece(deg, side_in, reading, out_side)
        if deg == 3:
            out_reading = reading
        else:
            out_reading = OMEGA2 if reading == OMEGA1 else OMEGA1
        for x in onward:
            if not t.is_leaf(x):
                # the dual of omega_1 is omega_2 for sl_3
                stack.append((x, v, OMEGA2 if out_reading == OMEGA1 else OMEGA1))
    return q.place(pieces)


@lru_cache(maxsize=None)
def generators(t: Tree) -> tuple[GeneratorTag, ...]:
    """Both minimal generators for each proper subtree.

    Sorted by leaf-set size, then leaf set, then variant.  Variant 0 reads
    omega_1 at the smallest leaf of the subtree, variant 1 is its dual.
    """
    q = build_quilt(t, 3)
    out = []
    for s in proper_subtrees(q.tree):
        for variant, reading in enumerate((OMEGA1, OMEGA2)):
            w = _propagate(q, s, reading)
            if not w.is_valid():
                raise AssertionError(f"propagated weighting for {s.leaf_set} violates the cone equations")
            out.append(GeneratorTag(w, s, variant))
    return tuple(out)


def generator_vectors(t: Tree) -> list[tuple[int, ...]]:
    return [g.values for g in generators(t)]


def _swap_moves(q: Quilt, gens: list[tuple[int, ...]]) -> list[BinomialMove]:
    t = q.tree
    lookup = {g: i for i, g in enumerate(gens)}
    moves = []
    for u, v in t.internal_edges:
        left = set(q.variables_of(x for x in t.component(v, u) if not t.is_leaf(x)))
        rows = q.reading_rows(u, v)
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, g in enumerate(gens):
            reading = tuple(sum(a * x for a, x in zip(row, g)) for row in rows)
            if any(reading):
                groups.setdefault(reading, []).append(i)
        for members in groups.values():
            for i, j in itertools.combinations(members, 2):
                gi, gj = gens[i], gens[j]
                a = tuple(gi[k] if k in left else gj[k] for k in range(q.num_vars))
                b = tuple(gj[k] if k in left else gi[k] for k in range(q.num_vars))
                if a in lookup and b in lookup:
                    moves.append(BinomialMove((i, j), (lookup[a], lookup[b])))
    return moves


def _cubic_moves(q: Quilt, gens: list[tuple[int, ...]]) -> list[BinomialMove]:
    t = q.tree
    named = sl3_named_triangles()
    xy = named["X"] + named["Y"]
    if xy == named["P12"] + named["P23"] + named["P31"]:
        cycle = ((1, 2), (2, 3), (3, 1))
    else:
        assert xy == named["P21"] + named["P32"] + named["P13"]
        cycle = ((2, 1), (3, 2), (1, 3))
    lookup = {g: i for i, g in enumerate(gens)}
    moves = []
    for v in q.trinodes:
        local = {}
        for i, g in enumerate(gens):
            piece = restrict(q.weighting(g), v)
            for name in ("X", "Y"):
                if piece == named[name]:
                    local.setdefault(name, []).append(i)
        by_side = {q.side_of[(v, x)]: x for x in t.neighbors(v)}
        branch_vars = {
            s: set(q.variables_of(y for y in t.component(v, x) if not t.is_leaf(y)))
            for s, x in by_side.items()
        }
        for ix in local.get("X", ()):
            for iy in local.get("Y", ()):
                gx, gy = gens[ix], gens[iy]
                right = []
                for i, j in cycle:
                    p = q.place({v: named[f"P{i}{j}"]}).values
                    vec = tuple(
                        gx[k] if k in branch_vars[i] else gy[k] if k in branch_vars[j] else p[k]
                        for k in range(q.num_vars)
                    )
                    right.append(lookup.get(vec))
                if None in right:
                    raise AssertionError("cubic lift did not produce generators")
                moves.append(BinomialMove((ix, iy), tuple(right)))
    return moves


@lru_cache(maxsize=None)
def relation_families(t: Tree) -> RelationFamily:
    q = build_quilt(t, 3)
    gens = generator_vectors(t)
    swaps = normalize_moves(_swap_moves(q, gens))
    cubics = normalize_moves(_cubic_moves(q, gens))
    for mv in swaps + cubics:
        if not mv.holds(gens):
            raise AssertionError(f"{mv} is not a relation")
    return RelationFamily(tuple(swaps), tuple(cubics))


def semigroup_elements(gens, degree_bound: int) -> list[tuple[int, ...]]:
    """Distinct sums of between 1 and ``degree_bound`` generators, sorted."""
    seen = set()
    for size in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), size):
            seen.add(vector_sum(gens, combo))
    return sorted(seen)


_WORK: dict = {}


def _init_worker(gens, moves):
    _WORK["gens"] = gens
    _WORK["index"] = MoveIndex(moves)


def _check_one(el):
    facts = factorizations(el, _WORK["gens"])
    comps = factorization_components(facts, _WORK["index"])
    if len(comps) > 1:
        return {
            "element": list(el),
            "factorizations": len(facts),
            "components": [[list(f) for f in c] for c in comps],
        }
    return None


def check_fibers(elements, gens, moves, *, threads: int = 1):
    """Disconnected factorization graphs among ``elements``, in input order."""
    if threads > 1 and len(elements) > 200:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(1, len(elements) // (8 * threads))
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(gens, moves)) as pool:
            results = list(pool.map(_check_one, elements, chunksize=chunk))
    else:
        _init_worker(gens, moves)
        results = [_check_one(el) for el in elements]
    return [r for r in results if r is not None]


def verify_presentation(t: Tree, degree_bound: int, *, swaps: bool = True, cubics: bool = True,
                        threads: int = 1) -> dict:
    """Check fiber-graph connectivity for every element of generator-degree <= degree_bound."""
    if degree_bound < 3:
        raise ValueError("degree_bound must be at least 3")
    fam = relation_families(t)
    moves = (list(fam.swaps) if swaps else []) + (list(fam.cubics) if cubics else [])
    gens = generator_vectors(t)
    elements = semigroup_elements(gens, degree_bound)
    failures = check_fibers(elements, gens, moves, threads=threads)
    return {
        "tree": build_quilt(t, 3).tree.render(),
        "m": 3,
        "degree_bound": degree_bound,
        "families": [name for name, on in (("swaps", swaps), ("cubics", cubics)) if on],
        "num_moves": len(moves),
        "elements_checked": len(elements),
        "failures": failures,
        "passed": not failures,
    }


def all_omega1_leaves(g: GeneratorTag) -> bool:
    """Every nonzero leaf boundary weight of g is omega_1."""
    return all(b in ((0, 0), (1, 0)) for b in boundary_map(g.weighting))


def p_face_generators(t: Tree) -> list[GeneratorTag]:
    """Generators with omega_2 functional zero.

    Raises if this set differs from either the odd-subtree selection or the
    all-omega_1 leaf reading selection.
    """
    gens = generators(t)
    face = [g for g in gens if omega2_functional(g.weighting) == 0]
    odd = [g for g in gens if g.variant == 0 and is_odd_subtree(g.subtree)]
    leaves = [g for g in gens if all_omega1_leaves(g)]
    if not face == odd == leaves:
        raise AssertionError("face generators disagree across characterizations")
    return face


def triple_generators(n: int) -> dict[tuple[int, int, int], GeneratorTag]:
    """The caterpillar face generators w_{i,j,k}, keyed by sorted triple."""
    t = caterpillar(n)
    return {g.leaf_set: g for g in p_face_generators(t)}


def caterpillar_quadratics(n: int, families=("first", "last")) -> list[BinomialMove]:
    """Exchange relations among the w_{i,j,k} of the caterpillar face.

    ``first``: w_{ijk} w_{rst} = w_{rjk} w_{ist} when max(i, r) < min(j, s);
    ``last``:  w_{ijk} w_{rst} = w_{ijt} w_{rsk} when max(j, s) < min(k, t).
    Moves are over index triples rather than generator positions; each one is
    checked as an equal-sum relation among the quilt weightings.
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    unknown = set(families) - {"first", "last"}
    if unknown:
        raise ValueError(f"unknown relation families {sorted(unknown)}")
    ws = triple_generators(n)
    triples = sorted(ws)
    out = set()
    for a, b in itertools.combinations_with_replacement(triples, 2):
        for x, y in ((a, b), (b, a)):
            (i, j, k), (r, s, tt) = x, y
            cand = []
            if "first" in families and i != r and max(i, r) < min(j, s):
                cand.append(((r, j, k), (i, s, tt)))
            if "last" in families and k != tt and max(j, s) < min(k, tt):
                cand.append(((i, j, tt), (r, s, k)))
            for c, d in cand:
                lhs = tuple(sorted((x, y)))
                rhs = tuple(sorted((c, d)))
                if lhs != rhs:
                    out.add(tuple(sorted((lhs, rhs))))
    moves = [BinomialMove(lhs, rhs) for lhs, rhs in sorted(out)]
    for mv in moves:
        lv = vector_sum([ws[p].values for p in mv.left], [0, 1])
        rv = vector_sum([ws[p].values for p in mv.right], [0, 1])
        if lv != rv:
            raise AssertionError(f"{mv} is not a relation in the quilt")
    return moves


def leaf_subset_supports(t: Tree) -> dict[tuple[int, ...], list[frozenset]]:
    out: dict[tuple[int, ...], list[frozenset]] = {}
    for g in generators(t):
        out.setdefault(g.leaf_set, []).append(support(g.weighting))
    return out


def find_generator(t: Tree, leaves, variant: int = 0) -> GeneratorTag:
    key = subtree(build_quilt(t, 3).tree, leaves).leaf_set
    for g in generators(t):
        if g.leaf_set == key and g.variant == variant:
            return g
    raise KeyError(key)
