"""Exact lattice-point machinery for cones {x >= 0 : A x = 0}.

The hot loop (backtracking with interval propagation) lives in the compiled
``_kernel`` extension; ``_pykernel`` is a line-for-line fallback selected at
import when the extension is missing.  Everything else here is plain Python.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.optimize import linprog

from . import _pykernel
from ._pykernel import SearchLimitExceeded

try:
    from . import _kernel
except ImportError:  # pragma: no cover - exercised when the extension is not built
    _kernel = None

log = logging.getLogger(__name__)

_BACKENDS = {"python": _pykernel.search}
if _kernel is not None:
    _BACKENDS["compiled"] = _kernel.search
_backend = "compiled" if _kernel is not None else "python"

MAX_FACTORIZATIONS = 10**6


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded its configured size limit."""


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _backend = name


Point = tuple[int, ...]


@dataclass(frozen=True)
class IntegerCone:
    """Nonnegative integer solutions of homogeneous equations, graded by a positive form."""

    num_vars: int
    equations: tuple[tuple[int, ...], ...]
    grading: tuple[int, ...] = None
    names: tuple[str, ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        eqs = tuple(tuple(int(a) for a in row) for row in self.equations)
        if any(len(row) != self.num_vars for row in eqs):
            raise ValueError("equation length does not match num_vars")
        object.__setattr__(self, "equations", eqs)
        g = (1,) * self.num_vars if self.grading is None else tuple(int(a) for a in self.grading)
        if len(g) != self.num_vars or any(a < 0 for a in g):
            raise ValueError("grading must be a nonnegative vector of length num_vars")
        object.__setattr__(self, "grading", g)

    def contains(self, x) -> bool:
        return (
            len(x) == self.num_vars
            and all(v >= 0 for v in x)
            and all(sum(a * v for a, v in zip(row, x)) == 0 for row in self.equations)
        )

    def degree(self, x) -> int:
        return sum(a * v for a, v in zip(self.grading, x))

    @cached_property
    def unit_bounds(self) -> tuple[Fraction, ...]:
        """max x_i over the slice {grading = 1}; raises if the grading is not positive."""
        n = self.num_vars
        a_eq = np.array(self.equations + (self.grading,), dtype=float).reshape(-1, n)
        b_eq = np.zeros(len(a_eq))
        b_eq[-1] = 1.0
        out = []
        for i in range(n):
            c = np.zeros(n)
            c[i] = -1.0
            res = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
            if res.status == 3:
                raise ValueError("grading is not positive on the cone: unbounded slice")
            if res.status == 2:
                out.append(Fraction(0))
                continue
            if res.status != 0:
                raise RuntimeError(f"linear program failed: {res.message}")
            out.append(Fraction(-res.fun).limit_denominator(10**6))
        return tuple(out)

    def bounds_at(self, d: int) -> list[int]:
        # small slack guards against LP round-off; bounds only need to be valid
        return [int(np.floor(float(c) * d + 1e-6)) for c in self.unit_bounds]


def _csr(rows):
    indptr = [0]
    indices: list[int] = []
    coefs: list[int] = []
    for row in rows:
        for j, a in enumerate(row):
            if a:
                indices.append(j)
                coefs.append(int(a))
        indptr.append(len(indices))
    return indptr, indices, coefs


def _sparse_blocks(blocks):
    bptr = [0]
    bidx: list[int] = []
    bval: list[int] = []
    for b in blocks:
        for j, v in enumerate(b):
            if v:
                bidx.append(j)
                bval.append(int(v))
        bptr.append(len(bidx))
    return bptr, bidx, bval


def solve_box(rows, rhs, lo, hi, *, block=(), collect=True, limit=None):
    """All integer points in the box ``[lo, hi]`` with ``rows . x = rhs``.

    Points whose lower bounds dominate a vector of ``block`` are pruned.
    Returns ``(count, sorted points)``.
    """
    indptr, indices, coefs = _csr(rows)
    bptr, bidx, bval = _sparse_blocks(block)
    try:
        count, pts = _BACKENDS[_backend](
            indptr, indices, coefs, list(rhs), list(lo), list(hi),
            bptr, bidx, bval, bool(collect), -1 if limit is None else int(limit),
        )
    except SearchLimitExceeded as exc:
        raise ResourceLimitError(str(exc)) from exc
    return count, sorted(pts)


def enumerate_at_degree(c: IntegerCone, d: int, *, block=(), limit=None) -> list[Point]:
    """All cone points of grading ``d`` in lexicographic order."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    rows = list(c.equations) + [c.grading]
    rhs = [0] * len(c.equations) + [d]
    _, pts = solve_box(rows, rhs, [0] * c.num_vars, c.bounds_at(d), block=block, limit=limit)
    return pts


def count_at_degree(c: IntegerCone, d: int, *, limit=None) -> int:
    """Number of cone points of grading ``d``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    rows = list(c.equations) + [c.grading]
    rhs = [0] * len(c.equations) + [d]
    count, _ = solve_box(rows, rhs, [0] * c.num_vars, c.bounds_at(d), collect=False, limit=limit)
    return count


@dataclass
class HilbertBasis:
    elements: list[Point]
    degree_bound: int
    complete: bool
    certified_to: int

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def hilbert_basis(c: IntegerCone, degree_bound: int, *, certify: bool = True) -> HilbertBasis:
    """Minimal nonzero cone points of grading <= ``degree_bound``.

    For a cone cut out by equations and x >= 0, a point is decomposable iff it
    dominates a smaller nonzero point, so each degree is searched with the basis
    found so far as blocking vectors.  With ``certify`` the search continues over
    (degree_bound, 2*degree_bound]; ``complete`` reports that nothing new appeared.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    basis: list[Point] = []
    for d in range(1, degree_bound + 1):
        basis.extend(enumerate_at_degree(c, d, block=basis))
    complete = False
    certified_to = degree_bound
    if certify:
        complete = True
        for d in range(degree_bound + 1, 2 * degree_bound + 1):
            extra = enumerate_at_degree(c, d, block=basis, limit=1)
            if extra:
                complete = False
                log.info("indecomposable point found at degree %d beyond the bound", d)
                break
            certified_to = d
    return HilbertBasis(sorted(basis, key=lambda p: (c.degree(p), p)), degree_bound, complete, certified_to)


def _grading_coeffs(c: IntegerCone, pi) -> list[Fraction] | None:
    """Rational y with grading = y . pi, if the grading factors through pi."""
    p = np.array(pi, dtype=float).reshape(-1, c.num_vars)
    g = np.array(c.grading, dtype=float)
    y, *_ = np.linalg.lstsq(p.T, g, rcond=None)
    ys = [Fraction(v).limit_denominator(1000) for v in y]
    for i in range(c.num_vars):
        if sum(ys[k] * int(pi[k][i]) for k in range(len(ys))) != c.grading[i]:
            return None
    return ys


def count_fiber(c: IntegerCone, pi, target, *, limit=None) -> int:
    """Number of cone points x with ``pi x = target``."""
    pi = [tuple(int(a) for a in row) for row in pi]
    target = [int(t) for t in target]
    if len(pi) != len(target):
        raise ValueError("target length does not match the map")
    ys = _grading_coeffs(c, pi)
    if ys is not None:
        deg = sum(y * t for y, t in zip(ys, target))
        if deg.denominator != 1 or deg < 0:
            return 0
        deg = int(deg)
    else:
        n = c.num_vars
        a_eq = np.array(list(c.equations) + pi, dtype=float).reshape(-1, n)
        b_eq = np.array([0] * len(c.equations) + target, dtype=float)
        res = linprog(-np.array(c.grading, dtype=float), A_eq=a_eq, b_eq=b_eq,
                      bounds=[(0, None)] * n, method="highs")
        if res.status == 2:
            return 0
        if res.status == 3:
            raise ValueError("the fiber is unbounded")
        if res.status != 0:
            raise RuntimeError(f"linear program failed: {res.message}")
        deg = int(np.floor(-res.fun + 1e-6))
    rows = list(c.equations) + pi
    rhs = [0] * len(c.equations) + target
    count, _ = solve_box(rows, rhs, [0] * c.num_vars, c.bounds_at(deg), collect=False, limit=limit)
    return count


def fiber_points(c: IntegerCone, pi, target, *, limit=None) -> list[Point]:
    pi = [tuple(int(a) for a in row) for row in pi]
    ys = _grading_coeffs(c, pi)
    if ys is None:
        raise ValueError("fiber_points needs a grading that factors through the map")
    deg = sum(y * t for y, t in zip(ys, target))
    if deg.denominator != 1 or deg < 0:
        return []
    rows = list(c.equations) + pi
    rhs = [0] * len(c.equations) + [int(t) for t in target]
    _, pts = solve_box(rows, rhs, [0] * c.num_vars, c.bounds_at(int(deg)), limit=limit)
    return pts


@dataclass(frozen=True)
class BinomialMove:
    """Two multisets of generator indices with equal generator sums."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(sorted(self.left)))
        object.__setattr__(self, "right", tuple(sorted(self.right)))

    @property
    def degree(self) -> tuple[int, int]:
        return (len(self.left), len(self.right))

    def key(self):
        return tuple(sorted((self.left, self.right)))

    def holds(self, gens) -> bool:
        return vector_sum(gens, self.left) == vector_sum(gens, self.right)

    def to_json(self):
        return [list(self.left), list(self.right)]


def normalize_moves(moves) -> list[BinomialMove]:
    """Drop trivial moves and duplicates (a move and its reverse are the same)."""
    seen = {}
    for mv in moves:
        if mv.left == mv.right:
            continue
        seen.setdefault(mv.key(), BinomialMove(*mv.key()))
    return [seen[k] for k in sorted(seen)]


def vector_sum(gens, indices) -> Point:
    if not indices:
        return tuple(0 for _ in gens[0])
    return tuple(int(x) for x in np.sum([gens[i] for i in indices], axis=0))


def relations_up_to_degree(gens, d: int) -> list[BinomialMove]:
    """Primitive binomials among ``gens``: disjoint multisets of size <= d with equal sums."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    arr = np.array(gens, dtype=np.int64)
    by_sum: dict[bytes, list[tuple[int, ...]]] = {}
    for size in range(1, d + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), size):
            s = arr[list(combo)].sum(axis=0)
            by_sum.setdefault(s.tobytes(), []).append(combo)
    moves = []
    for group in by_sum.values():
        for a, b in itertools.combinations(group, 2):
            if set(a).isdisjoint(b):
                moves.append(BinomialMove(a, b))
    return normalize_moves(moves)


def factorizations(target, gens, *, limit=MAX_FACTORIZATIONS) -> list[tuple[int, ...]]:
    """All multisets of generator indices summing to ``target``, as sorted tuples."""
    target = tuple(int(x) for x in target)
    gens = [tuple(int(x) for x in g) for g in gens]
    supports = [[(i, v) for i, v in enumerate(g) if v] for g in gens]
    # last generator index covering each coordinate
    last_cover = [-1] * len(target)
    for k, sup in enumerate(supports):
        for i, _ in sup:
            last_cover[i] = k
    out: list[tuple[int, ...]] = []
    rem = list(target)
    chosen: list[int] = []

    def rec(k: int):
        nz = [i for i, v in enumerate(rem) if v]
        if not nz:
            out.append(tuple(chosen))
            if len(out) > limit:
                raise ResourceLimitError(f"more than {limit} factorizations")
            return
        if k >= len(gens) or any(last_cover[i] < k for i in nz):
            return
        sup = supports[k]
        if not sup:
            rec(k + 1)
            return
        top = min(rem[i] // v for i, v in sup)
        for times in range(top, -1, -1):
            for i, v in sup:
                rem[i] -= times * v
            chosen.extend([k] * times)
            rec(k + 1)
            del chosen[len(chosen) - times:]
            for i, v in sup:
                rem[i] += times * v

    rec(0)
    return sorted(out)


class MoveIndex:
    """Moves indexed by generator so neighbours of a factorization are cheap to list."""

    def __init__(self, moves):
        self.by_gen: dict[int, list[tuple[Counter, tuple[int, ...], tuple[int, ...]]]] = {}
        for mv in moves:
            for src, dst in ((mv.left, mv.right), (mv.right, mv.left)):
                self.by_gen.setdefault(src[0], []).append((Counter(src), src, dst))

    def neighbours(self, fact: tuple[int, ...]):
        have = Counter(fact)
        for g in have:
            for need, src, dst in self.by_gen.get(g, ()):
                if all(have[x] >= c for x, c in need.items()):
                    new = have - need
                    new.update(dst)
                    yield tuple(sorted(new.elements()))


def factorization_components(facts, moves) -> list[list[tuple[int, ...]]]:
    """Connected components of the factorization graph, each sorted, in sorted order."""
    index = moves if isinstance(moves, MoveIndex) else MoveIndex(moves)
    todo = set(facts)
    comps = []
    while todo:
        start = min(todo)
        todo.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for nb in index.neighbours(f):
                if nb in todo:
                    todo.discard(nb)
                    comp.append(nb)
                    queue.append(nb)
        comps.append(sorted(comp))
    return sorted(comps)


def fiber_graph_connected(target, gens, moves) -> bool:
    """True iff every factorization of ``target`` is reachable from every other by moves."""
    facts = factorizations(target, gens)
    if not facts:
        raise ValueError("target is not in the semigroup generated by gens")
    return len(factorization_components(facts, moves)) == 1
