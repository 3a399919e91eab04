"""Gel'fand-Tsetlin patterns of shape (d, d, d, 0, ..., 0) and the caterpillar face.

Rows are stored top-down: ``rows[0]`` is row n (the shape), ``rows[-1]`` is
row 1.  Entry x_{r,j} sits in row r at position j, and interlacing reads
x_{r+1,j} >= x_{r,j} >= x_{r+1,j+1}.

Only three diagonals are free.  Counting from the forced corner,
a_{p,3} = x_{n-p,3}, a_{p,2} = x_{n-1-p,2}, a_{p,1} = x_{n-2-p,1} for
p = 1..n-3; everything else is pinned to d or 0 by interlacing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .lattice import (
    BinomialMove,
    IntegerCone,
    MoveIndex,
    count_at_degree,
    factorization_components,
    factorizations,
    vector_sum,
)
from .liealg import gl_dim_omega3
from .presentation import caterpillar_quadratics, triple_generators
from .quilt import build_quilt
from .tree import caterpillar

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class GTPattern:
    n: int
    lam: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n or any(len(row) != self.n - k for k, row in enumerate(self.rows)):
            raise ValueError("rows must form a triangle with n entries on top")
        if not self.is_valid():
            raise ValueError("pattern violates interlacing or has the wrong top row")

    def entry(self, r: int, j: int) -> int:
        """x_{r,j} with 1 <= j <= r <= n."""
        return self.rows[self.n - r][j - 1]

    def is_valid(self) -> bool:
        if self.rows[0] != top_row(self.n, self.lam):
            return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            for j, x in enumerate(lower):
                if not upper[j] >= x >= upper[j + 1]:
                    return False
        return True

    def diagonal(self, col: int) -> tuple[int, ...]:
        """a_{1,col}, ..., a_{n-3,col}."""
        n = self.n
        if col == 3:
            return tuple(self.entry(n - p, 3) for p in range(1, n - 2))
        if col == 2:
            return tuple(self.entry(n - 1 - p, 2) for p in range(1, n - 2))
        if col == 1:
            return tuple(self.entry(n - 2 - p, 1) for p in range(1, n - 2))
        raise ValueError("col must be 1, 2 or 3")

    def __add__(self, other: "GTPattern") -> "GTPattern":
        if other.n != self.n:
            raise ValueError("patterns of different size")
        rows = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        return GTPattern(self.n, self.lam + other.lam, rows)

    def to_json(self) -> str:
        return json.dumps([list(r) for r in self.rows])


def top_row(n: int, lam: int) -> tuple[int, ...]:
    return (lam,) * 3 + (0,) * (n - 3)


def _check_n(n: int):
    if n < 3:
        raise ValueError("n must be at least 3")


@lru_cache(maxsize=None)
def _enumerate(n: int, lam: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    out = []

    def rec(rows):
        upper = rows[-1]
        if len(upper) == 1:
            out.append(tuple(rows))
            return
        ranges = [range(upper[j + 1], upper[j] + 1) for j in range(len(upper) - 1)]
        for row in itertools.product(*ranges):
            rows.append(row)
            rec(rows)
            rows.pop()

    rec([top_row(n, lam)])
    return tuple(out)


def enumerate_patterns(n: int, lam: int) -> list[GTPattern]:
    """All patterns with top row (lam, lam, lam, 0, ..., 0), in lexicographic row order."""
    _check_n(n)
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    return [GTPattern(n, lam, rows) for rows in _enumerate(n, lam)]


def _check_triple(n: int, t: Triple):
    i, j, k = t
    if not 1 <= i < j < k <= n:
        raise ValueError(f"need 1 <= i < j < k <= {n}, got {t}")


def embed_generator(n: int, i: int, j: int, k: int) -> GTPattern:
    """The lam = 1 pattern with a_{p,3} = [p < i], a_{p,2} = [p < j-1], a_{p,1} = [p < k-2].

    The completion from these diagonals is checked to be the only pattern
    carrying them.
    """
    _check_n(n)
    _check_triple(n, (i, j, k))
    want = {
        3: tuple(int(p <= i - 1) for p in range(1, n - 2)),
        2: tuple(int(p <= j - 2) for p in range(1, n - 2)),
        1: tuple(int(p <= k - 3) for p in range(1, n - 2)),
    }
    hits = [g for g in enumerate_patterns(n, 1) if all(g.diagonal(c) == v for c, v in want.items())]
    if len(hits) != 1:
        raise AssertionError(f"{len(hits)} patterns carry the diagonals of {(i, j, k)}")
    return hits[0]


def wedge(t1: Triple, t2: Triple) -> Triple:
    return tuple(min(a, b) for a, b in zip(t1, t2))


def vee(t1: Triple, t2: Triple) -> Triple:
    return tuple(max(a, b) for a, b in zip(t1, t2))


def _increasing(t) -> bool:
    return len(t) == 3 and t[0] < t[1] < t[2]


def wedge_vee_move(t1: Triple, t2: Triple) -> BinomialMove | None:
    """{t1, t2} -> {t1 ^ t2, t1 v t2}, or None when the pair is already comparable."""
    t1, t2 = tuple(t1), tuple(t2)
    if not (_increasing(t1) and _increasing(t2)):
        raise ValueError(f"triples must be strictly increasing: {t1}, {t2}")
    lo, hi = wedge(t1, t2), vee(t1, t2)
    if not (_increasing(lo) and _increasing(hi)):
        raise ValueError(f"wedge/vee of {t1}, {t2} is not strictly increasing")
    mv = BinomialMove((t1, t2), (lo, hi))
    if mv.left == mv.right:
        return None
    return mv


def triples(n: int) -> list[Triple]:
    return list(itertools.combinations(range(1, n + 1), 3))


def wedge_vee_moves(n: int) -> list[BinomialMove]:
    out = {}
    for t1, t2 in itertools.combinations(triples(n), 2):
        mv = wedge_vee_move(t1, t2)
        if mv is not None:
            out[mv.key()] = mv
    return [out[k] for k in sorted(out)]


def _to_indices(moves, index) -> list[BinomialMove]:
    return [BinomialMove([index[t] for t in mv.left], [index[t] for t in mv.right]) for mv in moves]


def ideal_equality_check(n: int, degree_bound: int, *, families=("first", "last")) -> dict:
    """Compare the wedge/vee moves with the caterpillar exchange relations.

    (a) each wedge/vee move is an equal-sum relation among the w_{ijk};
    (b) each exchange relation keeps the wedge and vee of its pair;
    (c) both move sets give the same factorization components for every
        sum of at most ``degree_bound`` generators.
    ``families`` selects which exchange patterns to use, for mutation tests.
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    if degree_bound < 2:
        raise ValueError("degree_bound must be at least 2")
    ws = triple_generators(n)
    order = triples(n)
    index = {t: k for k, t in enumerate(order)}
    gens = [ws[t].values for t in order]

    wv = wedge_vee_moves(n)
    quad = caterpillar_quadratics(n, families=families)

    bad_a = []
    for mv in wv:
        lv = vector_sum([ws[t].values for t in mv.left], [0, 1])
        rv = vector_sum([ws[t].values for t in mv.right], [0, 1])
        if lv != rv:
            bad_a.append([list(map(list, mv.left)), list(map(list, mv.right))])
    bad_b = []
    for mv in quad:
        (s, t), (s2, t2) = mv.left, mv.right
        if wedge(s, t) != wedge(s2, t2) or vee(s, t) != vee(s2, t2):
            bad_b.append([list(map(list, mv.left)), list(map(list, mv.right))])

    idx_wv = MoveIndex(_to_indices(wv, index))
    idx_quad = MoveIndex(_to_indices(quad, index))
    seen = set()
    mismatches = []
    for size in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), size):
            el = vector_sum(gens, combo)
            if el in seen:
                continue
            seen.add(el)
            facts = factorizations(el, gens)
            if len(facts) == 1:
                continue
            c1 = factorization_components(facts, idx_wv)
            c2 = factorization_components(facts, idx_quad)
            if c1 != c2:
                mismatches.append({
                    "element": [list(order[g]) for g in min(facts)],
                    "wedge_vee_components": len(c1),
                    "exchange_components": len(c2),
                })
    return {
        "n": n,
        "degree_bound": degree_bound,
        "families": list(families),
        "wedge_vee_moves": len(wv),
        "exchange_moves": len(quad),
        "elements_checked": len(seen),
        "invalid_wedge_vee": bad_a,
        "exchange_breaks_wedge_vee": bad_b,
        "component_mismatches": mismatches,
        "passed": not (bad_a or bad_b or mismatches),
    }


@lru_cache(maxsize=None)
def face_cone(n: int) -> IntegerCone:
    """The omega_1-only face of the caterpillar quilt cone."""
    q = build_quilt(caterpillar(n), 3)
    return IntegerCone(q.num_vars, tuple(q.equations) + tuple(q.omega2_rows), q.grading)


def hilbert_function_compare(n: int, degree_bound: int) -> dict:
    """Face points of boundary degree 3d, GT patterns with lam = d, and the Weyl dimension."""
    _check_n(n)
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    rows = []
    for d in range(degree_bound + 1):
        face = count_at_degree(face_cone(n), 3 * d)
        gt = len(enumerate_patterns(n, d))
        weyl = gl_dim_omega3(n, d)
        rows.append({"d": d, "face": face, "patterns": gt, "weyl": weyl, "agree": face == gt == weyl})
    return {"n": n, "degree_bound": degree_bound, "rows": rows, "passed": all(r["agree"] for r in rows)}
