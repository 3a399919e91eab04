"""sl_m weights and an independent tensor-invariant oracle.

Dominant weights are tuples of fundamental-weight coefficients, so for sl_3
``(1, 0)`` is omega_1 and ``(0, 1)`` is omega_2.  Internally the oracle works
with GL_m partitions and the Euclidean form, where the Weyl group acts by
permutations; Freudenthal's recursion gives weight multiplicities and the
Klimyk (Racah-Speiser) formula decomposes tensor products.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import prod

Weight = tuple[int, ...]

MAX_RANK = 4


def parse_weights(text: str) -> tuple[Weight, ...]:
    """``"1,0;1,0;1,0"`` -> ``((1, 0), (1, 0), (1, 0))``."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty weight entry")
        coeffs = tuple(int(x) for x in chunk.split(","))
        if any(c < 0 for c in coeffs):
            raise ValueError(f"negative coefficient in {chunk!r}")
        out.append(coeffs)
    if len({len(w) for w in out}) != 1:
        raise ValueError("weights must share a common rank")
    return tuple(out)


def format_weights(ws) -> str:
    return ";".join(",".join(str(c) for c in w) for w in ws)


def fundamental(i: int, rank: int) -> Weight:
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


def dual(w: Weight) -> Weight:
    return tuple(reversed(w))


def to_partition(w: Weight) -> tuple[int, ...]:
    # lambda_k = sum_{i >= k} c_i, with lambda_m = 0
    return tuple(sum(w[k:]) for k in range(len(w))) + (0,)


def from_partition(p) -> Weight:
    return tuple(p[k] - p[k + 1] for k in range(len(p) - 1))


def weyl_dim(w: Weight) -> int:
    """Dimension of the sl_m irreducible with highest weight ``w``."""
    p = to_partition(w)
    m = len(p)
    num = prod(p[i] - p[j] + j - i for i in range(m) for j in range(i + 1, m))
    den = prod(j - i for i in range(m) for j in range(i + 1, m))
    return num // den


def gl_dim_omega3(n: int, d: int) -> int:
    """Dimension of the GL_n irreducible with highest weight (d, d, d, 0, ..., 0)."""
    if n < 3 or d < 0:
        raise ValueError("need n >= 3 and d >= 0")
    lam = [d, d, d] + [0] * (n - 3)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert num.denominator == 1
    return int(num)


def _dominated_partitions(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Partitions with m parts (zeros allowed) of |lam| dominated by lam."""
    m = len(lam)
    total = sum(lam)
    out = []

    def rec(prefix, remaining, cap, partial):
        k = len(prefix)
        if k == m:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for x in range(min(cap, remaining), -1, -1):
            s = partial + x
            if s > sum(lam[: k + 1]):
                continue
            if x * (m - k) < remaining:
                break
            rec(prefix + [x], remaining - x, x, s)

    rec([], total, lam[0], 0)
    return out


@lru_cache(maxsize=None)
def weight_multiplicities(w: Weight) -> dict[tuple[int, ...], int]:
    """Dominant weight multiplicities of V(w), keyed by GL partition."""
    lam = to_partition(w)
    m = len(lam)
    rho = tuple(m - 1 - i for i in range(m))
    roots = []
    for i in range(m):
        for j in range(i + 1, m):
            r = [0] * m
            r[i], r[j] = 1, -1
            roots.append(tuple(r))
    doms = _dominated_partitions(lam)
    # process from the top of the dominance order: larger norm first
    doms.sort(key=lambda p: (-sum(x * x for x in p), tuple(-x for x in p)))
    mult: dict[tuple[int, ...], int] = {lam: 1}
    lam_rho = sum((a + b) ** 2 for a, b in zip(lam, rho))

    def get(mu):
        key = tuple(sorted(mu, reverse=True))
        return mult.get(key, 0)

    for mu in doms:
        if mu == lam:
            continue
        denom = lam_rho - sum((a + b) ** 2 for a, b in zip(mu, rho))
        total = 0
        for alpha in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, alpha))
                key = tuple(sorted(nu, reverse=True))
                if key not in mult and not _dominates(lam, key):
                    break
                mv = get(nu)
                total += mv * sum(a * b for a, b in zip(nu, alpha))
                k += 1
        value = Fraction(2 * total, denom)
        assert value.denominator == 1, "Freudenthal recursion produced a fraction"
        if value:
            mult[mu] = int(value)
    return mult


def _dominates(lam, mu) -> bool:
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for x, y in zip(lam, mu):
        a += x
        b += y
        if b > a:
            return False
    return True


def _all_weights(w: Weight):
    for dom, mult in weight_multiplicities(w).items():
        for perm in set(itertools.permutations(dom)):
            yield perm, mult


def _check_rank(a: Weight, b: Weight):
    if len(a) != len(b):
        raise ValueError("weights of different rank")
    if not 1 <= len(a) <= MAX_RANK:
        raise ValueError(f"unsupported rank {len(a)}; supported ranks are 1..{MAX_RANK}")


@lru_cache(maxsize=None)
def _decompose(a: Weight, b: Weight) -> tuple[tuple[Weight, int], ...]:
    m = len(a) + 1
    rho = tuple(m - 1 - i for i in range(m))
    pb = to_partition(b)
    out: Counter = Counter()
    # iterate over the smaller module's weights
    for mu, mult in _all_weights(a):
        nu = [x + y + r for x, y, r in zip(mu, pb, rho)]
        if len(set(nu)) < m:
            continue
        order = sorted(range(m), key=lambda i: -nu[i])
        sign = _perm_sign(order)
        top = [nu[i] - rho[k] for k, i in enumerate(order)]
        shift = top[-1]
        top = tuple(x - shift for x in top)
        out[from_partition(top)] += sign * mult
    result = tuple(sorted((hw, c) for hw, c in out.items() if c))
    assert all(c > 0 for _, c in result), "Klimyk cancellation left a negative term"
    return result


def _perm_sign(order) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def tensor_decompose(a: Weight, b: Weight) -> Counter:
    """Highest weights, with multiplicity, of the summands of V(a) (x) V(b)."""
    a, b = tuple(a), tuple(b)
    _check_rank(a, b)
    if weyl_dim(a) > weyl_dim(b):
        a, b = b, a
    return Counter(dict(_decompose(a, b)))


def invariant_dim(lambdas) -> int:
    """dim (V(l_1) (x) ... (x) V(l_n))^G, by iterated decomposition."""
    lambdas = [tuple(w) for w in lambdas]
    if not lambdas:
        raise ValueError("need at least one weight")
    rank = len(lambdas[0])
    if any(len(w) != rank for w in lambdas):
        raise ValueError("weights must share a common rank")
    zero = (0,) * rank
    if len(lambdas) == 1:
        return int(lambdas[0] == zero)
    # the last factor is absorbed by pairing with its dual
    current: Counter = Counter({lambdas[0]: 1})
    for w in lambdas[1:-1]:
        nxt: Counter = Counter()
        for hw, c in current.items():
            for hw2, c2 in tensor_decompose(hw, w).items():
                nxt[hw2] += c * c2
        current = nxt
    return current.get(dual(lambdas[-1]), 0)
