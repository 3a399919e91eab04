"""Labeled trivalent trees, proper subtrees and leaf-to-leaf paths.

Vertices are integers: leaves carry their labels ``1..n`` and trinodes are
numbered ``n+1 .. 2n-2``.  Every trinode stores a cyclic order (rotation) of
its three neighbours, which fixes how BZ triangle sides are attached later.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property


class TreeError(ValueError):
    """Base class for tree parse and validation errors."""


class TreeSyntaxError(TreeError):
    pass


class TrivalenceError(TreeError):
    pass


class DuplicateLabelError(TreeError):
    pass


class LabelRangeError(TreeError):
    pass


class Tree:
    """An unrooted trivalent tree with leaves labeled ``1..n``.

    ``rotation`` maps each trinode to the cyclic order of its neighbours.
    Two trees compare equal when they have the same labeled structure,
    including rotations; trinode numbering is irrelevant.
    """

    def __init__(self, n: int, rotation: dict[int, tuple[int, int, int]]):
        if n < 3:
            raise TrivalenceError(f"a trivalent tree needs at least 3 leaves, got {n}")
        self.n = n
        self.rotation = {v: tuple(nb) for v, nb in rotation.items()}
        adj: dict[int, list[int]] = {v: [] for v in range(1, 2 * n - 1)}
        for v, nbs in self.rotation.items():
            if v not in adj or v <= n:
                raise TreeError(f"bad trinode id {v}")
            if len(nbs) != 3 or len(set(nbs)) != 3:
                raise TrivalenceError(f"trinode {v} must have three distinct neighbours")
            for u in nbs:
                if u not in adj:
                    raise TreeError(f"unknown vertex {u}")
                adj[v].append(u)
        for v, nbs in self.rotation.items():
            for u in nbs:
                if u <= n:
                    adj[u].append(v)
                elif v not in self.rotation[u]:
                    raise TreeError(f"edge {v}-{u} is not symmetric")
        for leaf in range(1, n + 1):
            if len(adj[leaf]) != 1:
                raise TrivalenceError(f"leaf {leaf} has degree {len(adj[leaf])}")
        if len(self.rotation) != n - 2:
            raise TrivalenceError(f"expected {n - 2} trinodes, got {len(self.rotation)}")
        self._adj = {v: tuple(nbs) for v, nbs in adj.items()}
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for u in self._adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != 2 * n - 2:
            raise TreeError("tree is not connected")

    @property
    def leaves(self) -> range:
        return range(1, self.n + 1)

    @property
    def trinodes(self) -> list[int]:
        return sorted(self.rotation)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def is_leaf(self, v: int) -> bool:
        return v <= self.n

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(u, v), max(u, v)) for u in self._adj for v in self._adj[u]})

    @cached_property
    def internal_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if not self.is_leaf(e[0])]

    def leaf_edge(self, leaf: int) -> tuple[int, int]:
        (u,) = self._adj[leaf]
        return (leaf, u)

    def component(self, v: int, via: int) -> set[int]:
        """Vertices reachable from ``via`` once the edge ``v-via`` is cut."""
        seen = {v, via}
        stack = [via]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        seen.discard(v)
        return seen

    def branch_leaves(self, v: int, via: int) -> frozenset[int]:
        return frozenset(x for x in self.component(v, via) if x <= self.n)

    def path(self, a: int, b: int) -> list[int]:
        parent = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y in self._adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        out = [b]
        while out[-1] != a:
            out.append(parent[out[-1]])
        return out[::-1]

    @cached_property
    def _signature(self) -> frozenset:
        sig = []
        for v, nbs in self.rotation.items():
            branches = [self.branch_leaves(v, u) for u in nbs]
            k = min(range(3), key=lambda i: min(branches[i]))
            sig.append(tuple(branches[k:] + branches[:k]))
        return frozenset(sig)

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self._signature == other._signature

    def __hash__(self):
        return hash((self.n, self._signature))

    def __repr__(self):
        return f"Tree({self.render()!r})"

    def canonical(self) -> "Tree":
        """Equal tree with trinodes renumbered in render order, so equal trees share ids."""
        root = self._adj[1][0]
        order: list[int] = []
        rot: dict[int, tuple[int, ...]] = {}

        def visit(v: int, parent: int | None):
            order.append(v)
            nbs = self.rotation[v]
            k = nbs.index(parent if parent is not None else 1)
            cyc = nbs[k:] + nbs[:k]
            rot[v] = cyc
            for x in cyc:
                if x != parent and x > self.n:
                    visit(x, v)

        visit(root, None)
        new_id = {v: self.n + 1 + i for i, v in enumerate(order)}

        def rel(x):
            return new_id.get(x, x)

        return Tree(self.n, {new_id[v]: tuple(rel(x) for x in nbs) for v, nbs in rot.items()})

    def render(self) -> str:
        """Text form accepted by :func:`parse_tree`, rooted at leaf 1's trinode."""
        root = self._adj[1][0]

        def sub(v: int, parent: int) -> str:
            if v <= self.n:
                return str(v)
            nbs = self.rotation[v]
            k = nbs.index(parent)
            kids = [nbs[(k + 1) % 3], nbs[(k + 2) % 3]]
            return "(" + ",".join(sub(x, v) for x in kids) + ")"

        nbs = self.rotation[root]
        k = nbs.index(1)
        order = nbs[k:] + nbs[:k]
        return "(" + ",".join(sub(x, root) for x in order) + ")"


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(m.group(1))
        elif m.group(2).strip():
            if m.group(2) not in "(),":
                raise TreeSyntaxError(f"unexpected character {m.group(2)!r}")
            tokens.append(m.group(2))
    return tokens


def _parse_nested(tokens: list[str]):
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(tokens):
            raise TreeSyntaxError("unexpected end of input")
        tok = tokens[pos]
        if tok.isdigit():
            pos += 1
            return int(tok)
        if tok != "(":
            raise TreeSyntaxError(f"unexpected token {tok!r}")
        pos += 1
        kids = [node()]
        while pos < len(tokens) and tokens[pos] == ",":
            pos += 1
            kids.append(node())
        if pos >= len(tokens) or tokens[pos] != ")":
            raise TreeSyntaxError("missing closing parenthesis")
        pos += 1
        return kids

    out = node()
    if pos != len(tokens):
        raise TreeSyntaxError("trailing input after expression")
    if isinstance(out, int):
        raise TreeSyntaxError("expression must be parenthesized")
    return out


def parse_tree(text: str) -> Tree:
    """Parse ``(A,B,C)`` or ``(A,B)`` nested expressions into a :class:`Tree`.

    An outermost triple is a trinode; an outermost pair is an edge joining its
    two children.  Nested pairs are trinodes whose third edge is the parent.
    """
    nested = _parse_nested(_tokenize(text))
    labels: list[int] = []

    def collect(x):
        if isinstance(x, int):
            labels.append(x)
        else:
            for y in x:
                collect(y)

    collect(nested)
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise DuplicateLabelError(f"duplicate leaf labels {dup}")
    n = len(labels)
    if sorted(labels) != list(range(1, n + 1)):
        raise LabelRangeError(f"leaf labels must be exactly 1..{n}, got {sorted(labels)}")

    if len(nested) not in (2, 3):
        raise TrivalenceError(f"outermost vertex has degree {len(nested)}")
    counter = itertools.count(n + 1)
    rotation: dict[int, tuple[int, int, int]] = {}

    def build(x, parent: int) -> int:
        if isinstance(x, int):
            return x
        if len(x) != 2:
            raise TrivalenceError(f"internal vertex of degree {len(x) + 1}")
        v = next(counter)
        kids = [build(y, v) for y in x]
        rotation[v] = (parent, kids[0], kids[1])
        return v

    if len(nested) == 3:
        root = next(counter)
        kids = [build(y, root) for y in nested]
        rotation[root] = tuple(kids)
    else:
        a, b = nested
        if isinstance(a, int) and isinstance(b, int):
            raise TrivalenceError("two leaves joined directly")
        if isinstance(a, int):
            a, b = b, a
        # a is a pair; b is a leaf or a pair
        if len(a) != 2:
            raise TrivalenceError(f"internal vertex of degree {len(a) + 1}")
        va = next(counter)
        kids_a = [build(y, va) for y in a]
        vb = build(b, va)
        rotation[va] = (vb, kids_a[0], kids_a[1])
    return Tree(n, rotation).canonical()


def caterpillar(n: int) -> Tree:
    """The caterpillar: trinodes in a path, leaves 1,2 at one end and n-1,n at the other."""
    if n < 3:
        raise TrivalenceError(f"caterpillar needs n >= 3, got {n}")
    if n == 3:
        return parse_tree("(1,2,3)")
    inner = "(1,2)"
    for leaf in range(3, n - 1):
        inner = f"({inner},{leaf})"
    return parse_tree(f"({inner},{n - 1},{n})")


def all_trees(n: int) -> list[Tree]:
    """Every labeled trivalent tree on n leaves, built by inserting leaves into edges.

    There are (2n-5)!! of them.  The rotation of each new trinode is
    (old endpoint, other endpoint, new leaf).
    """
    if n < 3:
        raise TrivalenceError("n must be at least 3")
    trees = [parse_tree("(1,2,3)")]
    for k in range(4, n + 1):
        grown = []
        for t in trees:
            for u, v in t.edges:
                grown.append(_insert_leaf(t, (u, v), k))
        trees = grown
    return [t.canonical() for t in trees]


def _insert_leaf(t: Tree, edge: tuple[int, int], k: int) -> Tree:
    # relabel: leaves 1..k-1 keep ids, trinodes shift by +1, new trinode last
    old_n = t.n

    def rel(v):
        return v if v <= old_n else v + 1

    w = 2 * k - 2
    rot = {}
    for v, nbs in t.rotation.items():
        rot[rel(v)] = tuple(rel(x) for x in nbs)
    u, v = (rel(edge[0]), rel(edge[1]))
    for a, b in ((u, v), (v, u)):
        if a in rot:
            rot[a] = tuple(w if x == b else x for x in rot[a])
    rot[w] = (u, v, k)
    return Tree(k, rot)


@dataclass(frozen=True)
class ProperSubtree:
    """The minimal subtree of ``tree`` spanning ``leaf_set`` (|leaf_set| >= 2)."""

    tree: Tree = field(compare=False, repr=False)
    leaf_set: tuple[int, ...]

    @cached_property
    def vertices(self) -> frozenset[int]:
        first = self.leaf_set[0]
        out = set()
        for other in self.leaf_set[1:]:
            out.update(self.tree.path(first, other))
        return frozenset(out)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        vs = self.vertices
        return frozenset(e for e in self.tree.edges if e[0] in vs and e[1] in vs)

    def degree(self, v: int) -> int:
        return sum(1 for u in self.tree.neighbors(v) if u in self.vertices)

    @cached_property
    def branch_trinodes(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if self.degree(v) == 3)


def subtree(t: Tree, leaves) -> ProperSubtree:
    leaves = tuple(sorted(set(leaves)))
    if len(leaves) < 2 or not set(leaves) <= set(t.leaves):
        raise ValueError(f"invalid leaf set {leaves}")
    return ProperSubtree(t, leaves)


def proper_subtrees(t: Tree) -> list[ProperSubtree]:
    """One subtree per leaf subset of size >= 2, ordered by size then lexicographically."""
    return [
        ProperSubtree(t, combo)
        for size in range(2, t.n + 1)
        for combo in itertools.combinations(t.leaves, size)
    ]


def path_trinode_count(s: ProperSubtree, l1: int, l2: int) -> int:
    """Trinodes of degree 3 *within the span of s* on the l1-l2 path."""
    if l1 == l2 or l1 not in s.leaf_set or l2 not in s.leaf_set:
        raise ValueError(f"leaves {l1}, {l2} not a pair of distinct leaves of {s.leaf_set}")
    return sum(1 for v in s.tree.path(l1, l2) if v in s.branch_trinodes)


def is_odd_subtree(s: ProperSubtree) -> bool:
    return all(
        path_trinode_count(s, a, b) % 2 == 1 for a, b in itertools.combinations(s.leaf_set, 2)
    )
