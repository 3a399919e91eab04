import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from bzquilt.bzdiagram import sl3_named_triangles
from bzquilt.liealg import dual, invariant_dim
from bzquilt.presentation import generators
from bzquilt.quilt import (
    QuiltWeighting,
    boundary_map,
    build_quilt,
    fiber_count,
    glue_duality_check,
    omega2_functional,
    restrict,
    support,
)
from bzquilt.tree import all_trees, caterpillar, parse_tree, subtree

W1, W2, Z = (1, 0), (0, 1), (0, 0)


@pytest.mark.parametrize(
    "t, nvars, hexeq, glue",
    [(caterpillar(3), 9, 3, 0), (caterpillar(4), 18, 6, 2), (caterpillar(5), 27, 9, 4)],
)
def test_sizes(t, nvars, hexeq, glue):
    q = build_quilt(t, 3)
    assert q.num_vars == nvars
    assert len(q.hexagon_equations) == hexeq
    assert len(q.gluing_equations) == glue


def test_side_assignment_is_a_bijection():
    for t in all_trees(5):
        q = build_quilt(t, 3)
        for v in q.trinodes:
            assert sorted(q.side_of[(v, u)] for u in q.tree.neighbors(v)) == [1, 2, 3]


def test_cache_shares_equal_trees():
    assert build_quilt(parse_tree("((1,2),(3,4))"), 3) is build_quilt(caterpillar(4), 3)


def test_bad_m():
    with pytest.raises(ValueError):
        build_quilt(caterpillar(3), 1)


def test_tripod_named_boundaries():
    q = build_quilt(caterpillar(3), 3)
    named = sl3_named_triangles()
    v = q.trinodes[0]
    x = q.place({v: named["X"]})
    assert boundary_map(x) == (W1, W1, W1)
    assert boundary_map(q.zero()) == (Z, Z, Z)
    assert omega2_functional(x) == 0
    assert omega2_functional(q.place({v: named["Y"]})) == 3
    assert omega2_functional(q.place({v: named["P12"]})) == 1
    p12 = q.place({v: named["P12"]})
    leaf_edges = {q.tree.leaf_edge(k) for k in (1, 2)}
    assert support(p12) == frozenset(leaf_edges)
    assert support(q.zero()) == frozenset()


def test_generator_on_three_leaves_has_zero_fourth_entry():
    t = caterpillar(4)
    for g in generators(t):
        if g.leaf_set == (1, 2, 3):
            assert boundary_map(g.weighting)[3] == Z


def test_glue_duality_examples():
    t = caterpillar(4)
    q = build_quilt(t, 3)
    e = q.tree.internal_edges[0]
    assert glue_duality_check(q.zero(), e) == (Z, Z)
    seen = set()
    for g in generators(t):
        a, b = glue_duality_check(g.weighting, e)
        assert a == dual(b)
        seen.add((a, b))
    assert (W1, W2) in seen and (W2, W1) in seen
    with pytest.raises(ValueError):
        glue_duality_check(q.zero(), q.tree.leaf_edge(1))


def test_sl2_fibers_match_invariants():
    q = build_quilt(caterpillar(5), 2)
    for t_vals in itertools.product(range(3), repeat=5):
        n = fiber_count(q.tree, [(c,) for c in t_vals])
        assert n == invariant_dim([(c,) for c in t_vals])


def test_duality_on_all_generators():
    for n in (3, 4, 5, 6):
        for t in (all_trees(n) if n < 6 else [caterpillar(6), parse_tree("((1,2),(3,4),(5,6))")]):
            q = build_quilt(t, 3)
            for g in generators(t):
                for e in q.tree.internal_edges:
                    a, b = glue_duality_check(g.weighting, e)
                    assert a == dual(b)


def test_restriction_pieces():
    named = set(w.values for w in sl3_named_triangles().values())
    t = caterpillar(5)
    q = build_quilt(t, 3)
    for g in generators(t):
        span = g.subtree.vertices
        for v in q.trinodes:
            piece = restrict(g.weighting, v).values
            if v in span:
                assert piece in named
            else:
                assert not any(piece)
        assert restrict(g.weighting, g.subtree) == g.weighting
    assert restrict(q.zero(), g.subtree) == q.zero()
    assert not any(restrict(q.zero(), q.trinodes[0]).values)


def test_support_equals_span_edges():
    for t in all_trees(5):
        for g in generators(t):
            assert support(g.weighting) == g.subtree.edges


def test_support_of_disjoint_sum():
    t = caterpillar(6)
    gens = {g.leaf_set: g for g in generators(t) if g.variant == 0}
    a, b = gens[(1, 2)], gens[(5, 6)]
    assert support(a.weighting + b.weighting) == support(a.weighting) | support(b.weighting)


def test_connected_support_decomposition():
    t = caterpillar(6)
    q = build_quilt(t, 3)
    gens = {g.leaf_set: g for g in generators(t) if g.variant == 0}
    w = gens[(1, 2)].weighting + gens[(5, 6)].weighting
    s1, s2 = subtree(q.tree, (1, 2)), subtree(q.tree, (5, 6))
    assert restrict(w, s1) + restrict(w, s2) == w
    assert restrict(w, s1) == gens[(1, 2)].weighting


def test_json_roundtrip():
    t = caterpillar(5)
    for g in generators(t):
        data = g.weighting.to_json()
        assert QuiltWeighting.from_json(data) == g.weighting
    with pytest.raises(ValueError):
        QuiltWeighting.from_json({"tree": "(1,2,3)", "m": 3, "values": {"9.zz": 1}})


def test_add_requires_same_quilt():
    with pytest.raises(ValueError):
        build_quilt(caterpillar(3), 3).zero() + build_quilt(caterpillar(4), 3).zero()


gen_pairs = st.tuples(st.integers(0, 51), st.integers(0, 51))


@settings(max_examples=80, deadline=None)
@given(gen_pairs)
def test_additivity(pair):
    gens = generators(caterpillar(5))
    u, v = gens[pair[0]].weighting, gens[pair[1]].weighting
    s = u + v
    assert s.is_valid()
    assert boundary_map(s) == tuple(
        tuple(a + b for a, b in zip(x, y)) for x, y in zip(boundary_map(u), boundary_map(v))
    )
    assert omega2_functional(s) == omega2_functional(u) + omega2_functional(v)
    for e in s.quilt.tree.internal_edges:
        su, sv, ss = (glue_duality_check(w, e) for w in (u, v, s))
        assert ss == tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(su, sv))
    for k in s.quilt.trinodes:
        assert restrict(s, k) == restrict(u, k) + restrict(v, k)


def test_face_property():
    gens = generators(caterpillar(5))
    for a, b in itertools.combinations_with_replacement(gens, 2):
        fa, fb = omega2_functional(a.weighting), omega2_functional(b.weighting)
        assert fa >= 0 and fb >= 0
        if omega2_functional(a.weighting + b.weighting) == 0:
            assert fa == fb == 0


def test_grading_is_positive():
    for t in all_trees(5):
        q = build_quilt(t, 3)
        assert all(b >= 0 for b in q.cone.unit_bounds)


def test_omega2_requires_sl3():
    with pytest.raises(ValueError):
        omega2_functional(build_quilt(caterpillar(3), 4).zero())


def test_fiber_count_checks_input():
    with pytest.raises(ValueError):
        fiber_count(caterpillar(3), [W1, W1])
    with pytest.raises(ValueError):
        fiber_count(caterpillar(3), [W1, W1, (1, 0, 0)])


SL3_TWOS = list(itertools.product(range(3), repeat=2))


def test_multiplicities_five_leaves_one_tree():
    t = all_trees(5)[0]
    for target in itertools.product(SL3_TWOS, repeat=5):
        assert fiber_count(t, target) == invariant_dim(target), target


def test_multiplicities_five_leaves_tree_independence_sample():
    rng = random.Random(20261019)
    targets = [tuple(rng.choice(SL3_TWOS) for _ in range(5)) for _ in range(300)]
    trees = all_trees(5)
    for target in targets:
        assert {fiber_count(t, target) for t in trees} == {invariant_dim(target)}, target


@pytest.mark.slow
def test_multiplicities_five_leaves_all_trees():
    trees = all_trees(5)
    for target in itertools.product(SL3_TWOS, repeat=5):
        assert {fiber_count(t, target) for t in trees} == {invariant_dim(target)}, target
