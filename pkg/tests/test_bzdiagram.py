import itertools
import json
import random

import pytest

from bzquilt.bzdiagram import (
    BZWeighting,
    boundary_weight,
    boundary_weights,
    build_diagram,
    hexagon_constraints,
    sl3_named_triangles,
    triangle_boundary_map,
    triangle_cone,
    zero_weighting,
)
from bzquilt.lattice import count_fiber, hilbert_basis

from oracles import invariant_oracle


@pytest.mark.parametrize("m, verts, hexes", [(2, 3, 0), (3, 9, 1), (4, 18, 3), (5, 30, 6)])
def test_counts(m, verts, hexes):
    d = build_diagram(m)
    assert d.num_vertices == verts == 3 * m * (m - 1) // 2
    assert len(d.hexagons) == hexes == (m - 2) * (m - 1) // 2
    assert len(hexagon_constraints(d)) == 3 * hexes
    assert all(len(s) == 2 * (m - 1) for s in d.sides)


def test_bad_m():
    with pytest.raises(ValueError):
        build_diagram(1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_corners(m):
    d = build_diagram(m)
    ends = [s[0] for s in d.sides] + [s[-1] for s in d.sides]
    assert sorted(ends) == sorted(d.corners * 2)
    for k in range(3):
        # consecutive sides meet at a corner
        assert d.sides[k][-1] == d.sides[(k + 1) % 3][0]


@pytest.mark.parametrize("m", [3, 4, 5])
def test_boundary_vertices_cover_outer_trios(m):
    d = build_diagram(m)
    on_sides = set().union(*map(set, d.sides))
    assert len(on_sides) == 6 * (m - 1) - 3


def test_named_boundaries():
    named = sl3_named_triangles()
    w1, w2, z = (1, 0), (0, 1), (0, 0)
    assert boundary_weights(named["X"]) == (w1, w1, w1)
    assert boundary_weights(named["Y"]) == (w2, w2, w2)
    assert boundary_weights(named["P12"]) == (w1, w2, z)
    assert boundary_weights(named["P31"]) == (w2, z, w1)
    assert boundary_weights(zero_weighting(3)) == (z, z, z)
    assert all(w.is_valid() for w in named.values())


def test_side_check():
    with pytest.raises(ValueError):
        boundary_weight(zero_weighting(3), 4)


def test_weighting_validation():
    d = build_diagram(3)
    with pytest.raises(ValueError):
        BZWeighting(d, (0,) * 8)
    with pytest.raises(ValueError):
        BZWeighting(d, (-1,) + (0,) * 8)
    values = [0] * 9
    values[d.hexagons[0][0]] = 1
    # a lone hexagon vertex breaks an opposite-edge equation
    assert not BZWeighting(d, tuple(values)).is_valid()
    values = [0] * 9
    values[d.corners[0]] = 1
    assert BZWeighting(d, tuple(values)).is_valid()


def test_sum_is_valid():
    named = sl3_named_triangles()
    for a in named.values():
        for b in named.values():
            assert (a + b).is_valid()
    with pytest.raises(ValueError):
        zero_weighting(3) + zero_weighting(4)


def test_json_roundtrip():
    x = sl3_named_triangles()["X"]
    text = x.to_json()
    assert BZWeighting.from_json(text, 3) == x
    assert json.loads(text) == dict(sorted(json.loads(text).items()))
    with pytest.raises(ValueError):
        BZWeighting.from_json('{"nope": 1}', 3)
    d = build_diagram(4).to_json()
    assert d["m"] == 4 and len(d["hexagons"]) == 3 and len(d["sides"][0]) == 6


@pytest.mark.parametrize("m, bound", [(3, 3), (4, 4)])
def test_congruence_on_hilbert_basis(m, bound):
    d = build_diagram(m)
    hb = hilbert_basis(triangle_cone(m), bound)
    assert hb.complete
    for x in hb.elements:
        bw = boundary_weights(BZWeighting(d, x))
        assert sum(i * c for w in bw for i, c in enumerate(w, start=1)) % m == 0


def test_hilbert_sl3_all_fundamental():
    d = build_diagram(3)
    hb = hilbert_basis(triangle_cone(3), 3)
    for x in hb.elements:
        assert all(w in ((0, 0), (1, 0), (0, 1)) for w in boundary_weights(BZWeighting(d, x)))


def test_sl4_has_non_fundamental_generator():
    d = build_diagram(4)
    fundamental = {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}
    hb = hilbert_basis(triangle_cone(4), 4)
    odd = [x for x in hb.elements if any(w not in fundamental for w in boundary_weights(BZWeighting(d, x)))]
    assert len(hb) == 18
    assert len(odd) == 3


@pytest.mark.parametrize("m, cap, sample", [(3, 2, None), (4, 1, None), (5, 1, 300)])
def test_triangle_fibers_match_invariant_oracle(m, cap, sample):
    cone, pi = triangle_cone(m), triangle_boundary_map(m)
    ws = list(itertools.product(range(cap + 1), repeat=m - 1))
    triples = list(itertools.product(ws, repeat=3))
    if sample:
        triples = random.Random(m).sample(triples, sample)
    for triple in triples:
        target = [c for w in triple for c in w]
        assert count_fiber(cone, pi, target) == invariant_oracle(triple), triple
