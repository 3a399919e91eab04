import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from bzquilt.liealg import (
    dual,
    format_weights,
    gl_dim_omega3,
    invariant_dim,
    parse_weights,
    tensor_decompose,
    weyl_dim,
)

from oracles import binom, invariant_oracle, tensor_oracle

W1, W2, ZERO = (1, 0), (0, 1), (0, 0)
sl3 = st.tuples(st.integers(0, 3), st.integers(0, 3))


def test_parse_and_format():
    ws = parse_weights("1,0; 1,0;1,0")
    assert ws == (W1, W1, W1)
    assert format_weights(ws) == "1,0;1,0;1,0"
    for bad in ("1,0;;1,0", "1,-1", "1,0;1", "a,b"):
        with pytest.raises(ValueError):
            parse_weights(bad)


def test_dual():
    assert dual(W1) == W2
    assert dual((1, 1)) == (1, 1)
    assert dual((0, 1, 0, 0)) == (0, 0, 1, 0)


def test_small_decompositions():
    assert tensor_decompose(W1, W1) == Counter({(2, 0): 1, W2: 1})
    assert tensor_decompose(W1, W2) == Counter({(1, 1): 1, ZERO: 1})
    assert tensor_decompose(ZERO, (2, 1)) == Counter({(2, 1): 1})


def test_unsupported_rank():
    with pytest.raises(ValueError):
        tensor_decompose((1,) * 5, (1,) * 5)
    with pytest.raises(ValueError):
        tensor_decompose((1, 0), (1, 0, 0))


def test_decompose_matches_character_oracle_sl3():
    for a in itertools.product(range(3), repeat=2):
        for b in itertools.product(range(3), repeat=2):
            assert tensor_decompose(a, b) == tensor_oracle(a, b), (a, b)


def test_decompose_matches_character_oracle_sl4():
    for a in itertools.product(range(2), repeat=3):
        for b in itertools.product(range(2), repeat=3):
            assert tensor_decompose(a, b) == tensor_oracle(a, b), (a, b)


def test_dimension_identity():
    for a in itertools.product(range(5), repeat=2):
        for b in itertools.product(range(5), repeat=2):
            dec = tensor_decompose(a, b)
            assert weyl_dim(a) * weyl_dim(b) == sum(c * weyl_dim(w) for w, c in dec.items())


@settings(max_examples=60, deadline=None)
@given(sl3, sl3)
def test_decompose_commutes(a, b):
    assert tensor_decompose(a, b) == tensor_decompose(b, a)


def test_named_invariants():
    assert invariant_dim([W1, W1, W1]) == 1
    assert invariant_dim([W1, W2]) == 1
    assert invariant_dim([(1, 1)] * 3) == 2
    assert invariant_dim([W1, ZERO, ZERO]) == 0
    assert invariant_dim([ZERO]) == 1


def test_invariants_match_oracle():
    for ws in itertools.product(list(itertools.product(range(3), repeat=2)), repeat=3):
        assert invariant_dim(ws) == invariant_oracle(ws), ws


@settings(max_examples=40, deadline=None)
@given(st.lists(sl3, min_size=2, max_size=4), st.randoms(use_true_random=False))
def test_invariant_symmetries(ws, rnd):
    base = invariant_dim(ws)
    perm = list(ws)
    rnd.shuffle(perm)
    assert invariant_dim(perm) == base
    assert invariant_dim([dual(w) for w in ws]) == base


def test_schur_orthogonality():
    for w in itertools.product(range(4), repeat=2):
        assert invariant_dim([w, dual(w)]) == 1


def test_weyl_dims():
    assert weyl_dim(W1) == 3
    assert weyl_dim((1, 1)) == 8
    assert weyl_dim((1, 0, 0)) == 4


def test_gl_dim_omega3():
    assert gl_dim_omega3(6, 1) == 20
    assert gl_dim_omega3(4, 1) == 4
    assert gl_dim_omega3(9, 0) == 1
    for n in range(3, 10):
        assert gl_dim_omega3(n, 1) == binom(n, 3)
    with pytest.raises(ValueError):
        gl_dim_omega3(2, 1)
