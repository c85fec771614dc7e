import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from homotopy_algebra.exactlin import (
    Contraction, DegreeError, GradedMap, GradedSpace, SpaceMismatch, as_scalar, compose,
    compose_inserted, compose_permutation, flat_tensor_map, homology_with_contraction,
    insert_map, inverse, koszul_permutation_sign, matmul, nullspace, permutation_map, rank,
    rref, tensor, tensor_power, tensor_power_map,
)
from homotopy_algebra import samples

V = GradedSpace.from_pairs([("x", 0), ("y", 1), ("z", 1), ("w", 2)])


def random_complex(seed, dims):
    """Random complex with d∘d = 0.

    Each basis vector either becomes a cycle or is sent to a combination of
    cycle basis vectors one degree down.
    """
    rng = random.Random(seed)
    pairs = [(f"b{deg}_{k}", deg) for deg in sorted(dims) for k in range(dims[deg])]
    space = GradedSpace.from_pairs(pairs)
    entries = []
    cycles = {}
    for deg in sorted(dims):
        targets = cycles.get(deg - 1, [])
        here = space.indices_in_degree(deg)
        new_cycles = []
        for j in here:
            if targets and rng.random() < 0.6:
                coeffs = {t: rng.choice([-2, -1, 1, 3]) for t in rng.sample(targets, min(2, len(targets)))}
                for t, c in coeffs.items():
                    entries.append((space.names[j], space.names[t], c))
            else:
                new_cycles.append(j)
        cycles[deg] = new_cycles
    return space, GradedMap.from_entries(space, space, -1, entries)


def test_space_basics():
    assert V.dim == 4
    assert V.names == ["x", "y", "z", "w"]
    assert V.indices_in_degree(1) == [1, 2]
    assert V.graded_pieces() == [0, 1, 2]
    with pytest.raises(KeyError):
        V.index("nope")


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        GradedSpace.from_pairs([("x", 0), ("x", 1)])


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_split_join_roundtrip(multi):
    P = tensor_power(V, len(multi))
    flat = P.join(multi)
    assert P.split(flat) == tuple(multi)
    assert P.degree_of(flat) == sum(V.degree_of(k) for k in multi)


def test_tensor_names_and_degrees():
    T = tensor(V, V)
    assert T.dim == 16
    assert T.names[T.join([1, 3])] == "y⊗w"
    assert T.degree_of(T.join([1, 3])) == 3


def test_scalars_are_exact():
    assert as_scalar(3) == Fraction(3)
    assert as_scalar("2/3") == Fraction(2, 3)
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_degree_validation():
    with pytest.raises(DegreeError):
        GradedMap.from_entries(V, V, -1, [("x", "y", 1)])
    m = GradedMap.from_entries(V, V, -1, [("y", "x", 1)])
    assert m.entry(0, 1) == 1


def test_compose_mismatch():
    W = GradedSpace.from_pairs([("a", 0)])
    with pytest.raises(SpaceMismatch):
        compose(GradedMap.identity(W), GradedMap.identity(V))


def test_koszul_sign_on_tensor_of_maps():
    # (f ⊗ g)(a ⊗ b) = (-1)^(|g||a|) f(a) ⊗ g(b)
    f = GradedMap.identity(V)
    g = GradedMap.from_entries(V, V, -1, [("y", "x", 1), ("w", "z", 1)])
    fg = tensor_power_map([f, g])
    P = tensor(V, V)
    for a, b in itertools.product(range(V.dim), repeat=2):
        col = fg.column(P.join([a, b]))
        for i, v in col.items():
            a2, b2 = P.split(i)
            assert a2 == a
            assert v == (-1) ** (V.degree_of(a) * g.degree) * g.entry(b2, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 2), st.integers(2, 3))
def test_sparse_composition_matches_dense(seed, before, j):
    A = samples.random_ainf(seed, max_arity=3)
    W = A.space
    f = A.op(j)
    after = 2 - before
    g = A.op(before + 1 + after)
    assert compose_inserted(g, W, before, f, after) == g @ insert_map(W, before, f, after)
    assert insert_map(W, before, f, after) == flat_tensor_map(
        [GradedMap.identity(W)] * before + [f] + [GradedMap.identity(W)] * after, W)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.permutations(range(3)))
def test_sparse_permutation_matches_dense(seed, sigma):
    A = samples.random_ainf(seed, max_arity=3)
    g = A.op(3)
    assert compose_permutation(g, A.space, sigma) == g @ permutation_map(A.space, sigma)


@given(st.permutations(range(3)), st.permutations(range(3)))
def test_permutation_maps_compose(sigma, tau):
    W = GradedSpace.from_pairs([("a", 0), ("s", 1), ("t", 1)])
    composite = [tau[sigma[m]] for m in range(3)]
    assert permutation_map(W, sigma) @ permutation_map(W, tau) == permutation_map(W, composite)


def test_koszul_sign_of_swap():
    assert koszul_permutation_sign([1, 0], [1, 1]) == -1
    assert koszul_permutation_sign([1, 0], [1, 2]) == 1
    assert koszul_permutation_sign([2, 0, 1], [1, 1, 1]) == 1


def _sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows and rows[0] else 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_and_nullspace_against_sympy(rows):
    assert rank(rows) == _sympy_rank(rows)
    kernel = nullspace(rows, 4)
    assert len(kernel) == 4 - _sympy_rank(rows)
    for vec in kernel:
        assert all(sum(Fraction(r[k]) * vec[k] for k in range(4)) == 0 for r in rows)


def test_rref_shape():
    red, pivots = rref([[2, 4, 0], [1, 2, 1]])
    assert pivots == [0, 2]
    assert red[0] == [1, 2, 0]


def test_inverse():
    m = [[2, 1], [1, 1]]
    inv = inverse(m)
    assert matmul(m, inv) == [[1, 0], [0, 1]]
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_contraction_on_random_complexes(seed):
    space, d = random_complex(seed, {0: 3, 1: 4, 2: 3, 3: 2})
    assert (d @ d).is_zero()
    c = homology_with_contraction(space, d)
    assert c.violations() == []
    # Betti numbers from an independent rank computation
    dense = sympy.Matrix(d.to_dense())
    for deg in space.graded_pieces():
        here = space.indices_in_degree(deg)
        lower = space.indices_in_degree(deg - 1)
        upper = space.indices_in_degree(deg + 1)
        r_out = dense.extract(lower, here).rank() if lower else 0
        r_in = dense.extract(here, upper).rank() if upper else 0
        assert len(c.homology.indices_in_degree(deg)) == len(here) - r_out - r_in


def test_contraction_names_and_side_conditions(massey):
    c = homology_with_contraction(massey.space, massey.d)
    assert [(n, d) for n, d in c.homology.basis] == [("a", 0), ("b", 0), ("c", 0), ("q", 1)]
    assert c.is_valid()


def test_homology_rejects_non_differential():
    W = GradedSpace.from_pairs([("a", 0), ("b", 1), ("c", 2)])
    d = GradedMap.from_entries(W, W, -1, [("c", "b", 1), ("b", "a", 1)])
    with pytest.raises(ValueError, match="d∘d"):
        homology_with_contraction(W, d)


def test_trivial_contraction():
    assert Contraction.trivial(V).is_valid()
