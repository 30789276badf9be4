import random

import pytest

from quiverlab import (
    QuiverError,
    make_quiver,
    mutate,
    mutate_seq,
    parse_quiver_text,
    permute,
    quiver_to_text,
    seed,
    seeds,
)


def test_make_quiver_single_arrow():
    q = make_quiver(2, [(0, 1, 1)])
    assert q.b == ((0, 1), (-1, 0))


def test_make_quiver_oriented_triangle_is_skew():
    q = make_quiver(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    for i in range(3):
        assert q.b[i][i] == 0
        for j in range(3):
            assert q.b[i][j] == -q.b[j][i]


@pytest.mark.parametrize(
    "n,arrows",
    [
        (2, [(0, 1, 1), (1, 0, 1)]),  # contradictory pair encodes a 2-cycle
        (2, [(0, 0, 1)]),             # loop
        (2, [(0, 1, 0)]),             # non-positive weight
        (2, [(0, 2, 1)]),             # out of range
        (3, [(0, 1, 1), (0, 1, 1)]),  # duplicate pair
    ],
)
def test_make_quiver_rejects(n, arrows):
    with pytest.raises(QuiverError):
        make_quiver(n, arrows)


def test_mutate_leaf_reverses_single_arrow():
    q = make_quiver(2, [(0, 1, 1)])
    assert sorted(mutate(q, 0).arrows()) == [(1, 0, 1)]


def test_mutate_triangle_to_path():
    tri = make_quiver(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    # composing 0->1->2 adds 0->2, cancelling the existing 2->0
    assert sorted(mutate(tri, 1).arrows()) == [(1, 0, 1), (2, 1, 1)]


def test_mutate_weighted_worked_example_both_directions():
    left = make_quiver(5, [(2, 0, 2), (0, 1, 1), (0, 4, 1), (4, 3, 1), (3, 0, 1)])
    right = make_quiver(
        5, [(0, 2, 2), (1, 0, 1), (4, 0, 1), (0, 3, 1), (2, 1, 2), (3, 1, 1), (2, 4, 2)]
    )
    assert mutate(left, 0) == right
    assert mutate(right, 0) == left


def test_mutate_out_of_range():
    with pytest.raises(IndexError):
        mutate(make_quiver(2, [(0, 1, 1)]), 2)


def test_mutate_seq_empty_and_involution():
    tri = make_quiver(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert mutate_seq(tri, []) == tri
    assert mutate_seq(tri, [1, 1]) == tri
    q = seed("D-tilde", 8)
    for j in range(8):
        assert mutate_seq(q, [j, j]) == q


def test_mutation_preserves_skew_symmetry_on_random_matrices():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(2, 9)
        arrows = []
        for i in range(n):
            for j in range(i + 1, n):
                w = rng.choice((0, 0, 1, 2, 3))
                if w:
                    if rng.random() < 0.5:
                        arrows.append((i, j, w))
                    else:
                        arrows.append((j, i, w))
        q = make_quiver(n, arrows)
        m = mutate(q, rng.randrange(n))
        for i in range(n):
            assert m.b[i][i] == 0
            for j in range(n):
                assert m.b[i][j] == -m.b[j][i]


def test_equivariance():
    rng = random.Random(5)
    q = seed("D", 8)
    for _ in range(50):
        perm = list(range(8))
        rng.shuffle(perm)
        j = rng.randrange(8)
        assert permute(mutate(q, j), perm) == mutate(permute(q, perm), perm[j])
        q = mutate(q, rng.randrange(8))


def test_text_roundtrip():
    q = make_quiver(5, [(2, 0, 2), (0, 1, 1), (4, 3, 1)])
    assert parse_quiver_text(quiver_to_text(q)) == q
    with pytest.raises(QuiverError):
        parse_quiver_text("")
    with pytest.raises(QuiverError):
        parse_quiver_text("2\n0 1\n")


def test_seed_a_is_linear_path():
    q = seed("A", 3)
    assert sorted(q.arrows()) == [(0, 1, 1), (1, 2, 1)]


def test_seed_d_is_fork():
    q = seed("D", 6)
    assert sorted(q.arrows()) == [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1)]


def test_seed_d_tilde_shape():
    q = seed("D-tilde", 10)
    arcs = sorted(q.arrows())
    assert (2, 0, 1) in arcs and (2, 1, 1) in arcs
    assert (7, 8, 1) in arcs and (7, 9, 1) in arcs
    assert (2, 3, 1) in arcs and (6, 7, 1) in arcs
    # 5-vertex case degenerates to the star
    assert sorted(seed("D-tilde", 5).arrows()) == [(2, 0, 1), (2, 1, 1), (2, 3, 1), (2, 4, 1)]


def test_seed_e10_alternating_orientation():
    q = seed("E", 10)
    expected = [(0, 1, 1), (2, 1, 1), (2, 3, 1), (4, 3, 1), (4, 5, 1),
                (6, 5, 1), (6, 7, 1), (8, 7, 1), (2, 9, 1)]
    assert sorted(q.arrows()) == sorted(expected)


def test_seed_e9_equals_e_tilde_9():
    assert seed("E", 9) == seed("E-tilde", 9)


def test_seed_a_tilde_orientation_classes():
    reps = seeds("A-tilde", 7)
    assert len(reps) == 3
    for q in reps:
        arcs = list(q.arrows())
        assert len(arcs) == 7  # a full cycle
        assert all(w == 1 for _, _, w in arcs)


@pytest.mark.parametrize(
    "family,n",
    [("D", 3), ("E", 5), ("E-tilde", 10), ("E-tilde", 6), ("D-tilde", 4), ("A", 0), ("A-tilde", 2)],
)
def test_seed_invalid_sizes(family, n):
    with pytest.raises(QuiverError):
        seed(family, n)
