from nodeparse import LabeledGraph, are_isomorphic_bruteforce, gen_random_regular, wl_refine

from helpers import random_multigraph, random_permutation


def cycle(n):
    return LabeledGraph(n, tuple((i, (i + 1) % n) for i in range(n)), (1,) * n)


def test_single_vertex():
    hist = wl_refine(LabeledGraph(1, (), (7,)))
    assert list(hist.values()) == [1]


def test_rounds_zero_is_label_histogram():
    g = LabeledGraph(3, ((0, 1), (1, 2)), (1, 1, 2))
    hist = wl_refine(g, rounds=0)
    assert sorted(hist.values()) == [1, 2]


def test_c6_equals_two_triangles():
    two_triangles = LabeledGraph(
        6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)), (1,) * 6
    )
    assert wl_refine(cycle(6)) == wl_refine(two_triangles)
    assert not are_isomorphic_bruteforce(cycle(6), two_triangles)


def test_identical_histograms_on_random_regular_set():
    pairs = gen_random_regular(count=6, n=8, degree=4, seed=3)
    hists = [wl_refine(g) for g, _ in pairs]
    assert all(h == hists[0] for h in hists)


def test_isomorphism_invariance(rng):
    for _ in range(15):
        g = random_multigraph(rng, max_vertices=6, max_edges=7)
        h = g.permuted(random_permutation(rng, g.num_vertices))
        assert wl_refine(g) == wl_refine(h)


def test_multiplicities_sum_to_vertex_count(rng):
    for _ in range(15):
        g = random_multigraph(rng, max_vertices=7, max_edges=8)
        assert sum(wl_refine(g).values()) == g.num_vertices


def test_wl_separates_path_from_star():
    p4 = LabeledGraph(4, ((0, 1), (1, 2), (2, 3)), (1,) * 4)
    star = LabeledGraph(4, ((0, 1), (0, 2), (0, 3)), (1,) * 4)
    assert wl_refine(p4) != wl_refine(star)


def test_self_loop_counts_twice():
    looped = LabeledGraph(2, ((0, 0),), (1, 1))
    hist = wl_refine(looped)
    # loop vertex refines away from the isolated one
    assert len(hist) == 2
