import itertools

import pytest

from dhtk.graph import (
    Graph,
    GraphMap,
    GraphSquare,
    bfs_distances,
    box_product,
    check_isomorphism,
    connected_components,
    count_cube_maps,
    cube,
    cycle,
    disjoint_union,
    distance,
    face_positions,
    graph_isomorphic,
    identity,
    interval,
    iter_cube_maps,
    lattice_points,
    point,
    pullback,
    pushout,
    terminal,
)


def brute_force_cube_maps(G, n, m=1):
    """All functions Q_m^n -> G that send edges to edges or loops."""
    Q = cube(m, n)
    pts = Q.vertices
    out = []
    for img in itertools.product(G.vertices, repeat=len(pts)):
        f = dict(zip(pts, img))
        if all(f[a] == f[b] or G.adjacent(f[a], f[b]) for a, b in Q.edges()):
            out.append(tuple(G.index(v) for v in img))
    return sorted(out)


def test_graph_rejects_unknown_and_duplicate_labels():
    with pytest.raises(ValueError):
        Graph(["a", "a"])
    with pytest.raises(ValueError):
        Graph(["a"], [("a", "b")])


def test_loops_are_implicit():
    G = Graph(["a", "b"], [("a", "a"), ("a", "b")])
    assert G.num_edges == 1
    assert G.adjacent("a", "a")          # reflexive
    assert 0 not in G.nbr_idx(0)
    assert G.closed_nbr_idx(0) == {0, 1}


@pytest.mark.parametrize("m,n", [(1, 1), (1, 3), (2, 2), (3, 2), (2, 3)])
def test_cube_counts(m, n):
    Q = cube(m, n)
    assert len(Q) == (m + 1) ** n
    assert Q.num_edges == n * m * (m + 1) ** (n - 1)
    assert list(Q.vertices) == lattice_points(m, n)


def test_box_product_of_intervals_is_cube():
    P = box_product(interval(2), interval(3))
    assert len(P) == 12 and P.num_edges == 2 * 4 + 3 * 3
    assert graph_isomorphic(P, box_product(interval(3), interval(2)))[0]


def test_cycle_and_distance():
    C = cycle(7)
    assert C.num_edges == 7 and C.min_degree() == C.max_degree() == 2
    assert distance(C, 0, 3) == 3 and distance(C, 0, 4) == 3
    G = disjoint_union(point(), point())
    assert distance(G, G.vertices[0], G.vertices[1]) == float("inf")
    assert len(connected_components(G)) == 2


def test_multi_source_bfs():
    C = cycle(10)
    d = bfs_distances(C, [0, 5])
    assert d == [0, 1, 2, 2, 1, 0, 1, 2, 2, 1]


def test_graph_map_validation():
    I1 = interval(1)
    C = cycle(5)
    GraphMap(I1, C, {0: 0, 1: 1})
    with pytest.raises(ValueError):
        GraphMap(I1, C, {0: 0, 1: 2})
    assert terminal(C).is_surjective()
    assert identity(C).compose(identity(C)) == identity(C)


@pytest.mark.parametrize("G", [interval(2), cycle(5), cube(1, 2), Graph(["a", "b", "c"], [("a", "b")])])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_cube_maps_match_brute_force(G, n):
    assert sorted(iter_cube_maps(G, n)) == brute_force_cube_maps(G, n)


def test_cube_maps_edge_length_two():
    G = cycle(5)
    assert sorted(iter_cube_maps(G, 1, 2)) == brute_force_cube_maps(G, 1, 2)
    P = interval(2)
    assert count_cube_maps(P, 2, 2) == len(brute_force_cube_maps(P, 2, 2))


def test_face_positions_restrict_in_order():
    pts = lattice_points(2, 3)
    fp = face_positions(2, 3)
    for (i, e), idx in fp.items():
        face = [pts[p] for p in idx]
        assert all(x[i - 1] == 2 * e for x in face)
        assert [x[: i - 1] + x[i:] for x in face] == lattice_points(2, 2)


def test_pushout_of_two_points_into_intervals():
    two = Graph(["a", "b"])
    I = Graph(["a", "b"], [("a", "b")])
    inc = GraphMap(two, I, lambda v: v)
    po = pushout(inc, inc)
    assert len(po.graph) == 2 and po.graph.num_edges == 1


def test_pushout_glues_cycle():
    P = interval(3)
    ends = Graph(["s", "t"])
    f = GraphMap(ends, P, {"s": 0, "t": 3})
    g = GraphMap(ends, interval(2), {"s": 0, "t": 2})
    po = pushout(f, g)
    assert graph_isomorphic(po.graph, cycle(5))[0]


def test_pullback_of_inclusions_is_intersection():
    C = cycle(6)
    H = C.induced([0, 1, 2, 3])
    K = C.induced([2, 3, 4, 5, 0])
    P = pullback(GraphMap(H, C, lambda v: v), GraphMap(K, C, lambda v: v))
    assert sorted(P.vertices) == [(0, 0), (2, 2), (3, 3)]
    assert P.num_edges == 1


def test_square_must_commute():
    G = point()
    C = cycle(5)
    a = GraphMap(G, C, lambda v: 0)
    b = GraphMap(G, C, lambda v: 1)
    with pytest.raises(ValueError):
        GraphSquare(a, b, identity(C), identity(C))


def test_isomorphism_random_relabel(rng):
    for _ in range(20):
        nv = rng.randint(3, 12)
        vs = list(range(nv))
        G = Graph(vs, [(a, b) for a in vs for b in vs if a < b and rng.random() < 0.4])
        perm = vs[:]
        rng.shuffle(perm)
        H = Graph([f"v{p}" for p in perm], [(f"v{perm[a]}", f"v{perm[b]}") for a, b in G.edges()])
        ok, w = graph_isomorphic(G, H)
        assert ok and check_isomorphism(G, H, w)


def test_non_isomorphic_same_degrees():
    two_triangles = disjoint_union(cycle(3), cycle(3))
    assert not graph_isomorphic(cycle(6), two_triangles)[0]
    assert graph_isomorphic(cycle(6), cycle(6))[0]
