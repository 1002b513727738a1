import pytest

from dhtk.cylinder import (
    boundary_inclusion,
    cone,
    cube_boundary,
    cylinder_square,
    distance_criterion,
    double_mapping_cylinder,
    edge_collapse_square,
    ell_k,
    is_n_skeletal_pushout,
    level_section,
    open_box,
    parallel_edge_square,
    pi_contract,
    r_k,
    sigma_retraction,
    subgraph_square,
    suspension,
)
from dhtk.graph import (
    Graph,
    GraphMap,
    bfs_distances,
    box_product,
    cube,
    cycle,
    graph_isomorphic,
    identity,
    interval,
    point,
    pullback,
    pushout,
    terminal,
)

SIZES = [(2, 1), (2, 2), (3, 1), (3, 2)]


def wrap(L, k):
    """C_{kL} -> C_L, i -> i mod L."""
    return GraphMap(cycle(k * L), cycle(L), lambda i: i % L)


def sample_maps():
    C5 = cycle(5)
    I1_in = GraphMap(interval(1), C5, {0: 0, 1: 1})
    return [
        (terminal(C5), identity(C5)),
        (wrap(5, 2), terminal(cycle(10))),
        (I1_in, terminal(interval(1))),
        (boundary_inclusion(2, 1), boundary_inclusion(2, 1)),
        (wrap(3, 2), identity(cycle(6))),
    ]


@pytest.mark.parametrize("idx", range(5))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_vertex_count(idx, m):
    f, g = sample_maps()[idx]
    G = double_mapping_cylinder(f, g, m).graph
    assert len(G) == len(f.target) + len(g.target) + (m - 1) * len(f.source)


@pytest.mark.parametrize("idx", range(5))
def test_symmetry(idx):
    f, g = sample_maps()[idx]
    for m in (0, 1, 2, 3):
        assert graph_isomorphic(double_mapping_cylinder(f, g, m).graph, double_mapping_cylinder(g, f, m).graph)[0]


def test_length_zero_is_pushout():
    f, g = wrap(5, 2), terminal(cycle(10))
    assert double_mapping_cylinder(f, g, 0).graph == pushout(f, g).graph


def test_labels_and_levels():
    C5 = cycle(5)
    cyl = double_mapping_cylinder(terminal(C5), identity(C5), 3)
    assert cyl.graph.vertices[0] == ("B", point().vertices[0])
    assert cyl.point(2, 0) == ("B", 0) and cyl.point(2, 1) == ("A", 2, 1) and cyl.point(2, 3) == ("C", 2)
    level_section(cyl, 2)


@pytest.mark.parametrize("m,n", SIZES)
def test_cylinder_of_boundary_inclusions_is_cube_boundary(m, n):
    i = boundary_inclusion(m, n)
    assert graph_isomorphic(double_mapping_cylinder(i, i, m).graph, cube_boundary(m, n + 1))[0]


@pytest.mark.parametrize("m,n", SIZES)
def test_cylinder_with_identity_is_open_box(m, n):
    i = boundary_inclusion(m, n)
    assert graph_isomorphic(double_mapping_cylinder(i, identity(i.source), m).graph, open_box(m, n + 1))[0]


def test_cube_boundary_counts():
    B = cube_boundary(2, 3)
    assert len(B) == 26
    # every cube edge except the six at the centre point
    assert B.num_edges == 3 * 2 * 9 - 6
    assert len(cube_boundary(1, 1)) == 2 and cube_boundary(1, 1).num_edges == 0


def test_suspension_and_cone_sizes():
    S = suspension(cycle(5), 4)
    assert len(S) == 2 + 3 * 5
    # two rings of 5, 5 rungs between them, 5 spokes to each pole
    S3 = suspension(cycle(5), 3)
    assert (len(S3), S3.num_edges) == (12, 5 + 5 + 5 + 5 + 5)
    C = cone(cycle(5), 2)
    assert len(C) == 5 + 5 + 1


@pytest.mark.parametrize("idx", range(5))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_sigma_retracts_left_end(idx, m):
    f, _ = sample_maps()[idx]
    cyl = double_mapping_cylinder(f, identity(f.source), m)
    assert sigma_retraction(f, m).compose(cyl.ell0) == identity(f.target)


def test_ell_and_r_are_injective_below_full_length():
    for f, g in sample_maps():
        for k in range(3):
            assert ell_k(f, g, 3, k).is_injective()
            assert r_k(f, g, 3, k).is_injective()


def test_pi_contract_is_a_graph_map():
    f, g = wrap(5, 2), terminal(cycle(10))
    h = pi_contract(f, g, 1, 1, 1, 1, 1)
    assert len(h.source) == len(double_mapping_cylinder(f, g, 5).graph)
    assert h.is_surjective()


@pytest.mark.parametrize("idx", range(5))
@pytest.mark.parametrize("p,q1,q2", [(0, 1, 1), (1, 1, 1), (1, 2, 1), (2, 1, 2)])
def test_cylinder_square_pullback_is_product(idx, p, q1, q2):
    f, g = sample_maps()[idx]
    sq = cylinder_square(f, g, p, q1, q2)
    P = pullback(sq.right, sq.bottom)
    assert graph_isomorphic(P, box_product(f.source, interval(p)))[0]


@pytest.mark.parametrize("idx", [0, 2, 4])
@pytest.mark.parametrize("p,q1,q2", [(0, 1, 1), (1, 1, 1), (0, 2, 1)])
def test_cylinder_square_is_skeletal(idx, p, q1, q2):
    f, g = sample_maps()[idx]
    sq = cylinder_square(f, g, p, q1, q2)
    assert is_n_skeletal_pushout(sq, p + 1)


def test_counterexamples_are_pushouts_but_not_one_skeletal():
    for sq in (edge_collapse_square(), parallel_edge_square()):
        po = pushout(sq.top, sq.left)
        assert graph_isomorphic(po.graph, sq.apex)[0]
        assert is_n_skeletal_pushout(sq, 0)
        rep = is_n_skeletal_pushout(sq, 1, report=True)
        assert not rep.ok and rep.dimension == 1 and rep.witness


def random_graph(rng, nv, p):
    vs = list(range(nv))
    return Graph(vs, [(a, b) for a in vs for b in vs if a < b and rng.random() < p])


def random_cover(rng, G, n):
    """A cover by A and B in which everything outside A is at distance > n from everything outside B."""
    vs = list(G.vertices)
    for _ in range(100):
        U = set(rng.sample(vs, rng.randint(1, max(1, len(vs) // 3))))
        dist = bfs_distances(G, [G.index(u) for u in U])
        far = [v for v in vs if dist[G.index(v)] >= n + 1]
        if far:
            W = set(rng.sample(far, rng.randint(1, len(far))))
            return set(vs) - U, set(vs) - W
    return None


def test_random_covers_satisfying_distance_criterion(rng):
    done = 0
    while done < 50:
        n = 1 + done % 2
        G = random_graph(rng, rng.randint(6, 10), 0.35)
        cover = random_cover(rng, G, n)
        if cover is None:
            continue
        A, B = cover
        assert distance_criterion(G, A, B, n)
        sq = subgraph_square(G, A, B)
        results = [is_n_skeletal_pushout(sq, k) for k in range(n + 2)]
        assert results[n]
        assert all(results[k] or not results[k + 1] for k in range(n + 1))
        done += 1


def test_distance_criterion_can_fail():
    C = cycle(6)
    A = {0, 1, 2, 3}
    B = {2, 3, 4, 5}
    assert not distance_criterion(C, A, B, 1)
    with pytest.raises(ValueError):
        distance_criterion(C, {0}, {1}, 1)


def test_monotone_on_random_covers(rng):
    for _ in range(30):
        G = random_graph(rng, rng.randint(5, 8), 0.4)
        vs = list(G.vertices)
        A = set(rng.sample(vs, rng.randint(1, len(vs))))
        B = (set(vs) - A) | set(rng.sample(vs, rng.randint(0, len(vs))))
        sq = subgraph_square(G, A, B)
        r = [is_n_skeletal_pushout(sq, k) for k in range(3)]
        assert r[0]
        assert (not r[2] or r[1]) and (not r[1] or r[0])


def test_cube_as_cylinder():
    # Cyl_m(id, id) on Q_m^n is Q_m^{n+1}
    Q = cube(2, 1)
    assert graph_isomorphic(double_mapping_cylinder(identity(Q), identity(Q), 2).graph, cube(2, 2))[0]
