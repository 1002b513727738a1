"""Double mapping cylinders and the constructions built from them.

Cylinder vertex labels:
  ("B", b)     the left end, level 0
  ("A", a, t)  an interior level 0 < t < m of the middle copy of A
  ("C", c)     the right end, level m
For m = 0 the cylinder is the pushout and uses the ("B", b) / ("C", c) names of
graph.pushout, each class named after its first member.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import (
    Graph,
    GraphMap,
    GraphSquare,
    Label,
    bfs_distances,
    box_product,
    count_cube_maps,
    cube,
    identity,
    interval,
    iter_cube_maps,
    point,
    pushout,
    terminal,
)


@dataclass(frozen=True)
class CylinderResult:
    graph: Graph
    ell0: GraphMap          # B -> Cyl
    r0: GraphMap            # C -> Cyl
    cyl_quotient: GraphMap  # A box I_m -> Cyl
    f: GraphMap = field(repr=False)
    g: GraphMap = field(repr=False)
    m: int = 0

    def point(self, a: Label, t: int) -> Label:
        """The image of (a, t) from A box I_m."""
        return self.cyl_quotient((a, t))


def double_mapping_cylinder(f: GraphMap, g: GraphMap, m: int) -> CylinderResult:
    """Cyl_m(f, g): B and C glued to the two ends of A box I_m along f and g."""
    if m < 0:
        raise ValueError("cylinder length must be >= 0")
    if not f.source.same_as(g.source):
        raise ValueError("f and g must share a source")
    A, B, C = f.source, f.target, g.target
    AI = box_product(A, interval(m))
    gi = [g.img_idx[g.source.index(a)] for a in A.vertices]
    if m == 0:
        po = pushout(f, g)
        Q = po.graph
        img = [po.from_left.img_idx[f.img_idx[ia]] for ia in range(len(A))]
        quot = GraphMap.from_indices(AI, Q, img, check=False)
        return CylinderResult(Q, po.from_left, po.from_right, quot, f, g, m)

    nA, nB, nC = len(A), len(B), len(C)
    labels = [("B", b) for b in B.vertices]
    labels += [("A", a, t) for t in range(1, m) for a in A.vertices]
    labels += [("C", c) for c in C.vertices]
    offC = nB + (m - 1) * nA

    def where(ia: int, t: int) -> int:
        if t == 0:
            return f.img_idx[ia]
        if t == m:
            return offC + gi[ia]
        return nB + (t - 1) * nA + ia

    nbrs: list[set[int]] = [set(B.nbr_idx(i)) for i in range(nB)]
    nbrs += [set() for _ in range((m - 1) * nA)]
    nbrs += [{offC + j for j in C.nbr_idx(i)} for i in range(nC)]

    def link(x: int, y: int) -> None:
        if x != y:
            nbrs[x].add(y)
            nbrs[y].add(x)

    for t in range(m + 1):
        for ia in range(nA):
            x = where(ia, t)
            for ja in A.nbr_idx(ia):
                link(x, where(ja, t))
            if t < m:
                link(x, where(ia, t + 1))
    Q = Graph.from_adjacency(labels, nbrs)
    img = [where(ia, t) for ia in range(nA) for t in range(m + 1)]
    quot = GraphMap.from_indices(AI, Q, img, check=False)
    ell0 = GraphMap.from_indices(B, Q, range(nB), check=False)
    r0 = GraphMap.from_indices(C, Q, range(offC, offC + nC), check=False)
    return CylinderResult(Q, ell0, r0, quot, f, g, m)


def _transport(src: CylinderResult, dst: CylinderResult, shift: int, left_end: str, right_end: str) -> GraphMap:
    """Map src -> dst sending (a, t) to (a, t + shift) and the ends as indicated.

    left_end/right_end say what the src ends are: "B"/"C" mean the src end is
    the same graph as dst's end; "A" means the src end is a copy of A sitting
    at level 0 (left) or at level src.m (right).
    """
    def send(v):
        tag = v[0]
        if tag == "A":
            return dst.point(v[1], v[2] + shift)
        if tag == "B":
            return dst.ell0(v[1]) if left_end == "B" else dst.point(v[1], shift)
        return dst.r0(v[1]) if right_end == "C" else dst.point(v[1], src.m + shift)

    return GraphMap(src.graph, dst.graph, send, check=True)


def ell_k(f: GraphMap, g: GraphMap, m: int, k: int) -> GraphMap:
    """l_k : Cyl_k(f, id_A) -> Cyl_m(f, g), occupying levels 0..k."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    src = double_mapping_cylinder(f, identity(f.source), k)
    dst = double_mapping_cylinder(f, g, m)
    return _transport(src, dst, 0, "B", "A")


def r_k(f: GraphMap, g: GraphMap, m: int, k: int) -> GraphMap:
    """r_k : Cyl_k(id_A, g) -> Cyl_m(f, g), (x, t) -> (x, t + m - k)."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    src = double_mapping_cylinder(identity(g.source), g, k)
    dst = double_mapping_cylinder(f, g, m)
    return _transport(src, dst, m - k, "A", "C")


def sigma_retraction(f: GraphMap, m: int) -> GraphMap:
    """sigma(f) : Cyl_m(f, id_A) -> B collapsing the cylinder onto B."""
    cyl = double_mapping_cylinder(f, identity(f.source), m)

    def send(v):
        if v[0] == "B":
            return v[1]
        return f(v[1])

    return GraphMap(cyl.graph, f.target, send)


def level_section(cyl: CylinderResult, t: int) -> GraphMap:
    """A -> Cyl, a -> (a, t)."""
    A = cyl.f.source
    return GraphMap(A, cyl.graph, lambda a: cyl.point(a, t), check=False)


def suspension(G: Graph, m: int) -> Graph:
    """Cyl_m(!, !): two apexes joined through m-1 copies of G."""
    if m < 1:
        raise ValueError("suspension length must be >= 1")
    t = terminal(G)
    return double_mapping_cylinder(t, t, m).graph


def iterated_suspension(G: Graph, m: int, times: int) -> Graph:
    for _ in range(times):
        G = suspension(G, m)
    return G


def cone(G: Graph, m: int) -> Graph:
    """Cyl_m(id, !): G box I_m with level m collapsed to a point."""
    if m < 1:
        raise ValueError("cone length must be >= 1")
    return double_mapping_cylinder(identity(G), terminal(G), m).graph


def _boundary_edge_ok(x: tuple, y: tuple, m: int) -> bool:
    return any((a == 0 and b == 0) or (a == m and b == m) for a, b in zip(x, y))


def _cube_subgraph(m: int, n: int, keep) -> Graph:
    Q = cube(m, n)
    verts = [p for p in Q.vertices if keep(p)]
    edges = [(x, y) for x, y in Q.edges() if keep(x) and keep(y) and _boundary_edge_ok(x, y, m)]
    return Graph(verts, edges)


def cube_boundary(m: int, n: int) -> Graph:
    """Points of Q_m^n with some coordinate in {0, m}.

    Edges of the cube are kept when both ends share a coordinate equal to 0
    or to m; this is the induced subgraph except when m = n = 1, where the
    two points 0 and 1 are not adjacent.
    """
    if n < 0 or m < 0:
        raise ValueError("parameters must be >= 0")
    if n == 0:
        return Graph([])
    return _cube_subgraph(m, n, lambda p: any(x in (0, m) for x in p))


def open_box(m: int, n: int) -> Graph:
    """The cube boundary with the open top face x_n = m removed."""
    if n < 1:
        raise ValueError("open box needs n >= 1")

    def keep(p):
        if not any(x in (0, m) for x in p):
            return False
        if p[-1] == m and all(x not in (0, m) for x in p[:-1]):
            return False
        return True

    return _cube_subgraph(m, n, keep)


def boundary_inclusion(m: int, n: int) -> GraphMap:
    return GraphMap(cube_boundary(m, n), cube(m, n), lambda p: p)


def pi_interval(p: int, q1: int, q1p: int, q2: int, q2p: int):
    """The endpoint-preserving contraction I_{p+q1+q1'+q2+q2'} -> I_{p+q1+q2} as a function."""
    top = p + q1 + q2
    hi = p + q1 + q1p + q2

    def pi(t: int) -> int:
        if t <= q1p:
            return 0
        if t >= hi:
            return top
        return t - q1p

    return pi


def pi_contract(f: GraphMap, g: GraphMap, p: int, q1: int, q1p: int, q2: int, q2p: int) -> GraphMap:
    """The map of cylinders induced by the interval contraction pi_interval."""
    if min(p, q1, q1p, q2, q2p) < 0:
        raise ValueError("parameters must be >= 0")
    M, N = p + q1 + q1p + q2 + q2p, p + q1 + q2
    src = double_mapping_cylinder(f, g, M)
    dst = double_mapping_cylinder(f, g, N)
    pi = pi_interval(p, q1, q1p, q2, q2p)

    def send(v):
        if v[0] == "A":
            return dst.point(v[1], pi(v[2]))
        return dst.ell0(v[1]) if v[0] == "B" else dst.r0(v[1])

    return GraphMap(src.graph, dst.graph, send)


def cylinder_square(f: GraphMap, g: GraphMap, p: int, q1: int, q2: int) -> GraphSquare:
    """The square A box I_p -> Cyl_{p+q1}(f, id), Cyl_{p+q2}(id, g) -> Cyl_{p+q1+q2}(f, g)."""
    A = f.source
    ida = identity(A)
    top = r_k(f, ida, p + q1, p)
    left = ell_k(ida, g, p + q2, p)
    right = ell_k(f, g, p + q1 + q2, p + q1)
    bottom = r_k(f, g, p + q1 + q2, p + q2)
    return GraphSquare(top, left, right, bottom)


# skeletal pushouts

@dataclass(frozen=True)
class SkeletalReport:
    ok: bool
    dimension: int | None = None       # first k where the comparison fails
    reason: str = ""
    witness: tuple | None = None       # offending cube(s), as label tuples


def _set_pushout_classes(sq: GraphSquare, k: int):
    G, H, K, L = sq.top.source, sq.top.target, sq.left.target, sq.right.target
    cG = list(iter_cube_maps(G, k))
    cH = list(iter_cube_maps(H, k))
    cK = list(iter_cube_maps(K, k))
    posH = {c: i for i, c in enumerate(cH)}
    posK = {c: len(cH) + i for i, c in enumerate(cK)}
    parent = list(range(len(cH) + len(cK)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ti, li = sq.top.img_idx, sq.left.img_idx
    for c in cG:
        a = find(posH[tuple(ti[v] for v in c)])
        b = find(posK[tuple(li[v] for v in c)])
        if a != b:
            parent[max(a, b)] = min(a, b)
    return cH, cK, find, L


def is_n_skeletal_pushout(sq: GraphSquare, n: int, report: bool = False):
    """For each k <= n, compare the set pushout of k-cube maps with the k-cube maps of L.

    Cube maps are maps from Q_1^k.  The square is n-skeletal iff every
    comparison is a bijection.  With report=True a SkeletalReport is returned
    naming the first failing dimension and a witness.
    """
    for k in range(n + 1):
        cH, cK, find, L = _set_pushout_classes(sq, k)
        ri, bi = sq.right.img_idx, sq.bottom.img_idx
        image: dict[tuple, int] = {}
        bad = None
        for idx, c in enumerate(cH + cK):
            t = tuple((ri if idx < len(cH) else bi)[v] for v in c)
            r = find(idx)
            prev = image.setdefault(t, r)
            if prev != r:
                lab = lambda cc, G: tuple(G.label(v) for v in cc)
                bad = SkeletalReport(False, k, "two distinct classes of the set pushout map to the same cube of L",
                                     (lab(t, L),))
                break
        if bad is None:
            total = count_cube_maps(L, k)
            if len(image) != total:
                missing = next(c for c in iter_cube_maps(L, k) if c not in image)
                bad = SkeletalReport(False, k, "a cube of L is not in the image of the set pushout",
                                     (tuple(L.label(v) for v in missing),))
        if bad is not None:
            return bad if report else False
    return SkeletalReport(True) if report else True


def subgraph_square(G: Graph, A, B) -> GraphSquare:
    """The square of induced subgraphs G[A cap B] -> G[A], G[B] -> G."""
    A, B = set(A), set(B)
    GA, GB, GAB = G.induced(A), G.induced(B), G.induced(A & B)
    inc = lambda S, T: GraphMap(S, T, lambda v: v)
    return GraphSquare(inc(GAB, GA), inc(GAB, GB), inc(GA, G), inc(GB, G))


def distance_criterion(G: Graph, A, B, n: int) -> bool:
    """True iff every vertex outside A is at distance >= n+1 from every vertex outside B."""
    A, B = set(A), set(B)
    if A | B != set(G.vertices):
        raise ValueError("A and B must cover the vertex set")
    notA = [G.index(v) for v in G.vertices if v not in A]
    notB = [G.index(v) for v in G.vertices if v not in B]
    if not notA or not notB:
        return True
    dist = bfs_distances(G, notA)
    return min(dist[j] for j in notB) >= n + 1


# the two standard counterexamples: graph pushouts that are not 1-skeletal

def edge_collapse_square() -> GraphSquare:
    """I_1 inside a triangle, with the edge collapsed to a point."""
    G = Graph(["a", "b"], [("a", "b")])
    H = Graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    K = Graph(["ab"])
    L = Graph(["ab", "c"], [("ab", "c")])
    top = GraphMap(G, H, lambda v: v)
    left = GraphMap(G, K, lambda v: "ab")
    right = GraphMap(H, L, lambda v: "c" if v == "c" else "ab")
    bottom = GraphMap(K, L, lambda v: v)
    return GraphSquare(top, left, right, bottom)


def parallel_edge_square() -> GraphSquare:
    """Two points included into I_1 in both directions; the pushout is I_1 again."""
    G = Graph(["a", "b"])
    H = Graph(["a", "b"], [("a", "b")])
    K = Graph(["a", "b"], [("a", "b")])
    L = Graph(["a", "b"], [("a", "b")])
    inc = lambda S, T: GraphMap(S, T, lambda v: v)
    return GraphSquare(inc(G, H), inc(G, K), inc(H, L), inc(K, L))
