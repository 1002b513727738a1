"""Finite reflexive graphs, graph maps, standard families and cube-map enumeration.

Every vertex carries an implicit loop.  Only non-loop adjacencies are stored,
as frozensets of dense vertex indices; labels are arbitrary hashables and the
vertex order given at construction is the canonical order everywhere else.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Label = Hashable


class Graph:
    """A finite reflexive symmetric relation on an ordered vertex list."""

    __slots__ = ("_labels", "_index", "_nbrs", "_closed")

    def __init__(self, vertices: Iterable[Label], edges: Iterable[tuple[Label, Label]] = ()):
        labels = tuple(vertices)
        index = {v: i for i, v in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("duplicate vertex label")
        nbrs: list[set[int]] = [set() for _ in labels]
        for a, b in edges:
            try:
                i, j = index[a], index[b]
            except KeyError as exc:
                raise ValueError(f"edge mentions unknown vertex {exc.args[0]!r}") from None
            if i != j:
                nbrs[i].add(j)
                nbrs[j].add(i)
        self._labels = labels
        self._index = index
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self._closed = None

    @classmethod
    def from_adjacency(cls, labels: Sequence[Label], nbrs: Sequence[Iterable[int]]) -> "Graph":
        """Build from per-index neighbour sets (symmetric, loops dropped)."""
        g = cls.__new__(cls)
        g._labels = tuple(labels)
        g._index = {v: i for i, v in enumerate(g._labels)}
        if len(g._index) != len(g._labels):
            raise ValueError("duplicate vertex label")
        sets = [set(s) for s in nbrs]
        for i, s in enumerate(sets):
            s.discard(i)
            for j in s:
                if i not in sets[j] and j != i:
                    raise ValueError("adjacency is not symmetric")
        g._nbrs = tuple(frozenset(s) for s in sets)
        g._closed = None
        return g

    # basic access
    @property
    def vertices(self) -> tuple[Label, ...]:
        return self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._labels)

    def __contains__(self, v: object) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def index(self, v: Label) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def label(self, i: int) -> Label:
        return self._labels[i]

    def nbr_idx(self, i: int) -> frozenset[int]:
        """Open neighbourhood of vertex index i (no loop)."""
        return self._nbrs[i]

    def closed_nbr_idx(self, i: int) -> frozenset[int]:
        if self._closed is None:
            self._closed = tuple(s | {j} for j, s in enumerate(self._nbrs))
        return self._closed[i]

    def adjacent_idx(self, i: int, j: int) -> bool:
        return i == j or j in self._nbrs[i]

    def adjacent(self, v: Label, w: Label) -> bool:
        """The reflexive relation: v ~ w, true when v == w."""
        return self.adjacent_idx(self.index(v), self.index(w))

    def neighbors(self, v: Label) -> list[Label]:
        return [self._labels[j] for j in sorted(self._nbrs[self.index(v)])]

    def degree(self, v: Label) -> int:
        return len(self._nbrs[self.index(v)])

    def min_degree(self) -> int:
        return min((len(s) for s in self._nbrs), default=0)

    def max_degree(self) -> int:
        return max((len(s) for s in self._nbrs), default=0)

    def edge_idx(self) -> list[tuple[int, int]]:
        return [(i, j) for i, s in enumerate(self._nbrs) for j in sorted(s) if i < j]

    def edges(self) -> list[tuple[Label, Label]]:
        """Non-loop edges, each once, in index order."""
        lab = self._labels
        return [(lab[i], lab[j]) for i, j in self.edge_idx()]

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self._nbrs) // 2

    def induced(self, subset: Iterable[Label]) -> "Graph":
        """Induced subgraph; vertices keep the parent order."""
        keep = {self.index(v) for v in subset}
        order = sorted(keep)
        pos = {i: k for k, i in enumerate(order)}
        return Graph.from_adjacency(
            [self._labels[i] for i in order],
            [[pos[j] for j in self._nbrs[i] if j in keep] for i in order],
        )

    def relabel(self, fn: Callable[[Label], Label]) -> "Graph":
        return Graph.from_adjacency([fn(v) for v in self._labels], self._nbrs)

    def same_as(self, other: "Graph") -> bool:
        """Equal vertex sets and equal relations (vertex order ignored)."""
        if set(self._labels) != set(other._labels):
            return False
        return all(
            {other._index[self._labels[j]] for j in self._nbrs[i]} == other._nbrs[other._index[v]]
            for i, v in enumerate(self._labels)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._nbrs == other._nbrs

    def __hash__(self) -> int:
        return hash((self._labels, self._nbrs))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self)}, |E|={self.num_edges})"


class GraphMap:
    """A relation-preserving vertex function between two graphs."""

    __slots__ = ("source", "target", "_img")

    def __init__(self, source: Graph, target: Graph, assignment: Mapping[Label, Label] | Callable[[Label], Label],
                 check: bool = True):
        get = assignment.__getitem__ if isinstance(assignment, Mapping) else assignment
        try:
            img = tuple(target.index(get(v)) for v in source.vertices)
        except KeyError as exc:
            raise ValueError(f"assignment is not total or leaves the target: {exc}") from None
        self.source = source
        self.target = target
        self._img = img
        if check:
            bad = self.first_violation()
            if bad is not None:
                a, b = bad
                raise ValueError(f"not a graph map: edge {a!r}~{b!r} is not preserved")

    @classmethod
    def from_indices(cls, source: Graph, target: Graph, img: Sequence[int], check: bool = True) -> "GraphMap":
        f = cls.__new__(cls)
        f.source, f.target, f._img = source, target, tuple(img)
        if len(f._img) != len(source):
            raise ValueError("index image has the wrong length")
        if check and f.first_violation() is not None:
            raise ValueError("not a graph map")
        return f

    @property
    def img_idx(self) -> tuple[int, ...]:
        return self._img

    def first_violation(self) -> tuple[Label, Label] | None:
        t, img = self.target, self._img
        for i, j in self.source.edge_idx():
            if not t.adjacent_idx(img[i], img[j]):
                return self.source.label(i), self.source.label(j)
        return None

    def __call__(self, v: Label) -> Label:
        return self.target.label(self._img[self.source.index(v)])

    def as_dict(self) -> dict[Label, Label]:
        tl = self.target.vertices
        return {v: tl[i] for v, i in zip(self.source.vertices, self._img)}

    def compose(self, inner: "GraphMap") -> "GraphMap":
        """self after inner."""
        if inner.target is not self.source and not inner.target.same_as(self.source):
            raise ValueError("maps are not composable")
        src = self.source
        img = tuple(self._img[src.index(inner.target.label(i))] for i in inner._img)
        return GraphMap.from_indices(inner.source, self.target, img, check=False)

    def is_injective(self) -> bool:
        return len(set(self._img)) == len(self._img)

    def is_surjective(self) -> bool:
        return len(set(self._img)) == len(self.target)

    def image(self) -> list[Label]:
        return [self.target.label(i) for i in sorted(set(self._img))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphMap):
            return NotImplemented
        return self.as_dict() == other.as_dict() and self.target.same_as(other.target)

    def __repr__(self) -> str:
        return f"GraphMap({self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class GraphSquare:
    """Commutative square  top: G->H, left: G->K, right: H->L, bottom: K->L."""

    top: GraphMap
    left: GraphMap
    right: GraphMap
    bottom: GraphMap

    def __post_init__(self):
        # identical vertex orders are required: the skeletal check composes index images
        if not (self.top.source == self.left.source and self.top.target == self.right.source
                and self.left.target == self.bottom.source and self.right.target == self.bottom.target):
            raise ValueError("square maps do not fit together")
        G = self.top.source
        for v in G.vertices:
            if self.right(self.top(v)) != self.bottom(self.left(v)):
                raise ValueError(f"square does not commute at {v!r}")

    @property
    def corner(self) -> Graph:
        return self.top.source

    @property
    def apex(self) -> Graph:
        return self.right.target


# standard graphs

def point() -> Graph:
    return Graph([0])


def empty_graph() -> Graph:
    return Graph([])


def interval(m: int) -> Graph:
    """The path 0 - 1 - ... - m."""
    if m < 0:
        raise ValueError("interval length must be >= 0")
    return Graph(range(m + 1), ((i, i + 1) for i in range(m)))


def cycle(L: int) -> Graph:
    if L < 3:
        raise ValueError("cycle length must be >= 3")
    return Graph(range(L), ((i, (i + 1) % L) for i in range(L)))


def box_product(G: Graph, H: Graph) -> Graph:
    """Vertices are pairs (v, w); an edge moves in exactly one factor."""
    nH = len(H)
    labels = [(v, w) for v in G.vertices for w in H.vertices]
    nbrs = []
    for i in range(len(G)):
        for j in range(nH):
            s = {i * nH + jj for jj in H.nbr_idx(j)}
            s.update(ii * nH + j for ii in G.nbr_idx(i))
            nbrs.append(s)
    return Graph.from_adjacency(labels, nbrs)


def box_projections(G: Graph, H: Graph, product: Graph | None = None) -> tuple[GraphMap, GraphMap]:
    P = product if product is not None else box_product(G, H)
    return (GraphMap(P, G, lambda x: x[0], check=False), GraphMap(P, H, lambda x: x[1], check=False))


def cube(m: int, n: int) -> Graph:
    """The n-fold box product of interval(m), with flat tuple labels in lexicographic order."""
    if m < 0 or n < 0:
        raise ValueError("cube parameters must be >= 0")
    pts = list(itertools.product(range(m + 1), repeat=n))
    pos = {p: k for k, p in enumerate(pts)}
    nbrs = []
    for p in pts:
        s = set()
        for c in range(n):
            for d in (-1, 1):
                x = p[c] + d
                if 0 <= x <= m:
                    s.add(pos[p[:c] + (x,) + p[c + 1:]])
        nbrs.append(s)
    return Graph.from_adjacency(pts, nbrs)


def disjoint_union(*graphs: Graph) -> Graph:
    """Labels become (summand index, original label)."""
    labels, nbrs, off = [], [], 0
    for k, G in enumerate(graphs):
        labels.extend((k, v) for v in G.vertices)
        nbrs.extend({off + j for j in G.nbr_idx(i)} for i in range(len(G)))
        off += len(G)
    return Graph.from_adjacency(labels, nbrs)


def identity(G: Graph) -> GraphMap:
    return GraphMap.from_indices(G, G, range(len(G)), check=False)


def terminal(G: Graph, target: Graph | None = None) -> GraphMap:
    """The unique map to a one-vertex graph."""
    P = target if target is not None else point()
    if len(P) != 1:
        raise ValueError("terminal target must have one vertex")
    return GraphMap.from_indices(G, P, [0] * len(G), check=False)


def inclusion(sub: Graph, G: Graph) -> GraphMap:
    return GraphMap(sub, G, lambda v: v)


# metric structure

def bfs_distances(G: Graph, sources: Iterable[int]) -> list[float]:
    """Multi-source BFS over vertex indices; unreachable entries are inf."""
    dist: list[float] = [math.inf] * len(G)
    q = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            q.append(s)
    while q:
        i = q.popleft()
        d = dist[i] + 1
        for j in G.nbr_idx(i):
            if dist[j] > d:
                dist[j] = d
                q.append(j)
    return dist


def distance(G: Graph, v: Label, w: Label) -> float:
    """Shortest path length; math.inf if w is unreachable from v."""
    i, j = G.index(v), G.index(w)
    d = bfs_distances(G, [i])[j]
    return int(d) if d != math.inf else d


def connected_components(G: Graph) -> list[list[Label]]:
    seen = [False] * len(G)
    out = []
    for s in range(len(G)):
        if seen[s]:
            continue
        comp, q = [], deque([s])
        seen[s] = True
        while q:
            i = q.popleft()
            comp.append(i)
            for j in G.nbr_idx(i):
                if not seen[j]:
                    seen[j] = True
                    q.append(j)
        out.append([G.label(i) for i in sorted(comp)])
    return out


# pushouts

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index stays root, so roots are least members
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class PushoutResult:
    graph: Graph
    from_left: GraphMap
    from_right: GraphMap


def quotient(labels: Sequence[Label], nbrs: Sequence[Iterable[int]], glue: Iterable[tuple[int, int]],
             name: Callable[[int], Label] | None = None) -> tuple[Graph, list[int]]:
    """Quotient of an index graph by the equivalence generated by glue pairs.

    Each class is named after its least index (or name(least index)).
    Returns the quotient graph and the index of the class of every old index.
    """
    uf = _UnionFind(len(labels))
    for a, b in glue:
        uf.union(a, b)
    roots = sorted({uf.find(i) for i in range(len(labels))})
    pos = {r: k for k, r in enumerate(roots)}
    cls = [pos[uf.find(i)] for i in range(len(labels))]
    new_nbrs: list[set[int]] = [set() for _ in roots]
    for i, s in enumerate(nbrs):
        ci = cls[i]
        for j in s:
            cj = cls[j]
            if ci != cj:
                new_nbrs[ci].add(cj)
                new_nbrs[cj].add(ci)
    nm = name if name is not None else (lambda i: labels[i])
    return Graph.from_adjacency([nm(r) for r in roots], new_nbrs), cls


def pushout(f: GraphMap, g: GraphMap) -> PushoutResult:
    """Pushout of B <-f- A -g-> C.

    Vertex labels are ("B", b) or ("C", c), naming each glued class by its
    first member in the order: vertices of B, then vertices of C.
    """
    if not f.source.same_as(g.source):
        raise ValueError("pushout maps need a common source")
    B, C = f.target, g.target
    nB = len(B)
    labels = [("B", b) for b in B.vertices] + [("C", c) for c in C.vertices]
    nbrs = [list(B.nbr_idx(i)) for i in range(nB)] + [[nB + j for j in C.nbr_idx(i)] for i in range(len(C))]
    A = f.source
    gi = [g.img_idx[g.source.index(a)] for a in A.vertices]
    glue = [(fi, nB + gj) for fi, gj in zip(f.img_idx, gi)]
    Q, cls = quotient(labels, nbrs, glue)
    left = GraphMap.from_indices(B, Q, cls[:nB], check=False)
    right = GraphMap.from_indices(C, Q, cls[nB:], check=False)
    return PushoutResult(Q, left, right)


def pullback(f: GraphMap, g: GraphMap) -> Graph:
    """Pullback of H -f-> L <-g- K: pairs (h, k) with f(h) = g(k), adjacent when both coordinates are."""
    if not f.target.same_as(g.target):
        raise ValueError("pullback maps need a common target")
    H, K = f.source, g.source
    by_image: dict[int, list[int]] = {}
    for j, t in enumerate(g.img_idx):
        by_image.setdefault(t, []).append(j)
    pairs = [(i, j) for i, t in enumerate(f.img_idx) for j in by_image.get(t, ())]
    pos = {p: n for n, p in enumerate(pairs)}
    nbrs: list[set[int]] = [set() for _ in pairs]
    for n, (i, j) in enumerate(pairs):
        for i2 in H.closed_nbr_idx(i):
            for j2 in K.closed_nbr_idx(j):
                q = pos.get((i2, j2))
                if q is not None and q != n:
                    nbrs[n].add(q)
    return Graph.from_adjacency([(H.label(i), K.label(j)) for i, j in pairs], nbrs)


# isomorphism

def check_isomorphism(G: Graph, H: Graph, witness: Mapping[Label, Label]) -> bool:
    """True iff witness is a bijection V(G)->V(H) preserving adjacency both ways."""
    if len(G) != len(H) or G.num_edges != H.num_edges:
        return False
    try:
        img = [H.index(witness[v]) for v in G.vertices]
    except KeyError:
        return False
    if len(set(img)) != len(img):
        return False
    # edge counts agree, so preserving edges forward is enough
    return all(j_img in H.nbr_idx(img[i]) for i, j in G.edge_idx() for j_img in (img[j],))


def _refined_colors(G: Graph, rounds: int = 3) -> list[int]:
    """Colour refinement started from degrees; colours are comparable across graphs."""
    col = [len(G.nbr_idx(i)) for i in range(len(G))]
    sigs: list = list(col)
    for _ in range(rounds):
        sigs = [(sigs[i], tuple(sorted(sigs[j] for j in G.nbr_idx(i)))) for i in range(len(G))]
    return [hash(s) for s in sigs]


def graph_isomorphic(G: Graph, H: Graph) -> tuple[bool, dict[Label, Label] | None]:
    """Decide isomorphism; on success also return a verified witness map G -> H.

    Cheap invariants are compared first, then a VF2++ search (networkx) runs
    with colour-refinement labels as a pruning invariant.
    """
    import networkx as nx

    if len(G) != len(H) or G.num_edges != H.num_edges:
        return False, None
    if sorted(len(G.nbr_idx(i)) for i in range(len(G))) != sorted(len(H.nbr_idx(i)) for i in range(len(H))):
        return False, None
    cg, ch = _refined_colors(G), _refined_colors(H)
    if sorted(cg) != sorted(ch):
        return False, None
    nxg, nxh = nx.Graph(), nx.Graph()
    nxg.add_nodes_from((i, {"c": c}) for i, c in enumerate(cg))
    nxh.add_nodes_from((i, {"c": c}) for i, c in enumerate(ch))
    nxg.add_edges_from(G.edge_idx())
    nxh.add_edges_from(H.edge_idx())
    m = nx.vf2pp_isomorphism(nxg, nxh, node_label="c")
    if m is None:
        return False, None
    witness = {G.label(i): H.label(j) for i, j in m.items()}
    if not check_isomorphism(G, H, witness):
        raise AssertionError("isomorphism search returned an invalid witness")
    return True, witness


# cube maps

def lattice_points(m: int, n: int) -> list[tuple[int, ...]]:
    """Points of Q_m^n in row-major (lexicographic) order."""
    return list(itertools.product(range(m + 1), repeat=n))


def face_positions(m: int, n: int) -> dict[tuple[int, int], list[int]]:
    """For each face (i, eps), 1 <= i <= n, the lattice positions with x_i = 0 (eps=0) or m (eps=1).

    Positions come out in row-major order of the face, so restricting an
    assignment vector along them yields the face's assignment vector.
    """
    pts = lattice_points(m, n)
    out = {}
    for i in range(1, n + 1):
        for eps in (0, 1):
            val = m * eps
            out[(i, eps)] = [k for k, p in enumerate(pts) if p[i - 1] == val]
    return out


def iter_cube_maps(G: Graph, n: int, m: int = 1) -> Iterator[tuple[int, ...]]:
    """Yield every graph map Q_m^n -> G as a tuple of target vertex indices.

    The tuple lists images of lattice points in row-major order, and tuples
    are produced in lexicographic order.  Backtracking assigns lattice points
    in row-major order; a point's candidates are the common closed
    neighbourhood of its already-assigned lower neighbours.
    """
    N = len(G)
    if N == 0:
        return
    if m < 1:
        raise ValueError("cube edge length must be >= 1")
    pts = lattice_points(m, n)
    P = len(pts)
    if P == 1:
        for v in range(N):
            yield (v,)
        return
    pos = {p: k for k, p in enumerate(pts)}
    lower = []
    for p in pts:
        lower.append(tuple(pos[p[:c] + (p[c] - 1,) + p[c + 1:]] for c in range(n) if p[c] > 0))
    closed_sorted = [tuple(sorted(G.closed_nbr_idx(i))) for i in range(N)]
    closed_set = [G.closed_nbr_idx(i) for i in range(N)]
    cache: dict[tuple[int, ...], tuple[int, ...]] = {}
    assign = [0] * P

    def cands(j: int) -> tuple[int, ...]:
        lo = lower[j]
        if len(lo) == 1:
            return closed_sorted[assign[lo[0]]]
        key = tuple(assign[l] for l in lo)
        hit = cache.get(key)
        if hit is None:
            s = closed_set[key[0]]
            for v in key[1:]:
                s = s & closed_set[v]
            hit = tuple(sorted(s))
            cache[key] = hit
        return hit

    last = P - 1
    stack = [iter(range(N))]
    while stack:
        j = len(stack) - 1
        for v in stack[-1]:
            assign[j] = v
            if j + 1 == last:
                for w in cands(last):
                    assign[last] = w
                    yield tuple(assign)
                continue
            stack.append(iter(cands(j + 1)))
            break
        else:
            stack.pop()


def enumerate_cube_maps(G: Graph, n: int, m: int = 1) -> list[GraphMap]:
    """All graph maps cube(m, n) -> G, lexicographic in the target's vertex order."""
    Q = cube(m, n)
    return [GraphMap.from_indices(Q, G, t, check=False) for t in iter_cube_maps(G, n, m)]


def count_cube_maps(G: Graph, n: int, m: int = 1) -> int:
    return sum(1 for _ in iter_cube_maps(G, n, m))
