"""F-sequences, their reduction calculus, and the graphs F(m, n).

An F-sequence on {1..n} with length parameter m is an ordered list of
nonempty classes P_1..P_k partitioning {1..n}, a weight w(i) in 0..m for each
class, and a sign per element.  Signs are stored as 0 (written "-") or 1
(written "+"), matching the face direction eps they encode.

Text syntax:  ((7;1+,3-),(0;2-))   a single class may drop the outer
parentheses, and () is the empty sequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .graph import Graph, GraphMap, box_product, interval

MINUS, PLUS = 0, 1


@dataclass(frozen=True, order=True)
class FSequence:
    m: int
    classes: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.signs)
        seen = sorted(x for c in self.classes for x in c)
        if seen != list(range(1, n + 1)):
            raise ValueError("classes must partition {1..n}")
        if any(not c for c in self.classes):
            raise ValueError("classes must be nonempty")
        if any(tuple(sorted(c)) != c for c in self.classes):
            object.__setattr__(self, "classes", tuple(tuple(sorted(c)) for c in self.classes))
        if len(self.weights) != len(self.classes):
            raise ValueError("one weight per class")
        if any(not 0 <= w <= self.m for w in self.weights):
            raise ValueError("weights must lie in 0..m")
        if any(s not in (0, 1) for s in self.signs):
            raise ValueError("signs are 0 (minus) or 1 (plus)")

    @classmethod
    def build(cls, m: int, blocks: Sequence[tuple[int, Sequence[tuple[int, int]]]]) -> "FSequence":
        """From [(weight, [(element, sign), ...]), ...]."""
        n = sum(len(b) for _, b in blocks)
        signs = [None] * n
        classes, weights = [], []
        for w, members in blocks:
            classes.append(tuple(sorted(x for x, _ in members)))
            weights.append(w)
            for x, s in members:
                if not 1 <= x <= n or signs[x - 1] is not None:
                    raise ValueError("elements must be 1..n, each once")
                signs[x - 1] = s
        return cls(m, tuple(classes), tuple(weights), tuple(signs))

    @classmethod
    def empty(cls, m: int) -> "FSequence":
        return cls(m, (), (), ())

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def k(self) -> int:
        return len(self.classes)

    def part(self) -> tuple[int, ...]:
        """The partition function P: element j -> index of its class (1-based)."""
        out = [0] * self.n
        for i, c in enumerate(self.classes, 1):
            for x in c:
                out[x - 1] = i
        return tuple(out)

    def sort_key(self):
        return (self.k, self.classes, self.weights, self.signs)

    def __str__(self) -> str:
        if not self.classes:
            return "()"
        body = ",".join(
            "(" + str(w) + ";" + ",".join(f"{x}{'+' if self.signs[x - 1] else '-'}" for x in c) + ")"
            for c, w in zip(self.classes, self.weights)
        )
        return "(" + body + ")"


# parsing

class FSeqParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos, self.msg = text, pos, msg
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


def parse_fseq(text: str, m: int) -> FSequence:
    s = text
    i = 0

    def skip():
        nonlocal i
        while i < len(s) and s[i].isspace():
            i += 1

    def expect(ch):
        nonlocal i
        skip()
        if i >= len(s) or s[i] != ch:
            raise FSeqParseError(text, i, f"expected {ch!r}")
        i += 1

    def number():
        nonlocal i
        skip()
        j = i
        while i < len(s) and s[i].isdigit():
            i += 1
        if j == i:
            raise FSeqParseError(text, i, "expected a number")
        return int(s[j:i])

    def block():
        nonlocal i
        expect("(")
        w = number()
        expect(";")
        members = []
        while True:
            x = number()
            skip()
            if i >= len(s) or s[i] not in "+-":
                raise FSeqParseError(text, i, "expected a sign + or -")
            members.append((x, PLUS if s[i] == "+" else MINUS))
            i += 1
            skip()
            if i < len(s) and s[i] == ",":
                i += 1
                continue
            break
        expect(")")
        return w, members

    skip()
    start = i
    expect("(")
    skip()
    blocks = []
    if i < len(s) and s[i] == ")":
        i += 1
    elif i < len(s) and s[i] == "(":
        while True:
            blocks.append(block())
            skip()
            if i < len(s) and s[i] == ",":
                i += 1
                continue
            break
        expect(")")
    else:
        i = start
        blocks.append(block())
    skip()
    if i != len(s):
        raise FSeqParseError(text, i, "trailing characters")
    try:
        return FSequence.build(m, blocks)
    except ValueError as exc:
        raise FSeqParseError(text, len(s), str(exc)) from None


# reduction moves

def fr1(seq: FSequence, i: int) -> FSequence:
    """Merge class i (weight 0) into class i-1, keeping w(i-1)."""
    if not 2 <= i <= seq.k or seq.weights[i - 1] != 0:
        raise ValueError("FR1 needs 2 <= i <= k and w(i) = 0")
    cl, ws = list(seq.classes), list(seq.weights)
    cl[i - 2] = tuple(sorted(cl[i - 2] + cl[i - 1]))
    del cl[i - 1], ws[i - 1]
    return FSequence(seq.m, tuple(cl), tuple(ws), seq.signs)


def fr2(seq: FSequence, i: int) -> FSequence:
    """Merge classes i..k (w(i) = m) into one class of weight m with all signs +."""
    if not 1 <= i <= seq.k or seq.weights[i - 1] != seq.m:
        raise ValueError("FR2 needs 1 <= i <= k and w(i) = m")
    tail = tuple(sorted(x for c in seq.classes[i - 1:] for x in c))
    signs = list(seq.signs)
    for x in tail:
        signs[x - 1] = PLUS
    return FSequence(seq.m, seq.classes[: i - 1] + (tail,), seq.weights[: i - 1] + (seq.m,), tuple(signs))


def applicable_moves(seq: FSequence) -> list[tuple[str, int]]:
    out = [("FR1", i) for i in range(2, seq.k + 1) if seq.weights[i - 1] == 0]
    out += [("FR2", i) for i in range(1, seq.k + 1) if seq.weights[i - 1] == seq.m]
    return out


def apply_move(seq: FSequence, move: tuple[str, int]) -> FSequence:
    return fr1(seq, move[1]) if move[0] == "FR1" else fr2(seq, move[1])


def reduce(seq: FSequence) -> FSequence:
    """The unique reduced form: FR2 at the first weight-m class, then FR1 until no inner zero remains."""
    if seq.m in seq.weights:
        seq = fr2(seq, seq.weights.index(seq.m) + 1)
    while True:
        zero = next((i for i in range(2, seq.k + 1) if seq.weights[i - 1] == 0), None)
        if zero is None:
            return seq
        seq = fr1(seq, zero)


def is_reduced(seq: FSequence) -> bool:
    k, m, w = seq.k, seq.m, seq.weights
    if any(w[i] == 0 for i in range(1, k)):
        return False
    if any(w[i] == m for i in range(k - 1)):
        return False
    if k and w[-1] == m and any(seq.signs[x - 1] != PLUS for x in seq.classes[-1]):
        return False
    return True


def is_expanded(seq: FSequence) -> bool:
    if any(len(c) != 1 for c in seq.classes):
        return False
    w = seq.weights
    if seq.m in w:
        first = w.index(seq.m)
        return all(x == seq.m for x in w[first:])
    return True


def expanded_forms(seq: FSequence) -> list[FSequence]:
    """Every expanded-form sequence related to seq, sorted.

    From the reduced form: each class is split into singletons in every
    order, the first keeping the class weight and the rest getting 0.  A
    final weight-m class instead becomes singletons of weight m in every
    order and with every choice of signs.
    """
    r = reduce(seq)
    m = r.m
    if r.k == 0:
        return [r]
    last_full = r.weights[-1] == m
    body = r.classes[:-1] if last_full else r.classes
    choices = []
    for c, w in zip(body, r.weights):
        choices.append([[(x, w if t == 0 else 0) for t, x in enumerate(perm)] for perm in itertools.permutations(c)])
    if last_full:
        tail = r.classes[-1]
        choices.append([[(x, m) for x in perm] for perm in itertools.permutations(tail)])
        tail_sign_choices = list(itertools.product((MINUS, PLUS), repeat=len(tail)))
    else:
        tail, tail_sign_choices = (), [()]
    out = []
    for pick in itertools.product(*choices):
        flat = [e for block in pick for e in block]
        classes = tuple((x,) for x, _ in flat)
        weights = tuple(w for _, w in flat)
        for ts in tail_sign_choices:
            signs = list(r.signs)
            for x, s in zip(tail, ts):
                signs[x - 1] = s
            out.append(FSequence(m, classes, weights, tuple(signs)))
    out.sort(key=FSequence.sort_key)
    return out


def signature(seq: FSequence) -> tuple[int, ...]:
    """Sigma(j) for j = 1..n, per the min/max three-case rule on indices i <= P(j)."""
    w, m = seq.weights, seq.m
    out = []
    for pj in seq.part():
        full = [i for i in range(1, pj + 1) if w[i - 1] == m]
        if full:
            out.append(min(full))
            continue
        nz = [i for i in range(1, pj + 1) if w[i - 1] != 0]
        out.append(max(nz) if nz else 1)
    return tuple(out)


def signature_ranks(seq: FSequence) -> tuple[int, ...]:
    """Sigma with its values renumbered order-preservingly onto 1..r.

    This is the form that is unchanged by F-reductions; the raw values of
    Sigma shift down when an earlier class is merged away.
    """
    sig = signature(seq)
    rank = {v: k for k, v in enumerate(sorted(set(sig)), 1)}
    return tuple(rank[v] for v in sig)


def weight_of_signature(seq: FSequence) -> tuple[int, ...]:
    return tuple(seq.weights[s - 1] for s in signature(seq))


# the graphs F(m, n)

def ordered_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ordered set partitions of {1..n} into nonempty classes."""
    if n == 0:
        yield ()
        return
    elems = list(range(1, n + 1))
    for labels in itertools.product(range(n), repeat=n):
        used = sorted(set(labels))
        if used != list(range(len(used))):
            continue
        yield tuple(tuple(x for x, l in zip(elems, labels) if l == b) for b in range(len(used)))


def reduced_forms(m: int, n: int) -> list[FSequence]:
    """All reduced F-sequences on {1..n}, enumerated directly from the reduced-form conditions."""
    if n == 0:
        return [FSequence.empty(m)]
    out = []
    for parts in ordered_partitions(n):
        k = len(parts)
        ranges = []
        for i in range(1, k + 1):
            lo = 0 if i == 1 else 1
            hi = m if i == k else m - 1
            ranges.append(range(lo, hi + 1))
        for ws in itertools.product(*ranges):
            fixed = set(parts[-1]) if ws[-1] == m else set()
            free = [x for x in range(1, n + 1) if x not in fixed]
            for bits in itertools.product((MINUS, PLUS), repeat=len(free)):
                signs = [PLUS] * n
                for x, b in zip(free, bits):
                    signs[x - 1] = b
                out.append(FSequence(m, parts, tuple(ws), tuple(signs)))
    out.sort(key=FSequence.sort_key)
    return out


def all_fsequences(m: int, n: int) -> Iterator[FSequence]:
    """Every F-sequence on {1..n} (ordered partition x weights x signs)."""
    for parts in ordered_partitions(n):
        for ws in itertools.product(range(m + 1), repeat=len(parts)):
            for signs in itertools.product((MINUS, PLUS), repeat=n):
                yield FSequence(m, parts, ws, signs)


@lru_cache(maxsize=None)
def _f_graph_data(m: int, n: int):
    verts = reduced_forms(m, n)
    pos = {v: i for i, v in enumerate(verts)}
    nbrs = [set() for _ in verts]
    for v in verts:
        a = pos[v]
        for e in expanded_forms(v):
            for c in range(n):
                for d in (-1, 1):
                    w = e.weights[c] + d
                    if not 0 <= w <= m:
                        continue
                    e2 = FSequence(m, e.classes, e.weights[:c] + (w,) + e.weights[c + 1:], e.signs)
                    b = pos[reduce(e2)]
                    if a != b:
                        nbrs[a].add(b)
                        nbrs[b].add(a)
    return Graph.from_adjacency(verts, nbrs)


def f_graph(m: int, n: int) -> Graph:
    """F(m, n); vertex labels are the reduced FSequence objects."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    return _f_graph_data(m, n)


def in_boundary(seq: FSequence) -> bool:
    r = reduce(seq)
    return r.k > 0 and r.weights[0] == 0


def f_boundary(m: int, n: int) -> list[FSequence]:
    """Vertices of the boundary of F(m, n): reduced forms with w(1) = 0."""
    return [v for v in f_graph(m, n).vertices if in_boundary(v)]


def f_interior(m: int, n: int) -> list[FSequence]:
    return [v for v in f_graph(m, n).vertices if not in_boundary(v)]


def f_face(j: int, eps: int, seq: FSequence) -> FSequence:
    """The face map F(m, n-1) -> F(m, n): prepend a weight-0 class {j} with sign eps."""
    n = seq.n + 1
    if not 1 <= j <= n:
        raise ValueError(f"face index {j} out of range 1..{n}")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    up = lambda x: x if x < j else x + 1
    classes = ((j,),) + tuple(tuple(up(x) for x in c) for c in seq.classes)
    signs = list(seq.signs[: j - 1]) + [eps] + list(seq.signs[j - 1:])
    return reduce(FSequence(seq.m, classes, (0,) + seq.weights, tuple(signs)))


def f_face_map(m: int, n: int, j: int, eps: int) -> GraphMap:
    """f_face as a graph map F(m, n-1) -> F(m, n) (validated)."""
    return GraphMap(f_graph(m, n - 1), f_graph(m, n), lambda s: f_face(j, eps, s))


def with_first_weight(seq: FSequence, t: int) -> FSequence:
    return reduce(FSequence(seq.m, seq.classes, (t,) + seq.weights[1:], seq.signs))


def f_cone_map(m: int, n: int) -> GraphMap:
    """The map (boundary of F(m, n)) box I_m -> F(m, n), (s, t) -> s with w(1) set to t."""
    if n < 1:
        raise ValueError("n must be >= 1")
    F = f_graph(m, n)
    bd = F.induced(f_boundary(m, n))
    src = box_product(bd, interval(m))
    return GraphMap(src, F, lambda x: with_first_weight(x[0], x[1]))


def apex(m: int, n: int) -> FSequence:
    """The vertex (m; 1+, ..., n+)."""
    return FSequence(m, (tuple(range(1, n + 1)),), (m,), (PLUS,) * n)
