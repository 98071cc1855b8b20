"""Charge-conserving operators over exact rationals.

A level-(2,2) charge-conserving operator on an n-letter alphabet is stored in
alpha form: one scalar per vertex i (the (ii,ii) entry) and one 2x2 block per
edge i<j acting on the span of (ij),(ji):

    A(i,j) = [[a, b], [c, d]]   with entries (ij,ij), (ij,ji), (ji,ij), (ji,ji).

All scalars are Fractions. Listing order for edges is 12, 13, 23, 14, 24, 34,
... (new largest letter last).

For composition at other levels, operators are kept sparse, keyed by
(row word, column word) pairs; charge conservation means every column word is
a rearrangement of its row word. Tensor products follow the convention
(A (x) B)[iI, jJ] = A[i, j] * B[I, J], i.e. the first factor owns the leading
letter positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import MalformedInputError, SingularMatrixError
from .scalars import format_scalar, parse_scalar


class EdgeBlock(NamedTuple):
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction


def block(a, b, c, d) -> EdgeBlock:
    return EdgeBlock(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


def edge_pairs(n):
    """Edges (i,j), i<j, in listing order 12, 13, 23, 14, 24, 34, ..."""
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


@dataclass(frozen=True)
class MatchMatrix2:
    """Level-(2,2) charge-conserving operator in alpha form.

    vertices[i-1] is the scalar at vertex i; edges maps each pair (i,j) with
    i<j to its EdgeBlock. Treat instances as immutable.
    """

    n: int
    vertices: tuple
    edges: dict = field(compare=True)

    def __post_init__(self):
        if len(self.vertices) != self.n:
            raise MalformedInputError("vertex count mismatch")
        if set(self.edges) != set(edge_pairs(self.n)):
            raise MalformedInputError("edge set must be exactly {(i,j): i<j}")

    def vertex(self, i) -> Fraction:
        return self.vertices[i - 1]

    def edge(self, i, j) -> EdgeBlock:
        """Block for the unordered pair {i,j} read in the order (i,j)."""
        if i < j:
            return self.edges[(i, j)]
        return _antitranspose(self.edges[(j, i)])


def matrix(vertices, edges) -> MatchMatrix2:
    """Build a MatchMatrix2, coercing entries to Fraction."""
    vs = tuple(Fraction(v) for v in vertices)
    es = {pair: block(*blk) for pair, blk in edges.items()}
    return MatchMatrix2(len(vs), vs, es)


def _antitranspose(blk) -> EdgeBlock:
    """Reflection across the antidiagonal: [[a,b],[c,d]] -> [[d,c],[b,a]]."""
    return EdgeBlock(blk.d, blk.c, blk.b, blk.a)


def restrict(m, letters) -> MatchMatrix2:
    """Restriction to a sub-alphabet, relabelled order-preservingly to 1..k."""
    letters = tuple(letters)
    if not letters or list(letters) != sorted(set(letters)):
        raise MalformedInputError(f"letters must be strictly increasing: {letters}")
    if letters[-1] > m.n:
        raise MalformedInputError(f"letter out of range: {letters[-1]}")
    vs = tuple(m.vertex(v) for v in letters)
    es = {
        (i + 1, j + 1): m.edges[(letters[i], letters[j])]
        for i in range(len(letters))
        for j in range(i + 1, len(letters))
    }
    return MatchMatrix2(len(letters), vs, es)


def act_perm(m, perm) -> MatchMatrix2:
    """Conjugation by the permutation operator e_i (x) e_j -> e_w(i) (x) e_w(j).

    Vertex i receives the old scalar at w^-1(i); the block at (i,j) comes from
    the old pair (w^-1(i), w^-1(j)), antitransposed when that pair's order is
    reversed.
    """
    inv = perm.inverse()
    vs = tuple(m.vertex(inv(i)) for i in range(1, m.n + 1))
    es = {(i, j): m.edge(inv(i), inv(j)) for i, j in edge_pairs(m.n)}
    return MatchMatrix2(m.n, vs, es)


def act_flip(m) -> MatchMatrix2:
    """Conjugation by the tensor-factor swap: every block antitransposes."""
    es = {pair: _antitranspose(blk) for pair, blk in m.edges.items()}
    return MatchMatrix2(m.n, m.vertices, es)


def x_normalize(m) -> MatchMatrix2:
    """Lower-1 gauge representative of m's rescaling class.

    Per edge, b and c may be rescaled keeping b*c fixed: c != 0 becomes
    (a, b*c, 1, d); c = 0 with b != 0 becomes (a, 1, 0, d); zero stays put.
    """
    es = {}
    for pair, blk in m.edges.items():
        if blk.c != 0:
            es[pair] = EdgeBlock(blk.a, blk.b * blk.c, Fraction(1), blk.d)
        elif blk.b != 0:
            es[pair] = EdgeBlock(blk.a, Fraction(1), Fraction(0), blk.d)
        else:
            es[pair] = blk
    return MatchMatrix2(m.n, m.vertices, es)


def x_equivalent(m1, m2) -> bool:
    """True iff m1, m2 differ only by per-edge (b,c) -> (xb, c/x) rescalings.

    Criterion: equal vertex scalars; per edge equal a and d, equal products
    b*c, and matching zero patterns of b and of c.
    """
    if m1.n != m2.n or m1.vertices != m2.vertices:
        return False
    for pair in edge_pairs(m1.n):
        p, q = m1.edges[pair], m2.edges[pair]
        if p.a != q.a or p.d != q.d or p.b * p.c != q.b * q.c:
            return False
        if (p.b == 0) != (q.b == 0) or (p.c == 0) != (q.c == 0):
            return False
    return True


def invertible(m) -> bool:
    return all(v != 0 for v in m.vertices) and all(
        blk.a * blk.d - blk.b * blk.c != 0 for blk in m.edges.values()
    )


def inverse(m) -> MatchMatrix2:
    """Blockwise inverse; raises SingularMatrixError naming the bad part."""
    vs = []
    for i, v in enumerate(m.vertices, start=1):
        if v == 0:
            raise SingularMatrixError(f"vertex {i}")
        vs.append(1 / v)
    es = {}
    for pair, blk in m.edges.items():
        det = blk.a * blk.d - blk.b * blk.c
        if det == 0:
            raise SingularMatrixError(f"block {pair}")
        es[pair] = EdgeBlock(blk.d / det, -blk.b / det, -blk.c / det, blk.a / det)
    return MatchMatrix2(m.n, tuple(vs), es)


@dataclass(frozen=True)
class SparseOp:
    """Sparse operator at a fixed level: entries keyed by (row word, col word)."""

    n: int
    level: int
    entries: dict = field(compare=True)

    def __post_init__(self):
        for row, col in self.entries:
            if len(row) != self.level or len(col) != self.level:
                raise MalformedInputError(f"word length mismatch at {(row, col)}")

    @property
    def is_zero(self):
        return all(v == 0 for v in self.entries.values())

    def nonzero_items(self):
        return sorted(
            ((r, c, v) for (r, c), v in self.entries.items() if v != 0),
            key=lambda t: (t[0], t[1]),
        )


def sparse(n, level, entries) -> SparseOp:
    cleaned = {k: Fraction(v) for k, v in entries.items() if v != 0}
    return SparseOp(n, level, cleaned)


def identity_op(n, level=1) -> SparseOp:
    words = itertools.product(range(1, n + 1), repeat=level)
    return SparseOp(n, level, {(w, w): Fraction(1) for w in words})


def kron(s, t) -> SparseOp:
    """Tensor product; the first factor owns the leading letter positions."""
    if s.n != t.n:
        raise MalformedInputError("alphabet mismatch")
    entries = {}
    for (r1, c1), v1 in s.entries.items():
        for (r2, c2), v2 in t.entries.items():
            v = v1 * v2
            if v != 0:
                entries[(r1 + r2, c1 + c2)] = v
    return SparseOp(s.n, s.level + t.level, entries)


def compose(s, t) -> SparseOp:
    """Matrix product s @ t."""
    if s.n != t.n or s.level != t.level:
        raise MalformedInputError("shape mismatch")
    by_row = {}
    for (r, c), v in t.entries.items():
        by_row.setdefault(r, []).append((c, v))
    entries = {}
    for (r, mid), v1 in s.entries.items():
        for c, v2 in by_row.get(mid, ()):
            key = (r, c)
            entries[key] = entries.get(key, Fraction(0)) + v1 * v2
    return SparseOp(s.n, s.level, {k: v for k, v in entries.items() if v != 0})


def sparse_sub(s, t) -> SparseOp:
    if s.n != t.n or s.level != t.level:
        raise MalformedInputError("shape mismatch")
    entries = dict(s.entries)
    for key, v in t.entries.items():
        entries[key] = entries.get(key, Fraction(0)) - v
    return SparseOp(s.n, s.level, {k: v for k, v in entries.items() if v != 0})


def charge_conserving(op) -> bool:
    """True iff every column word is a rearrangement of its row word."""
    return all(sorted(r) == sorted(c) for (r, c), v in op.entries.items() if v != 0)


def to_sparse(m) -> SparseOp:
    """Level-2 sparse form of a MatchMatrix2."""
    entries = {}
    for i, v in enumerate(m.vertices, start=1):
        if v != 0:
            entries[((i, i), (i, i))] = v
    for (i, j), blk in m.edges.items():
        for key, v in (
            (((i, j), (i, j)), blk.a),
            (((i, j), (j, i)), blk.b),
            (((j, i), (i, j)), blk.c),
            (((j, i), (j, i)), blk.d),
        ):
            if v != 0:
                entries[key] = v
    return SparseOp(m.n, 2, entries)


def from_sparse(op) -> MatchMatrix2:
    """Inverse of to_sparse; rejects entries outside the alpha-form support."""
    if op.level != 2:
        raise MalformedInputError("need a level-2 operator")
    n = op.n
    vs = [Fraction(0)] * n
    es = {pair: [Fraction(0)] * 4 for pair in edge_pairs(n)}
    slot = {"a": 0, "b": 1, "c": 2, "d": 3}
    for (row, col), v in op.entries.items():
        if v == 0:
            continue
        (r1, r2), (c1, c2) = row, col
        if r1 == r2 == c1 == c2:
            vs[r1 - 1] = v
        elif r1 != r2 and {r1, r2} == {c1, c2}:
            i, j = min(r1, r2), max(r1, r2)
            if (r1, r2) == (i, j):
                name = "a" if (c1, c2) == (i, j) else "b"
            else:
                name = "c" if (c1, c2) == (i, j) else "d"
            es[(i, j)][slot[name]] = v
        else:
            raise MalformedInputError(f"entry off the charge-conserving support: {(row, col)}")
    return MatchMatrix2(n, tuple(vs), {p: EdgeBlock(*vals) for p, vals in es.items()})


def perm_op(perm, level) -> SparseOp:
    """Sparse operator of a letter permutation at the given level."""
    n = perm.n
    entries = {}
    for w in itertools.product(range(1, n + 1), repeat=level):
        entries[(tuple(perm(i) for i in w), w)] = Fraction(1)
    return SparseOp(n, level, entries)


def flip_op(n) -> SparseOp:
    """The level-2 tensor-factor swap e_i (x) e_j -> e_j (x) e_i."""
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            entries[((j, i), (i, j))] = Fraction(1)
    return SparseOp(n, 2, entries)


def matrix_to_json(m):
    return {
        "n": m.n,
        "vertices": [format_scalar(v) for v in m.vertices],
        "edges": [
            {
                "i": i,
                "j": j,
                "a": format_scalar(m.edges[(i, j)].a),
                "b": format_scalar(m.edges[(i, j)].b),
                "c": format_scalar(m.edges[(i, j)].c),
                "d": format_scalar(m.edges[(i, j)].d),
            }
            for i, j in edge_pairs(m.n)
        ],
    }


def matrix_from_json(data) -> MatchMatrix2:
    try:
        n = int(data["n"])
        vs = tuple(parse_scalar(v) for v in data["vertices"])
        es = {}
        for e in data["edges"]:
            i, j = int(e["i"]), int(e["j"])
            if not 1 <= i < j <= n:
                raise MalformedInputError(f"bad edge pair ({i},{j})")
            if (i, j) in es:
                raise MalformedInputError(f"duplicate edge ({i},{j})")
            es[(i, j)] = EdgeBlock(*(parse_scalar(e[k]) for k in "abcd"))
    except MalformedInputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad matrix JSON: {exc}") from exc
    return MatchMatrix2(n, vs, es)
