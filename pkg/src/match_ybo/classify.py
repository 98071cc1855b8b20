"""Reading matching data back off a solution.

Every invertible charge-conserving solution determines edge labels: each
2x2 block is a zero block (b = c = 0), a slash block (a = d = 0), or signed
(+ when d = 0, - when a = 0, always with b, c both nonzero).  Signed labels
refine by comparing the two vertex scalars: f (equal) or a (different).
Slash edges cut the letters into nations, zero edges cut a nation into
counties, signs order the counties, and f/a splits them into two parts.
`classify` assembles all of this, together with the numerical parameters,
into a germ; it is a section of the construction map up to X-equivalence.

The coarse labels {0, /, +, -} on a triangle carry an action of flipping the
operator and permuting the three letters; the action is not hand-coded but
read off representative blocks.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations, product

from .diagrams import (
    Configuration,
    County,
    Nation,
    Permutation,
    configuration_perm,
    orbit,
)
from .errors import InadmissibleEdgeError, NotASolutionError
from .matchcat import act_flip, act_perm, block, edge_pairs, invertible, matrix
from .recipe import Germ, ParamPoint
from .scalars import rational_sqrt
from .ybe import constraint_residuals

__all__ = [
    "EdgeLabelH",
    "EdgeLabelI",
    "admissible",
    "classify",
    "coarsen",
    "edge_labels",
    "g3_orbits",
    "label_edge",
    "no_minus_rep",
    "orbit",
    "orbit_of_triple",
    "recover_colours",
    "recover_counties",
    "recover_nations",
    "recover_order",
    "six_rule_check",
    "triangle_flip",
    "triangle_perm",
]


class EdgeLabelH(str, Enum):
    """Coarse edge labels."""

    ZERO = "0"
    SLASH = "/"
    PLUS = "+"
    MINUS = "-"


class EdgeLabelI(str, Enum):
    """Fine edge labels: signs split by vertex-scalar comparison."""

    ZERO = "0"
    SLASH = "/"
    FPLUS = "f+"
    APLUS = "a+"
    FMINUS = "f-"
    AMINUS = "a-"


_COARSE = {
    EdgeLabelI.ZERO: EdgeLabelH.ZERO,
    EdgeLabelI.SLASH: EdgeLabelH.SLASH,
    EdgeLabelI.FPLUS: EdgeLabelH.PLUS,
    EdgeLabelI.APLUS: EdgeLabelH.PLUS,
    EdgeLabelI.FMINUS: EdgeLabelH.MINUS,
    EdgeLabelI.AMINUS: EdgeLabelH.MINUS,
}


def coarsen(label) -> EdgeLabelH:
    if isinstance(label, EdgeLabelH):
        return label
    if isinstance(label, EdgeLabelI):
        return _COARSE[label]
    try:
        return EdgeLabelH(label)
    except ValueError:
        return _COARSE[EdgeLabelI(label)]


def label_edge(m, i, j) -> EdgeLabelI:
    """Fine label of edge (i, j), i < j; InadmissibleEdgeError otherwise."""
    if not 1 <= i < j <= m.n:
        raise ValueError(f"need 1 <= i < j <= {m.n}, got {(i, j)}")
    blk = m.edges[(i, j)]
    ai, aj = m.vertices[i - 1], m.vertices[j - 1]
    if blk.b == 0 and blk.c == 0:
        if blk.a != 0 and blk.a == blk.d == ai == aj:
            return EdgeLabelI.ZERO
        raise InadmissibleEdgeError((i, j))
    if blk.b == 0 or blk.c == 0:
        raise InadmissibleEdgeError((i, j))
    if blk.a == 0 and blk.d == 0:
        return EdgeLabelI.SLASH
    if blk.d == 0:
        return EdgeLabelI.FPLUS if ai == aj else EdgeLabelI.APLUS
    if blk.a == 0:
        return EdgeLabelI.FMINUS if ai == aj else EdgeLabelI.AMINUS
    raise InadmissibleEdgeError((i, j))


def edge_labels(m):
    return {pair: label_edge(m, *pair) for pair in edge_pairs(m.n)}


def admissible(m) -> bool:
    """Invertible, every edge labellable, and all constraints vanish."""
    if not invertible(m):
        return False
    try:
        edge_labels(m)
    except InadmissibleEdgeError:
        return False
    return constraint_residuals(m).zero


# Triangles of coarse labels, listed (h12, h13, h23).

H_LABELS = (EdgeLabelH.ZERO, EdgeLabelH.SLASH, EdgeLabelH.PLUS, EdgeLabelH.MINUS)

_H_BLOCK = {
    EdgeLabelH.ZERO: (1, 0, 0, 1),
    EdgeLabelH.SLASH: (0, 1, 1, 0),
    EdgeLabelH.PLUS: (1, 1, 1, 0),
    EdgeLabelH.MINUS: (0, 1, 1, 1),
}

_TRIANGLE_PAIRS = ((1, 2), (1, 3), (2, 3))


def _h_of_block(blk):
    if blk.b == 0 and blk.c == 0:
        return EdgeLabelH.ZERO
    if blk.a == 0 and blk.d == 0:
        return EdgeLabelH.SLASH
    if blk.d == 0:
        return EdgeLabelH.PLUS
    return EdgeLabelH.MINUS


def _triangle_matrix(triple):
    es = {
        pair: block(*_H_BLOCK[EdgeLabelH(t)])
        for pair, t in zip(_TRIANGLE_PAIRS, triple)
    }
    return matrix([1, 1, 1], es)


def triangle_perm(triple, perm):
    img = act_perm(_triangle_matrix(triple), perm)
    return tuple(_h_of_block(img.edges[p]) for p in _TRIANGLE_PAIRS)


def triangle_flip(triple):
    img = act_flip(_triangle_matrix(triple))
    return tuple(_h_of_block(img.edges[p]) for p in _TRIANGLE_PAIRS)


_H_ORDER = {EdgeLabelH.ZERO: 0, EdgeLabelH.SLASH: 1, EdgeLabelH.PLUS: 2, EdgeLabelH.MINUS: 3}


def _triple_key(triple):
    return tuple(_H_ORDER[t] for t in triple)


def orbit_of_triple(triple):
    """Closure of one coarse triangle under letter permutations and flip."""
    start = tuple(EdgeLabelH(t) for t in triple)
    seen = {start}
    frontier = [start]
    perms = list(Permutation.all(3))
    while frontier:
        t = frontier.pop()
        images = [triangle_perm(t, w) for w in perms]
        images.append(triangle_flip(t))
        for im in images:
            if im not in seen:
                seen.add(im)
                frontier.append(im)
    return frozenset(seen)


def g3_orbits():
    """All orbits of coarse triangles, sorted by least member."""
    seen = set()
    orbits = []
    for triple in product(H_LABELS, repeat=3):
        if triple in seen:
            continue
        orb = orbit_of_triple(triple)
        seen |= orb
        orbits.append(orb)
    return tuple(sorted(orbits, key=lambda o: min(_triple_key(t) for t in o)))


_FORCED = {
    ("+", "+"): "+",
    ("-", "-"): "-",
    ("0", "+"): "+",
    ("+", "0"): "+",
    ("0", "-"): "-",
    ("-", "0"): "-",
    ("0", "0"): "0",
}


def six_rule_check(triple) -> bool:
    """Whether a sign triangle (h12, h13, h23) closes consistently.

    The chain h12, h23 forces the closing label h13 whenever the two agree in
    sign or one of them is zero; slash labels are outside the rule's domain.
    """
    h12, h13, h23 = (coarsen(t) for t in triple)
    if EdgeLabelH.SLASH in (h12, h13, h23):
        raise ValueError("six-rule applies to sign triangles only")
    forced = _FORCED.get((h12.value, h23.value))
    return forced is None or h13.value == forced


# Recovery of the combinatorial data.


def _components(vertices, adjacent):
    """Connected components (sorted tuples, sorted) of a symmetric relation."""
    vertices = sorted(vertices)
    seen = set()
    comps = []
    for s in vertices:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for v in vertices:
                if v not in seen and adjacent(min(u, v), max(u, v)):
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(tuple(sorted(comp)))
    return sorted(comps)


def recover_nations(m, labels=None):
    """Partition the letters by non-slash connectivity; validates that slash
    edges are exactly the cross-nation ones."""
    labels = edge_labels(m) if labels is None else labels
    comps = _components(
        range(1, m.n + 1),
        lambda i, j: labels[(i, j)] is not EdgeLabelI.SLASH,
    )
    for comp in comps:
        for i, j in combinations(comp, 2):
            if labels[(i, j)] is EdgeLabelI.SLASH:
                raise NotASolutionError(f"slash edge ({i},{j}) inside a nation")
    return tuple(comps)


def recover_counties(m, nation_vertices, labels=None):
    """Split one nation's letters by zero-edge connectivity."""
    labels = edge_labels(m) if labels is None else labels
    comps = _components(
        nation_vertices,
        lambda i, j: labels[(i, j)] is EdgeLabelI.ZERO,
    )
    for comp in comps:
        for i, j in combinations(comp, 2):
            if labels[(i, j)] is not EdgeLabelI.ZERO:
                raise NotASolutionError(f"non-zero edge ({i},{j}) inside a county")
    return tuple(comps)


def recover_order(m, counties, labels=None):
    """Order counties by the signs; every cross-county edge must agree."""
    if len(counties) <= 1:
        return tuple(counties)
    labels = edge_labels(m) if labels is None else labels
    before = {}
    for a, b in combinations(range(len(counties)), 2):
        verdicts = set()
        for u in counties[a]:
            for v in counties[b]:
                i, j = (u, v) if u < v else (v, u)
                h = coarsen(labels[(i, j)])
                if h not in (EdgeLabelH.PLUS, EdgeLabelH.MINUS):
                    raise NotASolutionError(f"unsigned edge ({i},{j}) between counties")
                verdicts.add((h is EdgeLabelH.PLUS) == (i in counties[a]))
        if len(verdicts) != 1:
            raise NotASolutionError("inconsistent county order")
        before[(a, b)] = verdicts.pop()
    wins = [0] * len(counties)
    for (a, b), a_first in before.items():
        wins[a if a_first else b] += 1
    if sorted(wins) != list(range(len(counties))):
        raise NotASolutionError("county order is not total")
    order = sorted(range(len(counties)), key=lambda k: -wins[k])
    return tuple(counties[k] for k in order)


def recover_colours(m, ordered_counties, labels=None):
    """Tag ordered counties with parts; the first county is tagged first."""
    k = len(ordered_counties)
    if k == 0:
        return ()
    labels = edge_labels(m) if labels is None else labels

    def same_part(a, b):
        verdicts = set()
        for u in ordered_counties[a]:
            for v in ordered_counties[b]:
                i, j = (u, v) if u < v else (v, u)
                lab = labels[(i, j)]
                if lab in (EdgeLabelI.FPLUS, EdgeLabelI.FMINUS):
                    verdicts.add(True)
                elif lab in (EdgeLabelI.APLUS, EdgeLabelI.AMINUS):
                    verdicts.add(False)
                else:
                    raise NotASolutionError(f"unsigned edge ({i},{j}) between counties")
        if len(verdicts) != 1:
            raise NotASolutionError("inconsistent part comparison")
        return verdicts.pop()

    tags = ["first"] + [None] * (k - 1)
    for q in range(1, k):
        tags[q] = "first" if same_part(0, q) else "second"
    for p, q in combinations(range(k), 2):
        if (tags[p] == tags[q]) != same_part(p, q):
            raise NotASolutionError("county parts are not two-colourable")
    return tuple(tags)


def classify(m) -> Germ:
    """Full inverse: matching data and parameters of a solution.

    Raises NotASolutionError when the matrix is not an invertible solution or
    any recovery step finds an inconsistency.
    """
    if not invertible(m):
        raise NotASolutionError("matrix is not invertible")
    try:
        labels = edge_labels(m)
    except InadmissibleEdgeError as exc:
        raise NotASolutionError(f"not labellable: {exc}") from exc
    rep = constraint_residuals(m)
    if not rep.zero:
        raise NotASolutionError(f"constraints fail, first witness {rep.witnesses[0]}")

    nations = []
    alpha = {}
    beta = {}
    for idx, nat_v in enumerate(recover_nations(m, labels), start=1):
        counties = recover_counties(m, nat_v, labels)
        ordered = recover_order(m, counties, labels)
        tags = recover_colours(m, ordered, labels)
        nations.append(Nation(tuple(County(c, t) for c, t in zip(ordered, tags))))
        a = m.vertices[ordered[0][0] - 1]
        alpha[idx] = a
        if len(ordered) >= 2:
            if "second" in tags:
                k = tags.index("second")
                b = m.vertices[ordered[k][0] - 1]
            else:
                u, v = ordered[0][0], ordered[1][0]
                blk = m.edges[(min(u, v), max(u, v))]
                b = blk.a + blk.d - a
            if b == 0 or a + b == 0:
                raise NotASolutionError(f"degenerate parameters in nation {idx}")
            beta[idx] = b
            for u, v in combinations(nat_v, 2):
                if coarsen(labels[(u, v)]) in (EdgeLabelH.PLUS, EdgeLabelH.MINUS):
                    blk = m.edges[(u, v)]
                    if blk.a + blk.d != a + b or blk.b * blk.c != -a * b:
                        raise NotASolutionError(
                            f"edge ({u},{v}) inconsistent with nation parameters"
                        )

    config = Configuration(m.n, tuple(nations))
    mu = {}
    mu_sq = {}
    vert_nation = {v: i for i, nat in enumerate(nations, start=1) for v in nat.vertices}
    products = {}
    for u, v in edge_pairs(m.n):
        iu, iv = vert_nation[u], vert_nation[v]
        if iu == iv:
            continue
        key = (min(iu, iv), max(iu, iv))
        blk = m.edges[(u, v)]
        prod = blk.b * blk.c
        if key in products:
            if products[key] != prod:
                raise NotASolutionError(f"slash products differ between nations {key}")
        else:
            products[key] = prod
    for key, prod in products.items():
        root = rational_sqrt(prod)
        if root is not None and root > 0:
            mu[key] = root
        else:
            mu_sq[key] = prod
    return Germ(config, ParamPoint(mu=mu, alpha=alpha, beta=beta, mu_sq=mu_sq))


def no_minus_rep(config):
    """Relabel within nations so every county is a consecutive run in county
    order; the germ operator of the result has no minus edges.  Returns the
    relabelled configuration and the permutation used."""
    images = [0] * config.n
    for nat in config.nations:
        vs = sorted(nat.vertices)
        pos = 0
        for county in nat.counties:
            for v in sorted(county.vertices):
                images[v - 1] = vs[pos]
                pos += 1
    perm = Permutation(tuple(images))
    return configuration_perm(config, perm), perm
