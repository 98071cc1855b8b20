from fractions import Fraction
from itertools import product

import pytest

from match_ybo.classify import (
    EdgeLabelH,
    EdgeLabelI,
    admissible,
    classify,
    coarsen,
    edge_labels,
    g3_orbits,
    label_edge,
    no_minus_rep,
    orbit_of_triple,
    recover_counties,
    recover_nations,
    recover_order,
    six_rule_check,
    triangle_flip,
    triangle_perm,
)
from match_ybo.diagrams import (
    Permutation,
    configuration_perm,
    enumerate_transversal,
)
from match_ybo.errors import InadmissibleEdgeError, NotASolutionError
from match_ybo.matchcat import act_perm, matrix, x_equivalent
from match_ybo.recipe import Germ, generic_point, permute_germ, rec


def germ_of(config, seed=0):
    return Germ(config, generic_point(config, seed=seed))


def test_coarsen():
    assert coarsen(EdgeLabelI.APLUS) is EdgeLabelH.PLUS
    assert coarsen(EdgeLabelH.SLASH) is EdgeLabelH.SLASH
    assert coarsen("f-") is EdgeLabelH.MINUS
    assert coarsen("+") is EdgeLabelH.PLUS
    with pytest.raises(ValueError):
        coarsen("x")


def test_label_edge_cases():
    m = matrix(
        (2, 2, 5, 7),
        {
            (1, 2): (2, 0, 0, 2),    # zero
            (1, 3): (7, -10, 1, 0),  # sign, unequal scalars
            (1, 4): (0, 3, 3, 0),    # slash
            (2, 3): (7, -10, 1, 0),
            (2, 4): (0, 3, 3, 0),
            (3, 4): (0, 3, 3, 0),
        },
    )
    assert label_edge(m, 1, 2) is EdgeLabelI.ZERO
    assert label_edge(m, 1, 3) is EdgeLabelI.APLUS
    assert label_edge(m, 1, 4) is EdgeLabelI.SLASH
    with pytest.raises(ValueError):
        label_edge(m, 2, 1)


def test_label_edge_rejects():
    # b = c = 0 needs a = d = both vertex scalars, all nonzero
    m = matrix((1, 2), {(1, 2): (1, 0, 0, 1)})
    with pytest.raises(InadmissibleEdgeError) as info:
        label_edge(m, 1, 2)
    assert info.value.pair == (1, 2)
    m = matrix((1, 1), {(1, 2): (1, 2, 0, 0)})  # only one of b, c zero
    with pytest.raises(InadmissibleEdgeError):
        label_edge(m, 1, 2)
    m = matrix((1, 1), {(1, 2): (2, 1, 1, 3)})  # both a, d nonzero with b, c
    with pytest.raises(InadmissibleEdgeError):
        label_edge(m, 1, 2)


def test_fine_labels_of_germ_operator():
    found = set()
    for c in enumerate_transversal(3):
        m = rec(germ_of(c))
        found.update(edge_labels(m).values())
    # unlike parts give a-signs, same-part county pairs give f-signs
    assert EdgeLabelI.APLUS in found
    assert EdgeLabelI.FPLUS in found
    assert EdgeLabelI.ZERO in found
    assert EdgeLabelI.SLASH in found


def test_admissible():
    for c in enumerate_transversal(3):
        assert admissible(rec(germ_of(c)))
    assert not admissible(matrix((1, 1), {(1, 2): (1, 1, 1, 1)}))
    assert not admissible(matrix((1, 2), {(1, 2): (1, 0, 0, 1)}))


def test_triangle_actions():
    t = (EdgeLabelH.ZERO, EdgeLabelH.PLUS, EdgeLabelH.PLUS)
    assert triangle_flip(triangle_flip(t)) == t
    assert triangle_flip((EdgeLabelH.PLUS,) * 3) == (EdgeLabelH.MINUS,) * 3
    ident = Permutation((1, 2, 3))
    assert triangle_perm(t, ident) == t
    swap12 = Permutation((2, 1, 3))
    # swapping letters 1,2 exchanges the 13 and 23 slots
    a = triangle_perm((EdgeLabelH.ZERO, EdgeLabelH.PLUS, EdgeLabelH.MINUS), swap12)
    assert a[1:] == (EdgeLabelH.MINUS, EdgeLabelH.PLUS)


def test_orbit_of_triple_closure():
    orb = orbit_of_triple(("0", "+", "+"))
    for t in orb:
        assert triangle_flip(t) in orb
        for w in Permutation.all(3):
            assert triangle_perm(t, w) in orb


def test_g3_orbits_partition():
    orbits = g3_orbits()
    assert len(orbits) == 13
    assert sorted(len(o) for o in orbits) == [1, 1, 2, 3, 3, 6, 6, 6, 6, 6, 6, 6, 12]
    assert sum(len(o) for o in orbits) == 64
    union = set().union(*orbits)
    assert len(union) == 64


def test_six_rule():
    assert six_rule_check(("+", "+", "+"))
    assert six_rule_check(("+", "-", "-"))
    assert not six_rule_check(("+", "-", "+"))
    assert not six_rule_check(("0", "-", "+"))
    assert not six_rule_check(("0", "0", "-"))
    assert six_rule_check(("-", "+", "+"))
    with pytest.raises(ValueError):
        six_rule_check(("/", "0", "0"))


def test_six_rule_matches_admissibility():
    # a sign triangle passes the rule iff some labelled solution realizes it
    realized = set()
    for c in enumerate_transversal(3):
        m = rec(germ_of(c))
        labels = edge_labels(m)
        t = tuple(coarsen(labels[p]).value for p in ((1, 2), (1, 3), (2, 3)))
        if "/" not in t:
            realized.add(t)
    for t in product("0+-", repeat=3):
        if t in realized:
            assert six_rule_check(t)


def test_recover_nations_and_counties():
    config = enumerate_transversal(4)[10]
    m = rec(germ_of(config))
    nations = recover_nations(m)
    assert tuple(sorted(v for nat in nations for v in nat)) == (1, 2, 3, 4)
    for nat, expected in zip(nations, config.nations):
        assert tuple(sorted(nat)) == tuple(sorted(expected.vertices))


def test_recover_order_detects_inconsistency():
    # hand-built labels: county {1} beats {2} on one edge, loses on the other
    m = matrix(
        (1, 1, 1),
        {
            (1, 2): (1, 0, 0, 1),
            (1, 3): (2, -1, 1, 0),
            (2, 3): (0, -1, 1, 2),
        },
    )
    counties = recover_counties(m, (1, 2, 3))
    assert counties == ((1, 2), (3,))
    with pytest.raises(NotASolutionError):
        recover_order(m, counties)


def test_classify_round_trip_exact():
    for n in range(1, 5):
        for config in enumerate_transversal(n):
            g = germ_of(config)
            assert classify(rec(g)) == g


def test_classify_commutes_with_relabelling():
    for config in enumerate_transversal(3):
        g = germ_of(config)
        m = rec(g)
        for w in Permutation.all(3):
            got = classify(act_perm(m, w))
            assert got.config == configuration_perm(config, w)
            assert x_equivalent(rec(got), act_perm(m, w))


def test_classify_recovers_mu_sq():
    m = matrix((1, 3), {(1, 2): (0, 2, 1, 0)})
    g = classify(m)
    assert g.params.mu == {}
    assert g.params.mu_sq == {(1, 2): Fraction(2)}
    assert x_equivalent(rec(g), m)


def test_classify_rejects_non_solutions():
    with pytest.raises(NotASolutionError):
        classify(matrix((1, 0), {(1, 2): (0, 1, 1, 0)}))  # singular vertex
    with pytest.raises(NotASolutionError):
        classify(matrix((1, 1), {(1, 2): (1, 1, 1, 1)}))  # unlabellable
    # labellable but constraints fail: slash products differ across an edge pair
    m = matrix(
        (1, 1, 2),
        {
            (1, 2): (1, 0, 0, 1),
            (1, 3): (0, 2, 2, 0),
            (2, 3): (0, 3, 3, 0),
        },
    )
    with pytest.raises(NotASolutionError):
        classify(m)


def test_no_minus_rep():
    for n in range(1, 5):
        for config in enumerate_transversal(n):
            for w in Permutation.all(n):
                moved = configuration_perm(config, w)
                fixed, perm = no_minus_rep(moved)
                assert configuration_perm(moved, perm) == fixed
                g = permute_germ(Germ(moved, generic_point(moved, seed=0)), perm)
                labels = edge_labels(rec(g)).values()
                assert EdgeLabelI.FMINUS not in labels
                assert EdgeLabelI.AMINUS not in labels
