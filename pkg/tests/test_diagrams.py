import itertools

import pytest

from match_ybo.diagrams import (
    Configuration,
    County,
    Nation,
    Permutation,
    Row,
    Shape,
    book_order,
    canonical_structure_key,
    canonicalize,
    configuration_from_json,
    configuration_perm,
    configuration_to_json,
    enumerate_configurations,
    enumerate_multisets,
    enumerate_transversal,
    euler_count,
    flip_configuration,
    multiset_of_configuration,
    orbit,
    shape_from_json,
    shape_key,
    shape_of_word,
    shape_to_json,
    shapes_with_boxes,
    word_key,
    word_of_shape,
)
from match_ybo.errors import MalformedInputError, OrbitTooLargeError

TRANSVERSAL_COUNTS = {1: 1, 2: 4, 3: 13, 4: 46, 5: 154}
CONFIG_COUNTS = {2: 6, 3: 53, 4: 619}


def test_shape_word_bijection():
    s = shape_of_word((1, 2, 1, 3, 1, 1))
    assert s.rows == (Row(2, False), Row(2, False), Row(3, True))
    assert word_of_shape(s) == (1, 2, 1, 3, 1, 1)


def test_all_words_round_trip():
    for boxes in range(1, 7):
        for s in shapes_with_boxes(boxes):
            assert shape_of_word(word_of_shape(s)) == s


def test_word_order():
    # longer words come first, ties break lexicographically
    assert word_key((1, 1)) < word_key((2,))
    assert word_key((1, 2)) < word_key((1, 3))
    shapes = shapes_with_boxes(3)
    assert shapes[0] == Shape((Row(3, False),))
    assert shapes[-1] == Shape((Row(1, False), Row(1, True), Row(1, True)))


def test_shapes_with_boxes_counts():
    # words of length n-1 over three letters
    for n in range(1, 7):
        assert len(shapes_with_boxes(n)) == 3 ** (n - 1)


def test_shape_rejects_shaded_first_row():
    with pytest.raises(MalformedInputError):
        Shape((Row(1, True),))


def test_euler_count_matches_enumeration():
    for n in range(1, 7):
        assert euler_count(n) == len(enumerate_multisets(n))
    for n, expected in TRANSVERSAL_COUNTS.items():
        assert euler_count(n) == expected


def test_transversal_counts():
    for n, expected in TRANSVERSAL_COUNTS.items():
        assert len(enumerate_transversal(n)) == expected


def test_transversal_configs_are_canonical_fixed_points():
    for n in range(1, 5):
        for c in enumerate_transversal(n):
            canon, w = canonicalize(c)
            assert canon == c
            assert w == Permutation.identity(n)


def test_transversal_multisets_are_distinct_and_recovered():
    for n in range(1, 6):
        multisets = enumerate_multisets(n)
        configs = enumerate_transversal(n)
        assert [multiset_of_configuration(c) for c in configs] == multisets


def test_enumerate_configurations_counts():
    for n, expected in CONFIG_COUNTS.items():
        assert len(enumerate_configurations(n)) == expected


def test_configuration_validation():
    with pytest.raises(MalformedInputError):
        Configuration(2, (Nation((County((1,), "first"),)),))  # misses vertex 2
    with pytest.raises(MalformedInputError):
        Configuration(
            2, (Nation((County((1,), "first"), County((2,), "third"))),)
        )
    with pytest.raises(MalformedInputError):
        Configuration(2, (Nation((County((2, 1), "first"),)),))


def test_permutation_composition():
    w = Permutation((2, 3, 1))
    v = Permutation((2, 1, 3))
    assert (w * v).images == tuple(w(v(i)) for i in (1, 2, 3))
    assert (w * w.inverse()).images == (1, 2, 3)
    assert len(list(Permutation.all(3))) == 6
    with pytest.raises(MalformedInputError):
        Permutation((1, 1, 2))


def test_configuration_perm_acts():
    for c in enumerate_transversal(3):
        for w in Permutation.all(3):
            moved = configuration_perm(c, w)
            assert multiset_of_configuration(moved) == multiset_of_configuration(c)
            # w(v) sits in a nation of the same size as v's
            for v in range(1, 4):
                a = c.nation_of(v)
                b = moved.nation_of(w(v))
                assert c.nations[a - 1].size == moved.nations[b - 1].size


def test_configuration_perm_is_an_action():
    c = enumerate_transversal(3)[5]
    for w in Permutation.all(3):
        for v in Permutation.all(3):
            left = configuration_perm(configuration_perm(c, v), w)
            assert left == configuration_perm(c, w * v)


def test_canonicalize_invariant_under_relabelling():
    for c in enumerate_transversal(4):
        base, _ = canonicalize(c)
        for w in itertools.islice(Permutation.all(4), 8):
            again, _ = canonicalize(configuration_perm(c, w))
            assert again == base


def test_canonicalize_perm_witnesses():
    for c in enumerate_configurations(3):
        canon, w = canonicalize(c)
        assert configuration_perm(c, w) == canon


def test_flip_is_involution():
    for c in enumerate_transversal(4):
        assert flip_configuration(flip_configuration(c)) == c


def test_orbit_covers_configurations():
    all_keys = {canonical_structure_key(c) for c in enumerate_configurations(3)}
    covered = set()
    for c in enumerate_transversal(3):
        for d in orbit(c):
            covered.add(canonical_structure_key(d))
    # the transversal orbits need not exhaust county orderings, but stay inside
    assert covered <= all_keys


def test_orbit_size_divides_group_order():
    for c in enumerate_transversal(3):
        assert 6 % len(orbit(c)) == 0


def test_orbit_rejects_large_n():
    c = Configuration(9, (Nation((County(tuple(range(1, 10)), "first"),)),))
    with pytest.raises(OrbitTooLargeError):
        orbit(c)


def test_shape_json_round_trip():
    for s in shapes_with_boxes(4):
        assert shape_from_json(shape_to_json(s)) == s


def test_configuration_json_round_trip():
    for c in enumerate_transversal(4):
        assert configuration_from_json(configuration_to_json(c)) == c


def test_configuration_json_rejects_junk():
    with pytest.raises(MalformedInputError):
        configuration_from_json({"n": 2})
    with pytest.raises(MalformedInputError):
        configuration_from_json(
            {"n": 2, "nations": [{"counties": [{"vertices": [1], "part": "first"}]}]}
        )
