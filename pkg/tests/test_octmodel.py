import itertools

import pytest
from hypothesis import given, strategies as st

from octacensus.octmodel import (EDGES, FACES, GluingError, GluingMap, GluingPattern, IDENTITY,
                                 act, admissible_maps, cyclic_equal, edge_faces, opposite,
                                 symmetry_group, validate)

GROUP = symmetry_group()
symmetries = st.sampled_from(GROUP)


def test_octahedron_cells():
    assert len(FACES) == 8 and len(EDGES) == 12
    assert all(opposite(a) != b for a, b in EDGES)
    # every edge lies on exactly two faces
    assert all(len(edge_faces(e)) == 2 for e in range(12))
    # no face contains an antipodal pair
    assert all(opposite(a) not in f for f in FACES for a in f)


def test_group_has_48_elements_identity_first():
    assert len(GROUP) == 48 and len(set(GROUP)) == 48
    assert GROUP[0] == IDENTITY
    assert sum(1 for h in GROUP if h.determinant == 1) == 24


@given(symmetries, symmetries)
def test_group_closed_under_composition(g, h):
    gh = g.compose(h)
    assert gh in GROUP
    assert all(gh(v) == g(h(v)) for v in range(6))


@given(symmetries)
def test_inverse(g):
    assert g.compose(g.inverse()).is_identity


@given(symmetries)
def test_symmetries_preserve_antipodes_and_faces(g):
    assert all(g(opposite(v)) == opposite(g(v)) for v in range(6))
    assert sorted(g.face(f) for f in range(8)) == list(range(8))


def test_three_admissible_maps_per_pair():
    for f, g in itertools.permutations(range(8), 2):
        maps = admissible_maps(f, g)
        assert len(maps) == 3
        assert [m.images for m in maps] == sorted(m.images for m in maps)
        for m in maps:
            image = tuple(m(v) for v in FACES[f])
            assert cyclic_equal(image, FACES[g][::-1])


def test_orientation_preserving_map_rejected():
    f, g = 0, 1
    src = sorted(FACES[f])
    preserving = [imgs for imgs in itertools.permutations(sorted(FACES[g]))
                  if imgs not in {m.images for m in admissible_maps(f, g)}]
    assert len(preserving) == 3
    with pytest.raises(GluingError):
        GluingMap(f, g, preserving[0])
    with pytest.raises(GluingError):
        admissible_maps(2, 2)
    assert len(src) == 3


def test_map_inverse_roundtrip():
    m = admissible_maps(0, 5)[1]
    inv = m.inverse()
    assert all(inv(m(v)) == v for v in FACES[0])
    assert inv.inverse() == m


pairings = st.permutations(list(range(8))).map(
    lambda perm: [(perm[2 * i], perm[2 * i + 1]) for i in range(4)])
patterns = st.builds(GluingPattern.from_choices, pairings,
                     st.lists(st.integers(0, 2), min_size=4, max_size=4))


@given(patterns)
def test_encoding_roundtrip(p):
    validate(p)
    code = p.encode()
    assert len(code) == 12
    assert GluingPattern.decode(code) == p


@given(patterns, symmetries, symmetries)
def test_action_is_a_group_action(p, g, h):
    assert act(g, act(h, p)) == act(g.compose(h), p)
    assert act(IDENTITY, p) == p
    validate(act(g, p))


def test_invalid_patterns_rejected():
    m = admissible_maps(0, 1)[0]
    with pytest.raises(GluingError):
        GluingPattern((m, m, m, m))
    with pytest.raises(GluingError):
        GluingPattern.decode((0, 1) * 6)
