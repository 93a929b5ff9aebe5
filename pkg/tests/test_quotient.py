

from octacensus.homology import relation_matrix
from octacensus.quotient import (UnionFind, boundary_distribution, boundary_incidence,
                                 boundary_name, boundary_type, edge_classes,
                                 euler_characteristic_boundary, euler_characteristic_m,
                                 euler_characteristic_x, vertex_links)


def test_union_find_smallest_root():
    uf = UnionFind(range(5))
    uf.union(3, 1)
    uf.union(4, 3)
    assert uf.find(4) == 1
    assert uf.classes() == [[0], [1, 3, 4], [2]]


def test_boundary_distribution(reps):
    dist = boundary_distribution(reps)
    assert {boundary_name(b): n for b, n in dist.items()} == {
        "empty": 37, "S1": 81, "S1+S1": 9, "S2": 113, "S2+S1": 2, "S3": 56}


def test_edge_classes_partition_edges(reps):
    for p in reps:
        classes = edge_classes(p)
        assert sorted(e for c in classes for e in c.members) == list(range(12))
        # going around a class visits each member edge once
        assert all(len(c.cycle_word) == c.size for c in classes)


def test_genus_three_iff_single_edge_class(reps):
    for p in reps:
        sizes = [c.size for c in edge_classes(p)]
        assert (boundary_type(p) == (3,)) == (sizes == [12])


def test_vertex_links_are_closed_orientable(reps):
    for p in reps:
        links = vertex_links(p)
        assert sorted(v for s in links for v in s.vertices) == list(range(6))
        assert all(s.euler_characteristic <= 2 and s.euler_characteristic % 2 == 0
                   for s in links)


def test_euler_identities(reps):
    for p in reps:
        chi_b = euler_characteristic_boundary(p)
        assert 2 * euler_characteristic_m(p) == chi_b
        # the quotient differs from M only at the coned-off boundary vertices
        cone = sum(1 - s.euler_characteristic for s in vertex_links(p) if not s.is_sphere)
        assert euler_characteristic_x(p) == euler_characteristic_m(p) + cone


def test_cycle_words_match_cellular_boundary(reps):
    # relation matrix rows are, up to sign, the columns of the 2-cell boundary map
    for p in reps:
        rel = relation_matrix(p)
        inc = boundary_incidence(p)
        for c, row in enumerate(rel):
            col = [inc[k][c] for k in range(4)]
            assert list(row) in (col, [-x for x in col])


def test_boundary_name():
    assert boundary_name((2, 1)) == "S2+S1"
    assert boundary_name(()) == "empty"
