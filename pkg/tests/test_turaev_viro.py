import itertools
import math
import random

import pytest

from octacensus.enumeration import representatives
from octacensus.octmodel import act, symmetry_group
from octacensus.triangulation import (double_tetrahedron, moves_23, octa_to_tri,
                                      pachner_14, pachner_23)
from octacensus.turaev_viro import (Inadmissible, admissible, fingerprint, quantum_dim,
                                    quantum_integers, sixj, total_dim_squared, tv_invariant,
                                    tv_invariant_full)


def test_quantum_integers():
    for r in range(3, 10):
        qi = quantum_integers(r)
        assert qi[0] == 0 and qi[1] == pytest.approx(1)
        assert qi[r] == 0
        for n in range(1, r):
            assert qi[n] == pytest.approx(math.sin(n * math.pi / r) / math.sin(math.pi / r))
            assert qi[n] == pytest.approx(qi[r - n])


def test_vacuum():
    for r in range(3, 9):
        assert quantum_dim(0, r) == pytest.approx(1)
        assert sixj(0, 0, 0, 0, 0, 0, r) == pytest.approx(1)


def test_total_dimension_closed_form():
    for r in range(3, 17):
        assert total_dim_squared(r) == pytest.approx(r / (2 * math.sin(math.pi / r) ** 2))


def test_inadmissible_signal():
    assert not admissible(1, 0, 0, 5)
    assert not admissible(3, 3, 2, 5)
    with pytest.raises(Inadmissible):
        sixj(1, 0, 0, 0, 0, 0, 5)
    with pytest.raises(Inadmissible):
        quantum_dim(4, 5)


# symmetries of a tetrahedron acting on (j1..j6), edges 01 02 12 23 13 03
def _tet_symmetries():
    edges = [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3)]
    index = {frozenset(e): i for i, e in enumerate(edges)}
    for perm in itertools.permutations(range(4)):
        yield [index[frozenset((perm[a], perm[b]))] for a, b in edges]


def test_sixj_full_tetrahedral_symmetry_r5():
    r = 5
    syms = list(_tet_symmetries())
    assert len(syms) == 24
    checked = 0
    for js in itertools.product(range(r - 1), repeat=6):
        j1, j2, j3, j4, j5, j6 = js
        if not all(admissible(*t, r) for t in ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6),
                                              (j4, j5, j3))):
            continue
        value = sixj(*js, r)
        for s in syms:
            assert sixj(*(js[s[i]] for i in range(6)), r) == pytest.approx(value, abs=1e-12)
        checked += 1
    assert checked > 50


def test_sphere_value():
    d = double_tetrahedron()
    for r in range(3, 9):
        assert tv_invariant(d, r).value == pytest.approx(1 / total_dim_squared(r))


def test_closed_trivial_homology_patterns_are_spheres():
    from octacensus.homology import h1
    from octacensus.quotient import boundary_type
    spheres = [p for p in representatives() if boundary_type(p) == () and str(h1(p)) == "0"]
    assert len(spheres) == 3
    d = double_tetrahedron()
    for p in spheres:
        t = octa_to_tri(p)
        for r in range(3, 8):
            assert tv_invariant(t, r).value == pytest.approx(tv_invariant(d, r).value)


def test_pachner_invariance_sample():
    rng = random.Random(11)
    reps = representatives()
    for _ in range(20):
        t = octa_to_tri(rng.choice(reps))
        r = rng.randint(3, 8)
        u = pachner_23(t, *rng.choice(moves_23(t)))
        assert abs(tv_invariant(t, r).value - tv_invariant(u, r).value) < 1e-6
        w = pachner_14(t, rng.randrange(t.size))
        assert abs(tv_invariant(t, r).value - tv_invariant(w, r).value) < 1e-6


def test_pruned_equals_full_small():
    reps = representatives()
    small = [p for p in reps if octa_to_tri(p).num_edges <= 3][:3]
    for p in small:
        t = octa_to_tri(p)
        for r in (4, 5, 6):
            assert tv_invariant(t, r).value == tv_invariant_full(t, r).value


def test_fingerprint_orbit_invariant():
    p = representatives()[40]
    g, tv = fingerprint(p, 6)
    for h in symmetry_group()[::12]:
        g2, tv2 = fingerprint(act(h, p), 6)
        assert g2 == g
        assert [round(v.value, 9) for v in tv2] == [round(v.value, 9) for v in tv]


def test_level_bounds():
    d = double_tetrahedron()
    with pytest.raises(ValueError):
        tv_invariant(d, 2)
    with pytest.raises(ValueError):
        tv_invariant(d, 9, r_max=8)
