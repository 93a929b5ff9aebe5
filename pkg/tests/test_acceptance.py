"""Acceptance checks for the census, one test per criterion.

Each test records a PASS/FAIL line in :data:`RESULTS`; the lines are
printed in the terminal summary (see ``conftest.py``). Run with
``pytest tests/test_acceptance.py -v``.
"""
import random
import time
from collections import Counter

import pytest

from octacensus import census
from octacensus.census import CensusConfig
from octacensus.enumeration import all_patterns, orbit_representatives
from octacensus.homology import h1, smith_normal_form
from octacensus.quotient import (boundary_name, boundary_type, edge_classes,
                                 euler_characteristic_boundary, euler_characteristic_m)
from octacensus.triangulation import (MoveNotApplicable, apply_move, moves_23, moves_32,
                                      moves_41, octa_to_tri)
from octacensus.turaev_viro import tv_invariant, tv_invariant_full

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[n]


@pytest.fixture(scope="module")
def summaries():
    return orbit_representatives()


@pytest.fixture(scope="module")
def census_runs(tmp_path_factory):
    """Two independent full census runs with the default configuration."""
    config = CensusConfig()
    dirs = [tmp_path_factory.mktemp("run_a"), tmp_path_factory.mktemp("run_b")]
    results = [census.run_census(config, d) for d in dirs]
    return results, dirs


def test_criterion_01_raw_count():
    t0 = time.perf_counter()
    n = len({p.encode() for p in all_patterns()})
    dt = time.perf_counter() - t0
    record(1, n == 8505 and dt < 1.0, f"raw patterns {n} (expected 8505) in {dt:.2f}s")


def test_criterion_02_orbits():
    t0 = time.perf_counter()
    summaries = orbit_representatives.__wrapped__()
    dt = time.perf_counter() - t0
    total = sum(s.orbit_size for s in summaries)
    stab = all(s.orbit_size * s.stabilizer_order == 48 for s in summaries)
    ok = len(summaries) == 298 and total == 8505 and stab and dt < 10
    record(2, ok, f"orbits {len(summaries)}, orbit sizes sum {total}, "
                  f"orbit*stabilizer=48: {stab}, {dt:.1f}s")


def test_criterion_03_boundary_distribution(summaries):
    t0 = time.perf_counter()
    dist = Counter(boundary_name(boundary_type(s.pattern)) for s in summaries)
    dt = time.perf_counter() - t0
    expected = {"empty": 37, "S1": 81, "S1+S1": 9, "S2": 113, "S2+S1": 2, "S3": 56}
    record(3, dict(dist) == expected and dt < 10, f"{dict(sorted(dist.items()))} in {dt:.1f}s")


def test_criterion_04_genus_three_edge_class(summaries):
    bad = [s.representative for s in summaries
           if (boundary_type(s.pattern) == (3,))
           != ([c.size for c in edge_classes(s.pattern)] == [12])]
    record(4, not bad, f"{len(bad)} violations of: genus-3 boundary <=> one edge class of size 12")


def test_criterion_05_genus_three_homology(summaries):
    tally = Counter(str(h1(s.pattern)) for s in summaries if boundary_type(s.pattern) == (3,))
    record(5, dict(tally) == {"Z^3": 52, "Z_3 + Z^3": 4}, f"H1 tally {dict(tally)}")


def test_criterion_06_genus_two_plus_torus_homology(summaries):
    groups = [str(h1(s.pattern)) for s in summaries if boundary_type(s.pattern) == (2, 1)]
    record(6, groups == ["Z^3", "Z^3"], f"H1 {groups}")


def test_criterion_07_euler_identity(summaries):
    bad = [s.representative for s in summaries
           if 2 * euler_characteristic_m(s.pattern) != euler_characteristic_boundary(s.pattern)]
    record(7, not bad, f"{len(bad)} patterns violate 2 chi(M) = chi(boundary)")


def _elementary_invariant_factors(matrix):
    """Invariant factors by naive pivoting on the smallest nonzero entry."""
    a = [list(row) for row in matrix]
    rows, cols = len(a), len(a[0]) if a else 0
    out = []
    top = 0
    while top < min(rows, cols):
        cells = [(abs(a[i][j]), i, j) for i in range(top, rows) for j in range(top, cols)
                 if a[i][j]]
        if not cells:
            break
        _, i, j = min(cells)
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        p = a[top][top]
        done = True
        for i in range(top + 1, rows):
            q = a[i][top] // p
            a[i] = [x - q * y for x, y in zip(a[i], a[top])]
            done &= a[i][top] == 0
        for j in range(top + 1, cols):
            q = a[top][j] // p
            for row in a:
                row[j] -= q * row[top]
            done &= a[top][j] == 0
        if not done:
            continue
        bad = next(((i, j) for i in range(top + 1, rows) for j in range(top + 1, cols)
                    if a[i][j] % p), None)
        if bad is not None:
            # fold a non-divisible row into the pivot row and pivot again
            a[top] = [x + y for x, y in zip(a[top], a[bad[0]])]
            continue
        out.append(abs(p))
        top += 1
    return out + [0] * (min(rows, cols) - len(out))


def test_criterion_08_smith_normal_form():
    rng = random.Random(8)
    bad = 0
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        bad += smith_normal_form(m) != _elementary_invariant_factors(m)
    record(8, bad == 0, f"{bad} of 200 random matrices disagree with elementary reduction")


def _random_move(t, rng):
    kinds = [("23",) + m for m in moves_23(t)] + [("32",) + m for m in moves_32(t)]
    kinds += [("41",) + m for m in moves_41(t)] + [("14", i) for i in range(t.size)]
    rng.shuffle(kinds)
    for mv in kinds:
        try:
            return mv, apply_move(t, mv)
        except MoveNotApplicable:
            continue
    raise AssertionError("no applicable move")


def test_criterion_09_pachner_invariance(summaries):
    rng = random.Random(9)
    worst, samples = 0.0, 0
    pats = [s.pattern for s in summaries]
    while samples < 100:
        t = octa_to_tri(rng.choice(pats))
        mv, u = _random_move(t, rng)
        r = rng.randint(4, 8) if mv[0] != "14" else rng.randint(4, 6)
        worst = max(worst, abs(tv_invariant(t, r).value - tv_invariant(u, r).value))
        samples += 1
    record(9, worst < 1e-6, f"{samples} samples, max |TV difference| {worst:.2e}")


def test_criterion_10_pruning_soundness(summaries):
    rng = random.Random(10)
    pats = rng.sample([s.pattern for s in summaries], 5)
    mismatches = 0
    for p in pats:
        t = octa_to_tri(p)
        for r in (4, 5):
            mismatches += tv_invariant(t, r).value != tv_invariant_full(t, r).value
    record(10, mismatches == 0, f"{mismatches} of 10 pruned/full comparisons differ")


@pytest.mark.slow
def test_criterion_11_fingerprint_lower_bounds(census_runs):
    result = census_runs[0][0]
    bounds = {"empty": 16, "S1": 17}
    counts, notes = {}, []
    for b, bound in bounds.items():
        n = result.classes("fingerprint", b)
        if n < bound:
            n16 = census.refined_fingerprint_classes(result.records, b, 16)
            notes.append(f"{b} escalated to r<=16: {n16}")
            n = n16
        counts[b] = n
    ok = all(counts[b] >= bound for b, bound in bounds.items())
    record(11, ok, f"fingerprint classes {counts} (need empty>=16, S1>=17)"
                   + (f"; {'; '.join(notes)}" if notes else ""))


def _match_counts(records, types):
    return {b: len({r.match_class for r in records if r.boundary == b}) for b in types}


@pytest.mark.slow
def test_criterion_12_matching_upper_bounds(census_runs):
    result = census_runs[0][0]
    # non-hyperbolic candidates + hyperbolic manifolds, per boundary type
    bounds = {"empty": 17 + 0, "S1": 21 + 9, "S1+S1": 5 + 2, "S2": 16 + 63}
    counts = _match_counts(result.records, bounds)
    failing = [b for b in bounds if counts[b] > bounds[b]]
    note = ""
    if failing:
        retry = CensusConfig(match_budget=100_000, matched_types=tuple(failing))
        records = [census.CensusRecord.from_json(r.to_json()) for r in result.records]
        census.assign_match_classes(records, retry)
        counts.update(_match_counts(records, failing))
        note = f"; retried {failing} at budget 1e5"
    ok = all(counts[b] <= bounds[b] for b in bounds)
    record(12, ok, f"match classes {counts} vs bounds {bounds}{note}")


@pytest.mark.slow
def test_criterion_13_sandwich(census_runs):
    result = census_runs[0][0]
    pairs = {b: (result.classes("fingerprint", b), result.classes("match", b))
             for b in census.REFERENCE["boundary_distribution"]}
    ok = all(lo <= hi for lo, hi in pairs.values())
    record(13, ok, f"(fingerprint, match) classes {pairs}")


@pytest.mark.slow
def test_criterion_14_determinism(census_runs):
    _, (a, b) = census_runs
    names = sorted(p.name for p in a.iterdir())
    differ = [n for n in names if (a / n).read_bytes() != (b / n).read_bytes()]
    ok = not differ and names == sorted(p.name for p in b.iterdir())
    record(14, ok, f"{len(names)} output files compared, differing: {differ or 'none'}")
