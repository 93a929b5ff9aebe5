"""Randomized Pachner-graph search for isomorphic triangulations.

From each starting triangulation an explorer visits the Pachner graph
(2-3, 3-2, 1-4 and 4-1 moves) below a tetrahedron ceiling, always expanding
a smallest unexpanded triangulation next and trying its moves in a seeded
random order. Every triangulation reached is recorded by isomorphism
signature with a parent pointer; two explorers that reach a common
signature prove their starting triangulations homeomorphic, and the parent
pointers give the move sequences.
"""
from __future__ import annotations

import hashlib
import heapq
import random
from dataclasses import dataclass, field

from .triangulation import (MoveNotApplicable, Triangulation, apply_move, moves_23, moves_32,
                            moves_41)

ISOMORPHIC = "isomorphic"
DISTINCT = "distinct-by-invariant"
UNKNOWN = "unknown"

DEFAULT_CEILING = 6
DEFAULT_BUDGET = 10_000
CHUNK = 100  # moves per turn when two explorers alternate


@dataclass(frozen=True)
class MatchVerdict:
    outcome: str
    witness: object = None
    moves_used: int = 0

    def __post_init__(self):
        if self.outcome not in (ISOMORPHIC, DISTINCT, UNKNOWN):
            raise ValueError(f"unknown outcome {self.outcome!r}")


def derived_seed(seed: int, *parts) -> int:
    """Stable sub-seed for a component of a seeded computation."""
    text = repr((seed,) + tuple(parts)).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


@dataclass
class Explorer:
    """Smallest-first search of the Pachner graph from ``start``."""

    start: Triangulation
    rng: random.Random
    ceiling: int = DEFAULT_CEILING
    used: int = 0
    # sig -> (previous labelled triangulation, move) or None
    parent: dict = field(default_factory=dict)

    def __post_init__(self):
        self.parent[self.start.iso_signature()] = None
        self._heap = [(self.start.size, 0, self.start)]
        self._count = 1
        self._pending = []  # (triangulation, move) still to try
    
    @property
    def exhausted(self) -> bool:
        return not self._heap and not self._pending

    def _moves(self, t: Triangulation) -> list:
        out = [("32",) + m for m in moves_32(t)] + [("41",) + m for m in moves_41(t)]
        if t.size + 1 <= self.ceiling:
            out += [("23",) + m for m in moves_23(t)]
        if t.size + 3 <= self.ceiling:
            out += [("14", i) for i in range(t.size)]
        self.rng.shuffle(out)
        return out

    def run(self, limit: int, visit=None) -> str | None:
        """Apply moves until ``used`` reaches ``limit`` or the graph is exhausted.

        ``visit(sig)`` is called on each new signature; if it returns true the
        search pauses and that signature is returned.
        """
        while self.used < limit:
            if not self._pending:
                if not self._heap:
                    return None
                _, _, t = heapq.heappop(self._heap)
                self._pending = [(t, mv) for mv in reversed(self._moves(t))]
                continue
            t, mv = self._pending.pop()
            try:
                nxt = apply_move(t, mv)
            except MoveNotApplicable:
                continue
            self.used += 1
            sig = nxt.iso_signature()
            if sig in self.parent:
                continue
            self.parent[sig] = (t, mv)
            heapq.heappush(self._heap, (nxt.size, self._count, nxt))
            self._count += 1
            if visit is not None and visit(sig):
                return sig
        return None

    def path_to(self, sig: str) -> list:
        """Steps ``(triangulation, move)`` leading from the start to ``sig``.

        Each step's triangulation has the signature reached by the previous
        step, though possibly in a different labelling.
        """
        out = []
        while self.parent[sig] is not None:
            t, mv = self.parent[sig]
            out.append((t, mv))
            sig = t.iso_signature()
        return out[::-1]


def verify_path(start: Triangulation, path) -> str:
    """Check a path from :meth:`Explorer.path_to`; returns the final signature."""
    sig = start.iso_signature()
    for t, mv in path:
        if t.iso_signature() != sig:
            raise ValueError("path step does not continue from the previous signature")
        sig = apply_move(t, mv).iso_signature()
    return sig


def verify_witness(a: Triangulation, b: Triangulation, witness) -> bool:
    """True if the two move paths of an isomorphic verdict meet."""
    path_a, path_b = witness
    return verify_path(a, path_a) == verify_path(b, path_b)


def default_invariants(t: Triangulation):
    """Cheap homeomorphism invariants used to rule out matches."""
    from .homology import triangulation_h1
    from .turaev_viro import tv_invariant
    links = tuple(sorted(chi for chi in t.vertex_link_euler if chi != 2))
    tv = tuple(round(tv_invariant(t, r).value, 8) for r in range(3, 7))
    return {"boundary": links, "H1": str(triangulation_h1(t)), "TV": tv}


def match_search(a: Triangulation, b: Triangulation, budget: int = DEFAULT_BUDGET,
                 seed: int = 0, ceiling: int = DEFAULT_CEILING,
                 invariants=default_invariants) -> MatchVerdict:
    """Look for a common triangulation reachable from ``a`` and ``b``.

    ``budget`` caps the total number of moves over both searches. The result is
    deterministic in ``(a, b, budget, seed, ceiling)``.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if a.iso_signature() == b.iso_signature():
        return MatchVerdict(ISOMORPHIC, ([], []), 0)
    if invariants is not None:
        ia, ib = invariants(a), invariants(b)
        for name in ia:
            if ia[name] != ib.get(name):
                return MatchVerdict(DISTINCT, name, 0)
    explorers = [Explorer(a, random.Random(derived_seed(seed, 0)), ceiling),
                 Explorer(b, random.Random(derived_seed(seed, 1)), ceiling)]
    side = 0
    while not all(e.exhausted for e in explorers):
        used = sum(e.used for e in explorers)
        if used >= budget:
            break
        ex, other = explorers[side], explorers[1 - side]
        hit = ex.run(min(ex.used + CHUNK, ex.used + budget - used), other.parent.__contains__)
        if hit is not None:
            paths = (ex.path_to(hit), other.path_to(hit))
            if side == 1:
                paths = paths[::-1]
            return MatchVerdict(ISOMORPHIC, paths, sum(e.used for e in explorers))
        side = 1 - side
    return MatchVerdict(UNKNOWN, None, sum(e.used for e in explorers))


def match_classes(triangulations, budget: int = DEFAULT_BUDGET, seed: int = 0,
                  ceiling: int = DEFAULT_CEILING, groups=None) -> list[int]:
    """Partition triangulations into classes proven homeomorphic by matching.

    ``groups`` optionally assigns a key to each triangulation; only members
    with equal keys are compared (distinct keys mean distinct invariants).
    Members are taken in order; one whose signature was already reached
    joins that class, otherwise it gets an explorer with ``budget`` moves
    that stops as soon as it reaches a signature owned by an earlier class.
    Returns a class id (smallest member index) per input.
    """
    n = len(triangulations)
    keys = list(groups) if groups is not None else [0] * n
    cls = list(range(n))
    by_key: dict = {}
    for i, k in enumerate(keys):
        by_key.setdefault(k, []).append(i)
    for members in by_key.values():
        owner: dict[str, int] = {}
        for i in members:
            sig = triangulations[i].iso_signature()
            if sig in owner:
                cls[i] = cls[owner[sig]]
                continue
            owner[sig] = i

            def visit(s, i=i):
                if s in owner:
                    return True
                owner[s] = i
                return False

            ex = Explorer(triangulations[i], random.Random(derived_seed(seed, i)), ceiling)
            hit = ex.run(budget, visit)
            if hit is not None:
                cls[i] = cls[owner[hit]]
    return cls
