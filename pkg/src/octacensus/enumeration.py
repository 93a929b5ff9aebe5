"""Enumeration of gluing patterns and their orbits under the octahedral group."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .octmodel import NUM_FACES, GluingPattern, act, symmetry_group


@dataclass(frozen=True)
class OrbitSummary:
    representative: tuple[int, ...]
    orbit_size: int
    stabilizer_order: int

    @property
    def pattern(self) -> GluingPattern:
        return GluingPattern.decode(self.representative)


def _matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield ((first, other),) + tail


@lru_cache(maxsize=None)
def all_pairings() -> tuple[tuple[tuple[int, int], ...], ...]:
    """The 105 perfect matchings of the eight faces."""
    return tuple(_matchings(tuple(range(NUM_FACES))))


def all_patterns() -> Iterator[GluingPattern]:
    """Every admissible gluing pattern, pairing-major order."""
    for pairing in all_pairings():
        for choices in itertools.product(range(3), repeat=4):
            yield GluingPattern.from_choices(pairing, choices)


def orbit(p: GluingPattern) -> list[GluingPattern]:
    return [act(h, p) for h in symmetry_group()]


def canonical_form(p: GluingPattern) -> tuple[int, ...]:
    """Lexicographically least encoding over the symmetry orbit of ``p``."""
    return min(q.encode() for q in orbit(p))


def stabilizer_order(p: GluingPattern) -> int:
    return sum(1 for q in orbit(p) if q == p)


@lru_cache(maxsize=None)
def orbit_representatives() -> tuple[OrbitSummary, ...]:
    """One summary per orbit, sorted by canonical encoding."""
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    summaries = []
    for p in all_patterns():
        if p.encode() in seen:
            continue
        images = {q.encode() for q in orbit(p)}
        rep = min(images)
        for code in images:
            seen[code] = rep
        rep_pattern = GluingPattern.decode(rep)
        summaries.append(OrbitSummary(rep, len(images), stabilizer_order(rep_pattern)))
    summaries.sort(key=lambda s: s.representative)
    return tuple(summaries)


def representatives() -> list[GluingPattern]:
    return [s.pattern for s in orbit_representatives()]
