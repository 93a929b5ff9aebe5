"""First homology of M(phi) from the face-pairing presentation.

The four face-pairing maps generate the fundamental group of the glued
octahedron minus its vertices, with one relation per edge class. Filling a
sphere-link vertex back in attaches a 3-ball, which changes nothing, so
H1 is always Z^4 modulo the abelianized edge-cycle relations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .octmodel import GluingPattern
from .quotient import edge_classes


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """``Z^rank`` plus cyclic factors ``Z_d`` with ``d1 | d2 | ...``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invalid invariant factor {d}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_factors(cls, factors, ngens: int) -> AbelianGroup:
        """Quotient of ``Z^ngens`` by relations with the given SNF diagonal."""
        nonzero = [abs(d) for d in factors if d != 0]
        return cls(ngens - len(nonzero), tuple(d for d in nonzero if d != 1))

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text in ("0", ""):
            return cls(0)
        rank, torsion = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z_"):
                torsion.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls(rank, tuple(sorted(torsion)))

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def smith_normal_form(matrix) -> list[int]:
    """Invariant factors of an integer matrix (exact arithmetic).

    Returns the non-negative diagonal ``d1 | d2 | ... `` of length
    ``min(rows, cols)``, zeros last.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest non-zero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # a remainder smaller than the pivot survives: move it to the corner
                best = None
                for i in range(t, rows):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                a[t], a[best] = a[best], a[t]
                jbest = min((j for j in range(t, cols) if a[t][j]), key=lambda j: abs(a[t][j]))
                for row in a:
                    row[t], row[jbest] = row[jbest], row[t]
                continue
            # divisibility: the pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return diag


@lru_cache(maxsize=1024)
def relation_matrix(p: GluingPattern) -> tuple[tuple[int, ...], ...]:
    """Row ``c``: signed generator counts in the cycle word of edge class ``c``."""
    rows = []
    for cls in edge_classes(p):
        row = [0, 0, 0, 0]
        for k, e in cls.cycle_word:
            row[k] += e
        rows.append(tuple(row))
    return tuple(rows)


def group_from_relations(matrix, ngens: int) -> AbelianGroup:
    if not matrix:
        return AbelianGroup(ngens)
    return AbelianGroup.from_factors(smith_normal_form(matrix), ngens)


@lru_cache(maxsize=1024)
def h1(p: GluingPattern) -> AbelianGroup:
    return group_from_relations(relation_matrix(p), 4)


def determinantal_factors(matrix) -> list[int]:
    """Invariant factors from gcds of k x k minors (slow, independent route)."""
    from itertools import combinations, permutations

    def det(m):
        n = len(m)
        total = 0
        for perm in permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            prod = 1
            for i in range(n):
                prod *= m[i][perm[i]]
            total += -prod if inv % 2 else prod
        return total

    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, det([[matrix[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]
    return factors + [0] * (min(rows, cols) - len(factors))


def triangulation_h1(t) -> AbelianGroup:
    """H1 of a triangulation with its non-sphere-link vertices removed.

    Uses the dual cell structure: tetrahedra are dual vertices, faces dual
    edges and edges dual 2-cells, so ``H1 = ker d1 / im d2``. For a census
    triangulation this agrees with :func:`h1` of its pattern.
    """
    from .triangulation import PERMS, TET_EDGES

    faces = t.face_classes
    index = {}
    for k, (a, f) in enumerate(faces):
        g = t.gluings[a][f]
        if g is None:
            raise ValueError("triangulation has boundary faces")
        index[(a, f)] = (k, 1)
        index[(g[0], PERMS[g[1]][f])] = (k, -1)
    d1 = [[0] * t.size for _ in faces]
    for k, (a, f) in enumerate(faces):
        d1[k][t.gluings[a][f][0]] += 1
        d1[k][a] -= 1
    d2 = []
    seen = set()
    for (a, e), cls in sorted(t.edge_class.items()):
        if cls in seen:
            continue
        seen.add(cls)
        row = [0] * len(faces)
        x, y = TET_EDGES[e]
        c, d = (v for v in range(4) if v not in (x, y))
        tet, start = a, (a, x, y, c, d)
        while True:
            k, s = index[(tet, c)]
            row[k] += s
            tet, p = t.gluings[tet][c]
            perm = PERMS[p]
            x, y, c, d = perm[x], perm[y], perm[d], perm[c]
            if (tet, x, y, c, d) == start:
                break
        d2.append(row)
    rank1 = sum(1 for v in smith_normal_form(d1) if v)
    factors = smith_normal_form(d2) if d2 else []
    rank2 = sum(1 for v in factors if v)
    return AbelianGroup(len(faces) - rank1 - rank2, tuple(v for v in factors if v > 1))

