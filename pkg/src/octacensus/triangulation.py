"""Tetrahedral triangulations: construction from gluing patterns, Pachner
moves, isomorphism signatures and a plain-text serialization.

A gluing of face ``f`` of tetrahedron ``t`` is a pair ``(t2, p)`` where
``p`` indexes :data:`PERMS`; the permutation sends vertices of ``t`` to
vertices of ``t2`` and ``PERMS[p][f]`` is the face of ``t2``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._sigkernel import min_codes
from .octmodel import FACES, GluingPattern, face_of

PERMS: tuple[tuple[int, int, int, int], ...] = tuple(itertools.permutations(range(4)))
PERM_INDEX = {p: i for i, p in enumerate(PERMS)}
IDENTITY = 0


def _parity(p) -> int:
    return sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2


PARITY = tuple(_parity(p) for p in PERMS)
INVERSE = tuple(PERM_INDEX[tuple(p.index(i) for i in range(4))] for p in PERMS)
# COMPOSE[a][b] = a o b (apply b first)
COMPOSE = tuple(tuple(PERM_INDEX[tuple(PERMS[a][PERMS[b][i]] for i in range(4))]
                      for b in range(24)) for a in range(24))

_PERMS_A = np.array(PERMS, np.int64)
_COMPOSE_A = np.array(COMPOSE, np.int64)
_INVERSE_A = np.array(INVERSE, np.int64)

TET_EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
TET_EDGE_INDEX = {e: i for i, e in enumerate(TET_EDGES)}
TET_EDGE_INDEX.update({(b, a): i for (a, b), i in list(TET_EDGE_INDEX.items())})

SIG_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-"


# signatures of recently seen gluing tables (searches revisit them often)
_SIG_CACHE: dict = {}
_SIG_CACHE_SIZE = 200_000


def _keys(n: int, k: int) -> list[tuple[int, int]]:
    return [(t, i) for t in range(n) for i in range(k)]


# _EDGE_MAPS[p][f]: (edge, image edge, reversed) for edges of face f under PERMS[p]
_EDGE_MAPS = tuple(tuple(tuple((e, TET_EDGE_INDEX[(PERMS[p][a], PERMS[p][b])],
                                int(PERMS[p][a] > PERMS[p][b]))
                               for e, (a, b) in enumerate(TET_EDGES) if f not in (a, b))
                         for f in range(4)) for p in range(24))


class MoveNotApplicable(Exception):
    """The requested Pachner move cannot be performed at this location."""


class TriangulationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Immutable triangulation; ``gluings[t][f]`` is ``None`` or ``(t2, perm)``."""

    gluings: tuple[tuple[tuple[int, int] | None, ...], ...]

    def __post_init__(self):
        n = len(self.gluings)
        for t, faces in enumerate(self.gluings):
            if len(faces) != 4:
                raise TriangulationError(f"tetrahedron {t} must have 4 faces")
            for f, g in enumerate(faces):
                if g is None:
                    continue
                t2, p = g
                if not 0 <= t2 < n:
                    raise TriangulationError(f"face {t}.{f} glued to missing tetrahedron {t2}")
                f2 = PERMS[p][f]
                if (t2, f2) == (t, f):
                    raise TriangulationError(f"face {t}.{f} glued to itself")
                back = self.gluings[t2][f2]
                if back != (t, INVERSE[p]):
                    raise TriangulationError(f"gluing {t}.{f} -> {t2}.{f2} is not involutive")

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.gluings == other.gluings

    def __hash__(self):
        return hash(self.gluings)

    @property
    def size(self) -> int:
        return len(self.gluings)

    def __repr__(self):
        return f"Triangulation(size={self.size}, sig={self.iso_signature()!r})"

    # ------------------------------------------------------------------
    # skeleton

    @cached_property
    def unglued_faces(self) -> tuple[tuple[int, int], ...]:
        return tuple((t, f) for t in range(self.size) for f in range(4)
                     if self.gluings[t][f] is None)

    @cached_property
    def _vertex_classes(self):
        n = self.size
        parent = list(range(4 * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, faces in enumerate(self.gluings):
            for f, g in enumerate(faces):
                if g is None:
                    continue
                t2, p = g
                perm = PERMS[p]
                for v in range(4):
                    if v != f:
                        x, y = find(4 * t + v), find(4 * t2 + perm[v])
                        if x != y:
                            parent[max(x, y)] = min(x, y)
        roots = [find(x) for x in range(4 * n)]
        index = {r: i for i, r in enumerate(sorted(set(roots)))}
        return dict(zip(_keys(n, 4), (index[r] for r in roots)))

    @property
    def vertex_class(self) -> dict[tuple[int, int], int]:
        return self._vertex_classes

    @property
    def num_vertices(self) -> int:
        return len(set(self._vertex_classes.values()))

    @cached_property
    def _edge_classes(self):
        # union-find with orientation parity on 6 * tet + edge index
        n = self.size
        parent = list(range(6 * n))
        flip = [0] * (6 * n)

        def find(x):
            f = 0
            while parent[x] != x:
                f ^= flip[x]
                x = parent[x]
            return x, f

        valid = True
        for t, faces in enumerate(self.gluings):
            for f, g in enumerate(faces):
                if g is None:
                    continue
                t2, p = g
                for e, e2, rel in _EDGE_MAPS[p][f]:
                    (r1, f1), (r2, f2) = find(6 * t + e), find(6 * t2 + e2)
                    if r1 == r2:
                        if f1 ^ f2 ^ rel:
                            valid = False
                        continue
                    if r2 < r1:
                        r1, r2 = r2, r1
                    parent[r2] = r1
                    flip[r2] = f1 ^ f2 ^ rel
        roots = [find(x)[0] for x in range(6 * n)]
        index = {r: i for i, r in enumerate(sorted(set(roots)))}
        return dict(zip(_keys(n, 6), (index[r] for r in roots))), valid

    @property
    def edge_class(self) -> dict[tuple[int, int], int]:
        """Map ``(tet, edge index)`` to an edge class id."""
        return self._edge_classes[0]

    @property
    def num_edges(self) -> int:
        return len(set(self._edge_classes[0].values()))

    @property
    def edges_valid(self) -> bool:
        """No edge is identified with itself in reverse."""
        return self._edge_classes[1]

    def edge_degrees(self) -> list[int]:
        deg = [0] * self.num_edges
        for c in self.edge_class.values():
            deg[c] += 1
        return deg

    @cached_property
    def face_classes(self) -> tuple[tuple[int, int], ...]:
        """One ``(tet, face)`` representative per triangle."""
        out = []
        for t in range(self.size):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None or (t, f) < (g[0], PERMS[g[1]][f]):
                    out.append((t, f))
        return tuple(out)

    @cached_property
    def vertex_link_euler(self) -> tuple[int, ...]:
        """Euler characteristic of each vertex link, by vertex class id."""
        vc = self.vertex_class
        nv = self.num_vertices
        tri = [0] * nv
        for (t, v), c in vc.items():
            tri[c] += 1
        # link edges: corner of v in face f of t (v != f), glued in pairs
        link_edges = [0] * nv
        for t in range(self.size):
            for f in range(4):
                g = self.gluings[t][f]
                for v in range(4):
                    if v == f:
                        continue
                    if g is None or (t, f) < (g[0], PERMS[g[1]][f]):
                        link_edges[vc[(t, v)]] += 1
        # link vertices: edge ends (t, e, v)
        parent = {}
        for t in range(self.size):
            for e, (a, b) in enumerate(TET_EDGES):
                parent[(t, e, a)] = (t, e, a)
                parent[(t, e, b)] = (t, e, b)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in range(self.size):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                t2, p = g
                perm = PERMS[p]
                for e, (a, b) in enumerate(TET_EDGES):
                    if f in (a, b):
                        continue
                    e2 = TET_EDGE_INDEX[(perm[a], perm[b])]
                    for v in (a, b):
                        x, y = find((t, e, v)), find((t2, e2, perm[v]))
                        if x != y:
                            parent[max(x, y)] = min(x, y)
        pts = [0] * nv
        for x in {find(x) for x in parent}:
            pts[vc[(x[0], x[2])]] += 1
        return tuple(p - e + f for p, e, f in zip(pts, link_edges, tri))

    def finite_vertices(self) -> list[int]:
        """Vertex classes whose link is a sphere."""
        return [c for c, chi in enumerate(self.vertex_link_euler) if chi == 2]

    def orientation(self) -> list[int] | None:
        """Signs making every gluing orientation-reversing, or ``None``."""
        sign = [0] * self.size
        for start in range(self.size):
            if sign[start]:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for f in range(4):
                    g = self.gluings[t][f]
                    if g is None:
                        continue
                    t2, p = g
                    want = sign[t] if PARITY[p] else -sign[t]
                    if sign[t2] == 0:
                        sign[t2] = want
                        stack.append(t2)
                    elif sign[t2] != want:
                        return None
        return sign

    @property
    def is_orientable(self) -> bool:
        return self.orientation() is not None

    @property
    def is_oriented(self) -> bool:
        return all(PARITY[g[1]] for faces in self.gluings for g in faces if g is not None)

    @property
    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for g in self.gluings[t]:
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    stack.append(g[0])
        return len(seen) == self.size

    # ------------------------------------------------------------------
    # relabelling

    def relabel(self, tet_order, vertex_perms) -> Triangulation:
        """New triangulation where old tet ``tet_order[i]`` becomes tet ``i``
        and its vertex ``v`` becomes ``PERMS[vertex_perms[old]][v]``."""
        new_index = {old: i for i, old in enumerate(tet_order)}
        out = [[None] * 4 for _ in range(self.size)]
        for old, faces in enumerate(self.gluings):
            a = vertex_perms[old]
            for f, g in enumerate(faces):
                nf = PERMS[a][f]
                if g is None:
                    continue
                t2, p = g
                b = vertex_perms[t2]
                q = COMPOSE[COMPOSE[b][p]][INVERSE[a]]
                out[new_index[old]][nf] = (new_index[t2], q)
        return Triangulation(tuple(tuple(r) for r in out))

    def oriented(self) -> Triangulation:
        """Relabel tetrahedra so that every gluing permutation is odd."""
        sign = self.orientation()
        if sign is None:
            raise TriangulationError("triangulation is not orientable")
        if all(s == 1 for s in sign):
            return self
        swap = PERM_INDEX[(0, 1, 3, 2)]
        return self.relabel(range(self.size), [IDENTITY if s == 1 else swap for s in sign])

    # ------------------------------------------------------------------
    # isomorphism signature

    def _sig_codes(self):
        nbr = np.full((self.size, 4), -1, np.int64)
        perm = np.zeros((self.size, 4), np.int64)
        for t, faces in enumerate(self.gluings):
            for f, g in enumerate(faces):
                if g is not None:
                    nbr[t, f], perm[t, f] = g
        codes = min_codes(nbr, perm, _PERMS_A, _COMPOSE_A, _INVERSE_A)
        if len(codes) == 0:
            raise TriangulationError("iso signatures need a connected triangulation")
        return codes.tolist()

    def _sig_codes_py(self):
        """Pure Python version of :meth:`_sig_codes`, kept as a reference."""
        n = self.size
        best = None
        for start in range(n):
            for p0 in range(24):
                cand = self._sig_from(start, p0, best)
                if cand is not None:
                    best = cand
        return best

    def _sig_from(self, start, p0, best):
        """Encoding from one starting labelling; ``None`` if worse than ``best``."""
        gl = self.gluings
        n = self.size
        order = [start]
        index = {start: 0}
        # lab[t]: perm sending old vertex -> new vertex
        lab = {start: p0}
        codes = []
        less = best is None
        pos = 0
        k = 0
        while k < len(order):
            t = order[k]
            inv = INVERSE[lab[t]]
            for nf in range(4):
                f = PERMS[inv][nf]
                g = gl[t][f]
                if g is None:
                    pair = (0, 0)
                else:
                    t2, p = g
                    if t2 not in index:
                        index[t2] = len(order)
                        order.append(t2)
                        # choose labels on t2 making this gluing the identity
                        lab[t2] = COMPOSE[lab[t]][INVERSE[p]]
                    q = COMPOSE[COMPOSE[lab[t2]][p]][inv]
                    pair = (index[t2] + 1, q)
                for c in pair:
                    if not less:
                        b = best[pos]
                        if c > b:
                            return None
                        if c < b:
                            less = True
                    codes.append(c)
                    pos += 1
            k += 1
        if len(order) != n:
            raise TriangulationError("iso signatures need a connected triangulation")
        return codes if less else None

    def iso_signature(self) -> str:
        """Canonical text encoding, equal exactly for isomorphic triangulations."""
        sig = self.__dict__.get("_iso_sig")
        if sig is None:
            sig = _SIG_CACHE.get(self.gluings)
        if sig is None:
            if self.size == 0:
                sig = SIG_ALPHABET[0]
            else:
                codes = self._sig_codes()
                sig = SIG_ALPHABET[self.size] + "".join(SIG_ALPHABET[c] for c in codes)
            if len(_SIG_CACHE) >= _SIG_CACHE_SIZE:
                _SIG_CACHE.clear()
            _SIG_CACHE[self.gluings] = sig
        object.__setattr__(self, "_iso_sig", sig)
        return sig

    @classmethod
    def from_signature(cls, sig: str) -> Triangulation:
        n = SIG_ALPHABET.index(sig[0])
        vals = [SIG_ALPHABET.index(c) for c in sig[1:]]
        if len(vals) != 8 * n:
            raise TriangulationError(f"malformed signature {sig!r}")
        gl = [[None] * 4 for _ in range(n)]
        it = iter(vals)
        for t in range(n):
            for f in range(4):
                t2, p = next(it), next(it)
                if t2:
                    gl[t][f] = (t2 - 1, p)
        return cls(tuple(tuple(r) for r in gl))

    def isomorphic(self, other: Triangulation) -> bool:
        return self.size == other.size and self.iso_signature() == other.iso_signature()

    # ------------------------------------------------------------------
    # text format

    def to_text(self) -> str:
        lines = [f"# tetrahedra {self.size}"]
        for t in range(self.size):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    lines.append(f"{t}.{f} -> boundary")
                else:
                    t2, p = g
                    perm = "".join(str(x) for x in PERMS[p])
                    lines.append(f"{t}.{f} -> {t2}.{PERMS[p][f]} perm({perm})")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Triangulation:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        m = re.fullmatch(r"# tetrahedra (\d+)", lines[0])
        if not m:
            raise TriangulationError("missing '# tetrahedra N' header")
        n = int(m.group(1))
        gl = [[None] * 4 for _ in range(n)]
        for ln in lines[1:]:
            m = re.fullmatch(r"(\d+)\.(\d) -> (?:boundary|(\d+)\.(\d) perm\(([0-3]{4})\))", ln)
            if not m:
                raise TriangulationError(f"cannot parse line {ln!r}")
            t, f = int(m.group(1)), int(m.group(2))
            if m.group(3) is not None:
                perm = tuple(int(c) for c in m.group(5))
                if perm[f] != int(m.group(4)):
                    raise TriangulationError(f"inconsistent face in line {ln!r}")
                gl[t][f] = (int(m.group(3)), PERM_INDEX[perm])
        return cls(tuple(tuple(r) for r in gl))


# ----------------------------------------------------------------------
# construction from an octahedral gluing

EQUATOR = (1, 2, 4, 3)
"""Equatorial 4-cycle around the 0-5 diagonal."""


def octa_tetrahedra() -> list[tuple[int, int, int, int]]:
    """Octahedron vertices of the four cone tetrahedra ``(0, 5, c_i, c_i+1)``."""
    return [(0, 5, EQUATOR[i], EQUATOR[(i + 1) % 4]) for i in range(4)]


def octa_to_tri(p: GluingPattern) -> Triangulation:
    """Four tetrahedra coning the octahedron over its 0-5 diagonal, with the
    eight outer faces glued as in ``p``."""
    tets = octa_tetrahedra()
    gl = [[None] * 4 for _ in range(4)]
    swap23 = PERM_INDEX[(0, 1, 3, 2)]
    for i in range(4):
        j = (i + 1) % 4
        gl[i][2] = (j, swap23)
        gl[j][3] = (i, swap23)
    where = {}
    for t, verts in enumerate(tets):
        for lf in (0, 1):
            where[face_of(v for k, v in enumerate(verts) if k != lf)] = (t, lf)
    for f in range(len(FACES)):
        m = p.face_gluing(f)
        t, lf = where[f]
        t2, lf2 = where[m.target]
        src, dst = tets[t], tets[t2]
        perm = [0] * 4
        for k, v in enumerate(src):
            perm[k] = lf2 if k == lf else dst.index(m(v))
        gl[t][lf] = (t2, PERM_INDEX[tuple(perm)])
    return Triangulation(tuple(tuple(r) for r in gl))


def double_tetrahedron() -> Triangulation:
    """Two tetrahedra glued along their boundaries by the identity: S^3."""
    gl = (tuple((1, IDENTITY) for _ in range(4)), tuple((0, IDENTITY) for _ in range(4)))
    return Triangulation(gl).oriented()


# ----------------------------------------------------------------------
# Pachner moves via ball replacement


def _replace(tri: Triangulation, old: list[int], labels: dict, new: list[tuple]) -> Triangulation:
    """Swap the tetrahedra ``old`` for the tetrahedra ``new``.

    ``labels[(t, v)]`` names vertex ``v`` of old tetrahedron ``t``; each new
    tetrahedron is a 4-tuple of names. Faces of the new tetrahedra are
    matched to faces of the old ones by their vertex names.
    """
    gl = tri.gluings
    old_set = set(old)
    keep = [t for t in range(tri.size) if t not in old_set]
    base = len(keep)
    renum = {t: i for i, t in enumerate(keep)}

    def key_old(t, f):
        return frozenset(labels[(t, v)] for v in range(4) if v != f)

    def key_new(k, f):
        return frozenset(x for i, x in enumerate(new[k]) if i != f)

    old_faces: dict = {}
    for t in old:
        for f in range(4):
            old_faces.setdefault(key_old(t, f), []).append((t, f))
    new_faces: dict = {}
    for k in range(len(new)):
        for f in range(4):
            new_faces.setdefault(key_new(k, f), []).append((k, f))

    out = [[None if g is None or g[0] in old_set else (renum[g[0]], g[1]) for g in gl[t]]
           for t in keep]
    out += [[None] * 4 for _ in new]

    def set_glue(t, f, t2, p):
        out[t][f] = (t2, p)
        out[t2][PERMS[p][f]] = (t, INVERSE[p])

    # faces inside the new ball
    for key, faces in new_faces.items():
        if len(faces) == 2:
            (k1, f1), (k2, f2) = faces
            perm = [0] * 4
            for i, x in enumerate(new[k1]):
                perm[i] = f2 if i == f1 else new[k2].index(x)
            set_glue(base + k1, f1, base + k2, PERM_INDEX[tuple(perm)])
        elif len(faces) > 2:
            raise MoveNotApplicable("degenerate replacement")
    # new boundary faces inherit the old boundary gluings
    boundary = {key: faces[0] for key, faces in new_faces.items() if len(faces) == 1}
    for key, (k, f) in boundary.items():
        match = old_faces.get(key)
        if not match or len(match) != 1:
            raise MoveNotApplicable("ball boundary mismatch")
        t, of = match[0]
        g = gl[t][of]
        # new vertex i -> old vertex of t
        to_old = [0] * 4
        for i, x in enumerate(new[k]):
            if i != f:
                to_old[i] = next(v for v in range(4) if labels[(t, v)] == x)
            else:
                to_old[i] = of
        if g is None:
            out[base + k][f] = None
            continue
        t2, p = g
        if t2 not in old_set:
            perm = tuple(PERMS[p][to_old[i]] for i in range(4))
            set_glue(base + k, f, renum[t2], PERM_INDEX[perm])
        else:
            f2 = PERMS[p][of]
            key2 = key_old(t2, f2)
            k2, nf2 = boundary[key2]
            perm = [0] * 4
            for i in range(4):
                if i == f:
                    perm[i] = nf2
                else:
                    name = labels[(t2, PERMS[p][to_old[i]])]
                    perm[i] = new[k2].index(name)
            set_glue(base + k, f, base + k2, PERM_INDEX[tuple(perm)])
    result = Triangulation(tuple(tuple(r) for r in out))
    return result.oriented() if tri.is_oriented else result


def pachner_23(tri: Triangulation, tet: int, face: int) -> Triangulation:
    """Replace the two tetrahedra meeting at ``tet.face`` by three."""
    g = tri.gluings[tet][face]
    if g is None:
        raise MoveNotApplicable("boundary face")
    t2, p = g
    if t2 == tet:
        raise MoveNotApplicable("face joins a tetrahedron to itself")
    labels = {(tet, v): v for v in range(4)}
    for v in range(4):
        labels[(t2, PERMS[p][v])] = 4 if v == face else v
    x, y, z = (v for v in range(4) if v != face)
    new = [(face, 4, y, z), (face, 4, z, x), (face, 4, x, y)]
    return _replace(tri, [tet, t2], labels, new)


def _walk_around_edge(tri: Triangulation, tet: int, edge: int):
    """Yield ``(tet, a, b, c, d)`` around an edge: ``a, b`` its endpoints,
    ``c`` the vertex behind and ``d`` the vertex ahead in each tetrahedron."""
    a, b = TET_EDGES[edge]
    c, d = (v for v in range(4) if v not in (a, b))
    t = tet
    first = (tet, a, b, c, d)
    steps = []
    while True:
        steps.append((t, a, b, c, d))
        g = tri.gluings[t][c]  # face opposite c contains a, b, d
        if g is None:
            raise MoveNotApplicable("boundary edge")
        t, p = g
        perm = PERMS[p]
        a, b, c, d = perm[a], perm[b], perm[d], perm[c]
        if (t, a, b, c, d) == first:
            return steps
        if len(steps) > 4 * tri.size * 6:
            raise MoveNotApplicable("edge walk did not close")


def pachner_32(tri: Triangulation, tet: int, edge: int) -> Triangulation:
    """Replace the three tetrahedra around edge ``edge`` of ``tet`` by two."""
    steps = _walk_around_edge(tri, tet, edge)
    if len(steps) != 3:
        raise MoveNotApplicable(f"edge has degree {len(steps)}")
    tets = [s[0] for s in steps]
    if len(set(tets)) != 3:
        raise MoveNotApplicable("edge tetrahedra are not distinct")
    if sum(1 for (t, e), c in tri.edge_class.items()
           if c == tri.edge_class[(tet, edge)]) != 3:
        raise MoveNotApplicable("edge has extra embeddings")
    # names: endpoints 0, 1; link vertices 2, 3, 4 in cyclic order
    labels = {}
    link = [2, 3, 4]
    for i, (t, a, b, c, d) in enumerate(steps):
        labels[(t, a)] = 0
        labels[(t, b)] = 1
        labels[(t, c)] = link[i]
        labels[(t, d)] = link[(i + 1) % 3]
    new = [(2, 3, 4, 0), (2, 3, 4, 1)]
    return _replace(tri, tets, labels, new)


def pachner_14(tri: Triangulation, tet: int) -> Triangulation:
    """Cone tetrahedron ``tet`` from a new interior vertex."""
    labels = {(tet, v): v for v in range(4)}
    new = [(4, 1, 2, 3), (0, 4, 2, 3), (0, 1, 4, 3), (0, 1, 2, 4)]
    return _replace(tri, [tet], labels, new)


def pachner_41(tri: Triangulation, tet: int, vertex: int) -> Triangulation:
    """Remove a degree-four vertex, merging its star into one tetrahedron."""
    vc = tri.vertex_class
    cls = vc[(tet, vertex)]
    corners = [tv for tv, c in vc.items() if c == cls]
    tets = sorted({t for t, _ in corners})
    if len(corners) != 4 or len(tets) != 4:
        raise MoveNotApplicable("vertex does not have degree four")
    # name the vertex 4 and the others by a consistent labelling
    labels = {(tet, v): (4 if v == vertex else v) for v in range(4)}
    pending = [tet]
    done = set()
    while pending:
        t = pending.pop()
        if t in done:
            continue
        done.add(t)
        apex = next(v for v in range(4) if labels[(t, v)] == 4)
        for f in range(4):
            if f == apex:
                continue
            g = tri.gluings[t][f]
            if g is None:
                raise MoveNotApplicable("boundary at vertex")
            t2, p = g
            if t2 not in tets:
                raise MoveNotApplicable("star is not four tetrahedra")
            mapped = {PERMS[p][v]: labels[(t, v)] for v in range(4) if v != f}
            # the neighbour's far vertex carries the one name absent from t
            missing = ({0, 1, 2, 3, 4} - {labels[(t, v)] for v in range(4)}).pop()
            mapped[PERMS[p][f]] = missing
            for v, name in mapped.items():
                if labels.setdefault((t2, v), name) != name:
                    raise MoveNotApplicable("inconsistent star")
            pending.append(t2)
    if len(done) != 4:
        raise MoveNotApplicable("star is not four tetrahedra")
    for t in tets:
        if len({labels[(t, v)] for v in range(4)}) != 4:
            raise MoveNotApplicable("degenerate star")
    outer = sorted({n for n in labels.values() if n != 4})
    if len(outer) != 4:
        raise MoveNotApplicable("star does not bound a tetrahedron")
    return _replace(tri, tets, labels, [tuple(outer)])


# ----------------------------------------------------------------------
# move locators


def moves_23(tri: Triangulation) -> list[tuple[int, int]]:
    out = []
    for t, f in tri.face_classes:
        g = tri.gluings[t][f]
        if g is not None and g[0] != t:
            out.append((t, f))
    return out


def moves_32(tri: Triangulation) -> list[tuple[int, int]]:
    ec = tri.edge_class
    embeddings: dict[int, list] = {}
    for (t, e), c in sorted(ec.items()):
        embeddings.setdefault(c, []).append((t, e))
    out = []
    for c, emb in embeddings.items():
        if len(emb) == 3 and len({t for t, _ in emb}) == 3:
            out.append(emb[0])
    return out


def moves_41(tri: Triangulation) -> list[tuple[int, int]]:
    vc = tri.vertex_class
    corners: dict[int, list] = {}
    for tv, c in sorted(vc.items()):
        corners.setdefault(c, []).append(tv)
    found = [(c, cs[0]) for c, cs in corners.items()
             if len(cs) == 4 and len({t for t, _ in cs}) == 4]
    if not found:
        return []
    chi = tri.vertex_link_euler
    return [corner for c, corner in found if chi[c] == 2]


def apply_move(tri: Triangulation, move) -> Triangulation:
    kind, *args = move
    if kind == "23":
        return pachner_23(tri, *args)
    if kind == "32":
        return pachner_32(tri, *args)
    if kind == "14":
        return pachner_14(tri, *args)
    if kind == "41":
        return pachner_41(tri, *args)
    raise ValueError(f"unknown move {kind!r}")
