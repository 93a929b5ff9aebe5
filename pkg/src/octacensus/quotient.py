"""Cell structure of the quotient space of a gluing pattern.

Edge classes come with cycle words in the face-pairing generators; vertex
links are assembled from the six quadrilateral links of the octahedron's
vertices.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .octmodel import (EDGES, FACES, NUM_EDGES, NUM_FACES, NUM_VERTICES, GluingPattern,
                       edge_faces, edge_id, edges_at, faces_at)


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so class ids are deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra
        return ra

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in sorted(self.parent):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[k] for k in sorted(groups)]


@dataclass(frozen=True)
class EdgeClass:
    members: tuple[int, ...]
    cycle_word: tuple[tuple[int, int], ...]
    """``(pair index, +-1)`` for each face crossed going once around the class."""

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class LinkSurface:
    vertices: tuple[int, ...]
    euler_characteristic: int

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    @property
    def is_sphere(self) -> bool:
        return self.euler_characteristic == 2


BoundaryType = tuple[int, ...]
"""Genera of the positive-genus vertex links, in decreasing order."""

BOUNDARY_TYPES: tuple[BoundaryType, ...] = ((), (1,), (1, 1), (2,), (2, 1), (3,))
BOUNDARY_NAMES = {
    (): "empty",
    (1,): "S1",
    (1, 1): "S1+S1",
    (2,): "S2",
    (2, 1): "S2+S1",
    (3,): "S3",
}


def boundary_name(b: BoundaryType) -> str:
    return BOUNDARY_NAMES.get(tuple(b), "+".join(f"S{g}" for g in b) or "empty")


def _sides():
    """All (edge, face) incidences, sorted."""
    return [(e, f) for e in range(NUM_EDGES) for f in edge_faces(e)]


def _cross(p: GluingPattern, side):
    """Carry a side across the gluing of its face."""
    e, f = side
    m = p.face_gluing(f)
    a, b = EDGES[e]
    return edge_id(m(a), m(b)), m.target


def _other(side):
    e, f = side
    f1, f2 = edge_faces(e)
    return e, (f2 if f == f1 else f1)


def _letter(p: GluingPattern, f: int) -> tuple[int, int]:
    k = p.pair_index(f)
    return k, (1 if p.maps[k].source == f else -1)


@lru_cache(maxsize=1024)
def edge_classes(p: GluingPattern) -> tuple[EdgeClass, ...]:
    """Edge classes ordered by their smallest member.

    Going around a class we leave the octahedron through a face, re-enter
    through its partner, and turn around the image edge to the other face
    containing it. The word records the face pair crossed at each exit
    (+1 when leaving through the pair's lower face).
    """
    uf = UnionFind(range(NUM_EDGES))
    for side in _sides():
        uf.union(side[0], _cross(p, side)[0])
    out = []
    for members in uf.classes():
        start = min(s for s in _sides() if s[0] in members)
        word = []
        side = start
        while True:
            word.append(_letter(p, side[1]))
            side = _other(_cross(p, side))
            if side == start:
                break
        out.append(EdgeClass(tuple(members), tuple(word)))
    return tuple(out)


def edge_class_sizes(p: GluingPattern) -> tuple[int, ...]:
    return tuple(sorted((c.size for c in edge_classes(p)), reverse=True))


@dataclass(frozen=True)
class LinkComplex:
    """Cell counts of the glued vertex links, per connected component."""

    components: tuple[tuple[int, ...], ...]
    squares: tuple[int, ...]
    arcs: tuple[int, ...]
    points: tuple[int, ...]


@lru_cache(maxsize=1024)
def link_complex(p: GluingPattern) -> LinkComplex:
    # squares = vertices of O; arcs = face corners (f, v); points = edge ends (e, v)
    squares = UnionFind(range(NUM_VERTICES))
    arcs = UnionFind((f, v) for f in range(NUM_FACES) for v in FACES[f])
    points = UnionFind((e, v) for e in range(NUM_EDGES) for v in EDGES[e])
    for f in range(NUM_FACES):
        m = p.face_gluing(f)
        for v in FACES[f]:
            squares.union(v, m(v))
            arcs.union((f, v), (m.target, m(v)))
        a, b, c = FACES[f]
        for x, y in ((a, b), (b, c), (c, a)):
            e, e2 = edge_id(x, y), edge_id(m(x), m(y))
            points.union((e, x), (e2, m(x)))
            points.union((e, y), (e2, m(y)))
    components = tuple(tuple(c) for c in squares.classes())
    comp_of = {v: i for i, c in enumerate(components) for v in c}
    n = len(components)
    sq, ar, pt = [0] * n, [0] * n, [0] * n
    for v in range(NUM_VERTICES):
        sq[comp_of[v]] += 1
    for cls in arcs.classes():
        ar[comp_of[cls[0][1]]] += 1
    for cls in points.classes():
        pt[comp_of[cls[0][1]]] += 1
    return LinkComplex(components, tuple(sq), tuple(ar), tuple(pt))


@lru_cache(maxsize=1024)
def vertex_links(p: GluingPattern) -> tuple[LinkSurface, ...]:
    """One closed surface per vertex class of the quotient."""
    lc = link_complex(p)
    out = []
    for comp, f2, f1, f0 in zip(lc.components, lc.squares, lc.arcs, lc.points):
        chi = f0 - f1 + f2
        if chi % 2 or chi > 2:
            raise ArithmeticError(f"vertex link {comp} of {p.encode()} has chi={chi}")
        out.append(LinkSurface(comp, chi))
    return tuple(out)


def boundary_type(p: GluingPattern) -> BoundaryType:
    return tuple(sorted((s.genus for s in vertex_links(p) if s.genus > 0), reverse=True))


def euler_characteristic_x(p: GluingPattern) -> int:
    """chi of the quotient polyhedron: vertices - edges + 4 faces - 1 solid."""
    return len(vertex_links(p)) - len(edge_classes(p)) + 3


def euler_characteristic_m(p: GluingPattern) -> int:
    """chi of the manifold with the non-manifold vertex stars removed.

    Cutting out the open cone on a link ``L`` lowers chi by ``1 - chi(L)``.
    """
    links = vertex_links(p)
    good = sum(1 for s in links if s.is_sphere)
    cut = sum(s.euler_characteristic for s in links if not s.is_sphere)
    return good - len(edge_classes(p)) + 3 + cut


def euler_characteristic_boundary(p: GluingPattern) -> int:
    return sum(s.euler_characteristic for s in vertex_links(p) if not s.is_sphere)


def boundary_distribution(patterns) -> Counter:
    return Counter(boundary_type(p) for p in patterns)


def directed_edge_classes(p: GluingPattern) -> tuple[dict[int, int], dict[int, int]]:
    """Class id and orientation sign of every edge, relative to its class's
    smallest member oriented low-to-high vertex.

    Computed by union-find with parity over directed-edge identifications;
    independent from the cycle traversal in :func:`edge_classes`.
    """
    parent = {e: (e, 1) for e in range(NUM_EDGES)}

    def find(e):
        sign = 1
        while parent[e][0] != e:
            e, s = parent[e]
            sign *= s
        return e, sign

    for f in range(NUM_FACES):
        m = p.face_gluing(f)
        a, b, c = FACES[f]
        for x, y in ((a, b), (b, c), (c, a)):
            e = edge_id(x, y)
            e2 = edge_id(m(x), m(y))
            # orientation of x->y relative to edge's low->high direction
            s1 = 1 if x < y else -1
            s2 = 1 if m(x) < m(y) else -1
            r1, t1 = find(e)
            r2, t2 = find(e2)
            rel = s1 * s2 * t1 * t2
            if r1 == r2:
                if rel != 1:
                    raise ArithmeticError(f"edge {EDGES[e]} is glued to itself reversed")
                continue
            if r2 < r1:
                r1, r2 = r2, r1
            parent[r2] = (r1, rel)
    cls, sign = {}, {}
    roots = sorted({find(e)[0] for e in range(NUM_EDGES)})
    for e in range(NUM_EDGES):
        r, s = find(e)
        cls[e] = roots.index(r)
        sign[e] = s
    return cls, sign


def boundary_incidence(p: GluingPattern) -> list[list[int]]:
    """Cellular boundary of each face pair's 2-cell in terms of edge classes.

    Row ``k`` is the boundary of the lower face of pair ``k`` taken with its
    outward orientation.
    """
    cls, sign = directed_edge_classes(p)
    n = len(set(cls.values()))
    rows = []
    for m in p.maps:
        row = [0] * n
        a, b, c = FACES[m.source]
        for x, y in ((a, b), (b, c), (c, a)):
            e = edge_id(x, y)
            row[cls[e]] += sign[e] * (1 if x < y else -1)
        rows.append(row)
    return rows


__all__ = [
    "BOUNDARY_TYPES", "BoundaryType", "EdgeClass", "LinkSurface", "LinkComplex",
    "boundary_type", "boundary_name", "edge_classes", "edge_class_sizes", "vertex_links",
    "link_complex", "euler_characteristic_x", "euler_characteristic_m",
    "euler_characteristic_boundary", "boundary_distribution", "directed_edge_classes",
    "boundary_incidence", "UnionFind", "faces_at", "edges_at",
]
