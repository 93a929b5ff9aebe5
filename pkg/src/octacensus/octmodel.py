"""Combinatorial model of the octahedron and its face gluings.

Vertices are the six points +-e1, +-e2, +-e3, numbered so that ``v`` and
``5 - v`` are antipodal::

    0: +e1   1: +e2   2: +e3   3: -e3   4: -e2   5: -e1

Faces are the eight sign triples; every face stores its vertices in the
counterclockwise order seen from outside the solid.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

NUM_VERTICES = 6
NUM_FACES = 8
NUM_EDGES = 12


def opposite(v: int) -> int:
    return 5 - v


def vertex_axis(v: int) -> int:
    return min(v, 5 - v)


def vertex_sign(v: int) -> int:
    return 1 if v < 3 else -1


def vertex_from_axis(axis: int, sign: int) -> int:
    return axis if sign > 0 else 5 - axis


def _coords(v: int) -> tuple[int, int, int]:
    c = [0, 0, 0]
    c[vertex_axis(v)] = vertex_sign(v)
    return tuple(c)


def _det(a, b, c) -> int:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _rotate_min_first(cycle):
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def _build_faces():
    faces = []
    for bits in range(NUM_FACES):
        # bit k set means the negative vertex on axis k
        verts = [vertex_from_axis(k, -1 if bits >> k & 1 else 1) for k in range(3)]
        a, b, c = (_coords(v) for v in verts)
        if _det(a, b, c) < 0:
            verts[1], verts[2] = verts[2], verts[1]
        faces.append(_rotate_min_first(verts))
    return tuple(faces)


FACES: tuple[tuple[int, int, int], ...] = _build_faces()
"""Reference cyclic vertex order of each face (outward normal, counterclockwise)."""

EDGES: tuple[tuple[int, int], ...] = tuple(
    (a, b) for a, b in itertools.combinations(range(NUM_VERTICES), 2) if b != opposite(a)
)
EDGE_INDEX = {e: i for i, e in enumerate(EDGES)}


def edge_id(a: int, b: int) -> int:
    return EDGE_INDEX[(a, b) if a < b else (b, a)]


FACE_INDEX = {frozenset(f): i for i, f in enumerate(FACES)}


def face_of(vertices) -> int:
    return FACE_INDEX[frozenset(vertices)]


def face_edges(f: int) -> tuple[int, int, int]:
    a, b, c = FACES[f]
    return (edge_id(a, b), edge_id(b, c), edge_id(c, a))


def edge_faces(e: int) -> tuple[int, int]:
    """The two faces containing edge ``e``, in increasing order."""
    a, b = EDGES[e]
    return tuple(f for f in range(NUM_FACES) if a in FACES[f] and b in FACES[f])


def faces_at(v: int) -> tuple[int, ...]:
    return tuple(f for f in range(NUM_FACES) if v in FACES[f])


def edges_at(v: int) -> tuple[int, ...]:
    return tuple(e for e in range(NUM_EDGES) if v in EDGES[e])


def cyclic_equal(a, b) -> bool:
    """True if the 3-tuples ``a`` and ``b`` agree up to rotation."""
    return any(tuple(a[i:] + a[:i]) == tuple(b) for i in range(3))


# --------------------------------------------------------------------------
# symmetries


@dataclass(frozen=True, order=True)
class Symmetry:
    """A signed permutation of the three coordinate axes.

    Axis ``k`` is sent to axis ``perm[k]`` with sign ``signs[k]``.
    """

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    @property
    def vertex_map(self) -> tuple[int, ...]:
        return _vertex_map(self)

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def face(self, f: int) -> int:
        return face_of(self.vertex_map[v] for v in FACES[f])

    def edge(self, e: int) -> int:
        a, b = EDGES[e]
        return edge_id(self(a), self(b))

    def compose(self, other: Symmetry) -> Symmetry:
        """Return ``self o other`` (apply ``other`` first)."""
        perm = tuple(self.perm[other.perm[k]] for k in range(3))
        signs = tuple(other.signs[k] * self.signs[other.perm[k]] for k in range(3))
        return Symmetry(perm, signs)

    def inverse(self) -> Symmetry:
        perm = [0, 0, 0]
        signs = [0, 0, 0]
        for k in range(3):
            perm[self.perm[k]] = k
            signs[self.perm[k]] = self.signs[k]
        return Symmetry(tuple(perm), tuple(signs))

    @property
    def is_identity(self) -> bool:
        return self.perm == (0, 1, 2) and self.signs == (1, 1, 1)

    @property
    def determinant(self) -> int:
        inversions = sum(1 for i, j in itertools.combinations(range(3), 2)
                         if self.perm[i] > self.perm[j])
        d = -1 if inversions % 2 else 1
        for s in self.signs:
            d *= s
        return d


@lru_cache(maxsize=None)
def _vertex_map(h: Symmetry) -> tuple[int, ...]:
    out = []
    for v in range(NUM_VERTICES):
        k = vertex_axis(v)
        out.append(vertex_from_axis(h.perm[k], h.signs[k] * vertex_sign(v)))
    return tuple(out)


IDENTITY = Symmetry((0, 1, 2), (1, 1, 1))


@lru_cache(maxsize=None)
def symmetry_group() -> tuple[Symmetry, ...]:
    """All 48 symmetries of the octahedron, identity first."""
    group = [Symmetry(p, s)
             for p in itertools.permutations(range(3))
             for s in itertools.product((1, -1), repeat=3)]
    return tuple(group)


# --------------------------------------------------------------------------
# gluing maps


class GluingError(ValueError):
    """Raised for an invalid face gluing or gluing pattern."""


@dataclass(frozen=True, order=True)
class GluingMap:
    """A simplicial identification of face ``source`` with face ``target``.

    ``images[i]`` is the image of ``sorted(FACES[source])[i]``.
    """

    source: int
    target: int
    images: tuple[int, int, int]

    def __post_init__(self):
        if self.source == self.target:
            raise GluingError(f"face {self.source} cannot be glued to itself")
        if sorted(self.images) != sorted(FACES[self.target]):
            raise GluingError(f"images {self.images} are not the vertices of face {self.target}")
        src = self.as_dict()
        image_order = tuple(src[v] for v in FACES[self.source])
        if not cyclic_equal(image_order, FACES[self.target][::-1]):
            raise GluingError(f"map {self} is orientation-preserving")

    def as_dict(self) -> dict[int, int]:
        return dict(zip(sorted(FACES[self.source]), self.images))

    def __call__(self, v: int) -> int:
        return self.as_dict()[v]

    def inverse(self) -> GluingMap:
        inv = {w: v for v, w in self.as_dict().items()}
        return GluingMap(self.target, self.source,
                         tuple(inv[w] for w in sorted(FACES[self.target])))

    def conjugate(self, h: Symmetry) -> GluingMap:
        """The map ``h o self o h^-1`` from ``h(source)`` to ``h(target)``."""
        m = self.as_dict()
        new = {h(v): h(w) for v, w in m.items()}
        src = h.face(self.source)
        return GluingMap(src, h.face(self.target), tuple(new[v] for v in sorted(FACES[src])))


def _reverses(source: int, target: int, images) -> bool:
    m = dict(zip(sorted(FACES[source]), images))
    return cyclic_equal(tuple(m[v] for v in FACES[source]), FACES[target][::-1])


@lru_cache(maxsize=None)
def admissible_maps(f: int, g: int) -> tuple[GluingMap, ...]:
    """The three orientation-reversing identifications of face ``f`` with ``g``,
    in lexicographic order of their image tuples."""
    if f == g:
        raise GluingError(f"face {f} cannot be glued to itself")
    out = [GluingMap(f, g, images)
           for images in itertools.permutations(sorted(FACES[g]))
           if _reverses(f, g, images)]
    return tuple(out)


@dataclass(frozen=True)
class GluingPattern:
    """Four gluing maps pairing up the eight faces.

    Maps are stored with ``source < target`` and sorted by source face.
    """

    maps: tuple[GluingMap, GluingMap, GluingMap, GluingMap]

    def __post_init__(self):
        if len(self.maps) != 4:
            raise GluingError("a gluing pattern needs exactly 4 face pairs")
        faces = sorted(f for m in self.maps for f in (m.source, m.target))
        if faces != list(range(NUM_FACES)):
            raise GluingError(f"faces {faces} do not form a perfect matching")
        for m in self.maps:
            if m.source > m.target:
                raise GluingError("maps must be stored with source < target")
        if list(self.maps) != sorted(self.maps, key=lambda m: m.source):
            raise GluingError("maps must be sorted by source face")

    @classmethod
    def from_maps(cls, maps) -> GluingPattern:
        """Build a pattern from maps in any direction and order."""
        normal = [m if m.source < m.target else m.inverse() for m in maps]
        return cls(tuple(sorted(normal, key=lambda m: m.source)))

    @classmethod
    def from_choices(cls, pairing, choices) -> GluingPattern:
        """Build from a list of face pairs and per-pair indices into
        :func:`admissible_maps`."""
        maps = []
        for (f, g), c in zip(pairing, choices):
            f, g = min(f, g), max(f, g)
            maps.append(admissible_maps(f, g)[c])
        return cls.from_maps(maps)

    @property
    def pairing(self) -> tuple[tuple[int, int], ...]:
        return tuple((m.source, m.target) for m in self.maps)

    @property
    def choices(self) -> tuple[int, ...]:
        return tuple(admissible_maps(m.source, m.target).index(m) for m in self.maps)

    def encode(self) -> tuple[int, ...]:
        """Fixed-length integer encoding: the sorted pairs, then the map indices."""
        flat = tuple(x for pair in self.pairing for x in pair)
        return flat + self.choices

    @classmethod
    def decode(cls, code) -> GluingPattern:
        code = tuple(code)
        if len(code) != 12:
            raise GluingError(f"bad pattern encoding {code}")
        pairing = [(code[2 * i], code[2 * i + 1]) for i in range(4)]
        return cls.from_choices(pairing, code[8:])

    def partner(self, f: int) -> int:
        return self.face_gluing(f).target

    def face_gluing(self, f: int) -> GluingMap:
        """The gluing map leaving face ``f``."""
        return _face_table(self)[f]

    def pair_index(self, f: int) -> int:
        for k, m in enumerate(self.maps):
            if f in (m.source, m.target):
                return k
        raise GluingError(f"face {f} not in pattern")


@lru_cache(maxsize=4096)
def _face_table(p: GluingPattern) -> dict[int, GluingMap]:
    table = {}
    for m in p.maps:
        table[m.source] = m
        table[m.target] = m.inverse()
    return table


def act(h: Symmetry, p: GluingPattern) -> GluingPattern:
    """Transport pattern ``p`` along the symmetry ``h``."""
    return GluingPattern.from_maps(m.conjugate(h) for m in p.maps)


def validate(p: GluingPattern) -> None:
    """Re-check every pattern invariant; raises :class:`GluingError`."""
    GluingPattern(p.maps)
    for m in p.maps:
        GluingMap(m.source, m.target, m.images)
