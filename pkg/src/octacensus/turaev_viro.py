"""Turaev-Viro state sums at q = exp(i pi / r).

Colours are twice-spins ``0 .. r-2``. A colouring of the edge classes of a
triangulation is weighted by ``(-1)^a [a+1]`` per edge and, per
tetrahedron, by the symmetric quantum 6j symbol times ``i^s`` with ``s``
the sum of its six colours (that is, ``(-1)`` to the sum of spins). The total is divided by
``D^2`` once per vertex whose link is a sphere, where
``D^2 = sum_a [a+1]^2``. Vertices with other links (the ideal vertices of
a census triangulation) carry no weight.

Quantum integers and 6j symbols are real at this root of unity, so the
magnitudes run in float64 and the phases are tracked as exact powers of
``i``; the imaginary part of the total is the residue checked against the
tolerance.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .triangulation import Triangulation

DEFAULT_TOLERANCE = 1e-9
DEFAULT_RMAX = 16

# per tetrahedron, the edge indices (see TET_EDGES) in 6j argument order:
# j1=01 j2=02 j3=12 j4=23 j5=13 j6=03
SIXJ_EDGES = (0, 1, 3, 5, 4, 2)


class Inadmissible(ValueError):
    """A colour triple violates parity, triangle or level bounds."""


class NumericalError(ArithmeticError):
    """A value that should be real has a large imaginary part."""


@dataclass(frozen=True)
class TVValue:
    value: float
    level: int
    tolerance: float = DEFAULT_TOLERANCE

    def __float__(self):
        return self.value

    def close_to(self, other: TVValue, tol: float = 1e-6) -> bool:
        return self.level == other.level and abs(self.value - other.value) <= tol * max(
            1.0, abs(self.value), abs(other.value))


def _check_level(r: int):
    if r < 3:
        raise ValueError(f"level must be at least 3, got {r}")


@lru_cache(maxsize=None)
def quantum_integers(r: int, tolerance: float = DEFAULT_TOLERANCE) -> tuple[float, ...]:
    """``[n]`` for ``n = 0 .. 2r``, computed as ``(q^n - q^-n) / (q - q^-1)``."""
    _check_level(r)
    q = cmath.exp(1j * math.pi / r)
    out = []
    for n in range(2 * r + 1):
        z = (q ** n - q ** -n) / (q - 1 / q)
        if abs(z.imag) > tolerance:
            raise NumericalError(f"[{n}] at level {r} has imaginary part {z.imag}")
        out.append(0.0 if n % r == 0 else z.real)
    return tuple(out)


@lru_cache(maxsize=None)
def quantum_factorials(r: int) -> tuple[float, ...]:
    """``[n]!`` for ``n = 0 .. 2r``; vanishes from ``n = r`` on."""
    qi = quantum_integers(r)
    out = [1.0]
    for n in range(1, 2 * r + 1):
        out.append(out[-1] * qi[n])
    return tuple(out)


def colours(r: int) -> range:
    return range(r - 1)


def quantum_dim(c: int, r: int) -> float:
    """``[c+1]``, the quantum dimension of twice-spin ``c``."""
    _check_level(r)
    if not 0 <= c <= r - 2:
        raise Inadmissible(f"colour {c} out of range at level {r}")
    return quantum_integers(r)[c + 1]


def edge_weight(c: int, r: int) -> float:
    return (-1) ** c * quantum_dim(c, r)


def total_dim_squared(r: int) -> float:
    qi = quantum_integers(r)
    return math.fsum(qi[c + 1] ** 2 for c in colours(r))


def admissible(a: int, b: int, c: int, r: int) -> bool:
    return ((a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b
            and a + b + c <= 2 * (r - 2))


def _delta(a: int, b: int, c: int, r: int) -> float:
    f = quantum_factorials(r)
    return math.sqrt(f[(a + b - c) // 2] * f[(a - b + c) // 2] * f[(b + c - a) // 2]
                     / f[(a + b + c) // 2 + 1])


def sixj(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int, r: int) -> float:
    """Symmetric quantum 6j symbol of twice-spins, via the Racah formula.

    The admissible triples are (j1 j2 j3), (j1 j5 j6), (j4 j2 j6), (j4 j5 j3).
    """
    triples = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    for t in triples:
        if not admissible(*t, r):
            raise Inadmissible(f"triple {t} is not admissible at level {r}")
    f = quantum_factorials(r)
    a = [sum(t) // 2 for t in triples]
    b = [(j1 + j2 + j4 + j5) // 2, (j2 + j3 + j5 + j6) // 2, (j3 + j1 + j6 + j4) // 2]
    total = []
    for z in range(max(a), min(b) + 1):
        den = f[b[0] - z] * f[b[1] - z] * f[b[2] - z]
        for x in a:
            den *= f[z - x]
        total.append((-1) ** z * f[z + 1] / den)
    pre = 1.0
    for t in triples:
        pre *= _delta(*t, r)
    return pre * math.fsum(total)


@lru_cache(maxsize=None)
def admissibility_table(r: int) -> np.ndarray:
    n = r - 1
    tab = np.zeros((n, n, n), dtype=bool)
    for a, b, c in itertools.product(range(n), repeat=3):
        tab[a, b, c] = admissible(a, b, c, r)
    return tab


@lru_cache(maxsize=None)
def sixj_table(r: int) -> np.ndarray:
    """All 6j symbols at level ``r``, zero where inadmissible."""
    n = r - 1
    adm = admissibility_table(r)
    tab = np.zeros((n,) * 6)
    for j1, j2, j3 in zip(*np.nonzero(adm)):
        for j5, j6 in itertools.product(range(n), repeat=2):
            if not adm[j1, j5, j6]:
                continue
            for j4 in range(n):
                if adm[j4, j2, j6] and adm[j4, j5, j3]:
                    tab[j1, j2, j3, j4, j5, j6] = sixj(int(j1), int(j2), int(j3), j4, j5, j6, r)
    return tab


@lru_cache(maxsize=None)
def weight_table(r: int) -> np.ndarray:
    return np.array([edge_weight(c, r) for c in colours(r)])


# ----------------------------------------------------------------------
# state sums


@dataclass(frozen=True)
class StateSumData:
    """Combinatorics of a triangulation needed by the state sum."""

    num_edges: int
    tets: tuple[tuple[int, ...], ...]  # edge classes in 6j argument order
    triangles: tuple[tuple[int, int, int], ...]
    finite_vertices: int


def state_sum_data(t: Triangulation) -> StateSumData:
    ec = t.edge_class
    tets = tuple(tuple(ec[(i, e)] for e in SIXJ_EDGES) for i in range(t.size))
    triangles = set()
    for i in range(t.size):
        j1, j2, j3, j4, j5, j6 = tets[i]
        for tri in ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)):
            triangles.add(tuple(sorted(tri)))
    finite = sum(1 for chi in t.vertex_link_euler if chi == 2)
    return StateSumData(t.num_edges, tets, tuple(sorted(triangles)), finite)


def _edge_order(data: StateSumData) -> list[int]:
    """Greedy order: next edge closes the most triangles, then touches the most."""
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < data.num_edges:
        def score(e):
            closes = sum(1 for tri in data.triangles
                         if e in tri and all(x in placed or x == e for x in tri))
            touches = sum(1 for tri in data.triangles if e in tri)
            return (closes, touches, -e)
        e = max((e for e in range(data.num_edges) if e not in placed), key=score)
        order.append(e)
        placed.add(e)
    return order


def admissible_colourings(data: StateSumData, r: int) -> np.ndarray:
    """All colourings with every triangle admissible, rows in lexicographic
    order of the processing order; columns indexed by edge class."""
    n = r - 1
    adm = admissibility_table(r)
    order = _edge_order(data)
    pos = {}
    states = np.zeros((1, 0), dtype=np.int8)
    for e in order:
        pos[e] = len(pos)
        k = states.shape[0]
        states = np.concatenate([np.repeat(states, n, axis=0),
                                 np.tile(np.arange(n, dtype=np.int8), k)[:, None]], axis=1)
        for tri in data.triangles:
            if e in tri and all(x in pos for x in tri):
                a, b, c = (states[:, pos[x]] for x in tri)
                states = states[adm[a, b, c]]
    return states[:, [pos[e] for e in range(data.num_edges)]]


def all_colourings(num_edges: int, r: int) -> np.ndarray:
    n = r - 1
    grid = np.indices((n,) * num_edges, dtype=np.int8)
    return grid.reshape(num_edges, -1).T


def colouring_terms(data: StateSumData, states: np.ndarray, r: int):
    """Weight of each colouring (rows indexed by edge class).

    Returns ``(terms, phase)``: the real magnitudes and, per row, the
    exponent ``k`` mod 4 of the factor ``i^k`` collected from the
    tetrahedron phases ``i^(sum of the six colours)``.
    """
    w = weight_table(r)
    tab = sixj_table(r)
    terms = np.ones(states.shape[0])
    for e in range(data.num_edges):
        terms = terms * w[states[:, e]]
    phase = np.zeros(states.shape[0], dtype=np.int64)
    for tet in data.tets:
        cols = tuple(states[:, e] for e in tet)
        terms = terms * tab[cols]
        for c in cols:
            phase += c
    return terms, phase % 4


def _normalize(data: StateSumData, total: float, r: int) -> float:
    return total / total_dim_squared(r) ** data.finite_vertices


CHUNK = 1 << 20


def _sum_terms(data, states, r) -> tuple[float, float]:
    """Exactly rounded real and imaginary parts of the raw state sum."""
    real, imag = [], []
    for i in range(0, states.shape[0], CHUNK):
        terms, phase = colouring_terms(data, states[i:i + CHUNK], r)
        sign = np.where(phase >= 2, -1.0, 1.0)
        signed = (terms * sign).tolist()
        odd = (phase % 2).astype(bool).tolist()
        for x, o in zip(signed, odd):
            (imag if o else real).append(x)
    return math.fsum(real), math.fsum(imag)


def _value(data, states, r, tolerance) -> TVValue:
    re, im = _sum_terms(data, states, r)
    re, im = _normalize(data, re, r), _normalize(data, im, r)
    if abs(im) > tolerance:
        raise NumericalError(f"state sum at level {r} has imaginary part {im}")
    return TVValue(re, r, tolerance)


def tv_invariant(t: Triangulation, r: int, tolerance: float = DEFAULT_TOLERANCE,
                 r_max: int = DEFAULT_RMAX) -> TVValue:
    """Turaev-Viro invariant of ``t`` at level ``r`` (pruned enumeration)."""
    _check_level(r)
    if r > r_max:
        raise ValueError(f"level {r} exceeds the configured maximum {r_max}")
    quantum_integers(r, tolerance)
    data = state_sum_data(t)
    return _value(data, admissible_colourings(data, r), r, tolerance)


def tv_invariant_full(t: Triangulation, r: int,
                      tolerance: float = DEFAULT_TOLERANCE) -> TVValue:
    """Same state sum over every colouring, inadmissible ones included.

    Exponential in the number of edges; meant as an oracle for small cases.
    """
    data = state_sum_data(t)
    return _value(data, all_colourings(data.num_edges, r), r, tolerance)


def fingerprint(p, r_max: int = 8):
    """H1 together with TV_r of the census triangulation for ``3 <= r <= r_max``."""
    from .homology import h1
    from .triangulation import octa_to_tri
    t = octa_to_tri(p)
    return h1(p), [tv_invariant(t, r, r_max=max(r_max, DEFAULT_RMAX)) for r in range(3, r_max + 1)]
