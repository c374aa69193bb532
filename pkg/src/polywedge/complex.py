"""Oriented polygonal 2-pseudomanifolds and their boundary operators.

A complex is described by its faces, each a cyclic sequence of vertex
indices. The cyclic order of a face *is* its orientation. Edges are
derived from the faces: by default an edge is stored with orientation
``(low, high)`` and edge ids follow the lexicographic order of these
pairs, so ids do not depend on the order in which faces are listed.

The i-th slot of a face ``(v_0, ..., v_{p-1})`` is the oriented edge
``(v_i, v_{(i+1) % p})``; its incidence number with the face is +1 when
that matches the stored edge orientation and -1 otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    DegenerateFace,
    DegreeOutOfRange,
    IncoherentOrientation,
    Nonorientable,
    NotAPseudomanifold,
    UnknownCell,
)

__all__ = [
    "PolygonalComplex",
    "IncidenceMatrix",
    "Chain",
    "build_complex",
    "coherently_orient",
    "boundary_matrix",
    "apply_boundary",
    "star_cells",
]


@dataclass(frozen=True)
class IncidenceMatrix:
    """Sparse integer matrix of incidence numbers.

    Rows are (n-1)-cells, columns are n-cells; ``entries`` maps
    ``(row, col)`` to +1 or -1 and every other entry is zero.
    """

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @cached_property
    def _csr(self) -> sp.csr_array:
        if self.entries:
            r, c = zip(*self.entries.keys())
            v = list(self.entries.values())
        else:
            r, c, v = (), (), ()
        return sp.csr_array(
            (np.asarray(v, dtype=np.int64), (np.asarray(r, dtype=np.intp), np.asarray(c, dtype=np.intp))),
            shape=self.shape,
        )

    def tosparse(self) -> sp.csr_array:
        return self._csr.copy()

    def toarray(self) -> np.ndarray:
        return self._csr.toarray()

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def column(self, col: int) -> np.ndarray:
        out = np.zeros(self.rows, dtype=np.int64)
        for (r, c), v in self.entries.items():
            if c == col:
                out[r] = v
        return out

    def __matmul__(self, other):
        if isinstance(other, IncidenceMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            return (self._csr @ other._csr).toarray()
        return self._csr @ np.asarray(other)

    def rmatvec(self, x):
        """Transpose action ``M.T @ x``; this is the coboundary."""
        return self._csr.T @ np.asarray(x)


@dataclass(frozen=True, eq=False)
class PolygonalComplex:
    """A validated, coherently oriented polygonal 2-pseudomanifold.

    Instances are immutable; build them with :func:`build_complex`.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    face_edges: tuple[tuple[int, ...], ...]
    face_signs: tuple[tuple[int, ...], ...]
    edge_faces: tuple[tuple[int, ...], ...]
    boundary_flag: bool
    coords: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return self.vertex_count

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def cell_count(self, degree: int) -> int:
        if degree == 0:
            return self.vertex_count
        if degree == 1:
            return len(self.edges)
        if degree == 2:
            return len(self.faces)
        if degree == 3:
            return 0
        raise DegreeOutOfRange(f"no cells of degree {degree}")

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges) + len(self.faces)

    @cached_property
    def edge_face_incidence(self) -> dict[tuple[int, int], int]:
        """``(face, edge) -> [face : edge]`` for every incident pair."""
        out = {}
        for f, (es, ss) in enumerate(zip(self.face_edges, self.face_signs)):
            for e, s in zip(es, ss):
                out[(f, e)] = s
        return out

    @cached_property
    def face_sizes(self) -> np.ndarray:
        return np.array([len(f) for f in self.faces], dtype=np.intp)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Unordered vertex pair (low, high) -> edge id."""
        return {(min(t, h), max(t, h)): i for i, (t, h) in enumerate(self.edges)}

    def edge_sign(self, tail: int, head: int) -> tuple[int, int]:
        """Edge id and sign such that ``(tail, head) == sign * edges[id]``."""
        e = self.edge_index[(min(tail, head), max(tail, head))]
        return e, (1 if self.edges[e] == (tail, head) else -1)

    @cached_property
    def face_groups(self) -> dict[int, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
        """Faces grouped by size ``p``.

        Maps ``p`` to ``(face_ids, vertices, edge_ids, signs)``; the last
        three are ``(n_p, p)`` arrays holding, per face slot, the vertex,
        the edge id and the face-edge incidence sign.
        """
        by_size: dict[int, list[int]] = {}
        for f, verts in enumerate(self.faces):
            by_size.setdefault(len(verts), []).append(f)
        groups = {}
        for p in sorted(by_size):
            ids = np.asarray(by_size[p], dtype=np.intp)
            verts = np.array([self.faces[f] for f in ids], dtype=np.intp).reshape(-1, p)
            eids = np.array([self.face_edges[f] for f in ids], dtype=np.intp).reshape(-1, p)
            signs = np.array([self.face_signs[f] for f in ids], dtype=np.int64).reshape(-1, p)
            for arr in (ids, verts, eids, signs):
                arr.flags.writeable = False
            groups[p] = (ids, verts, eids, signs)
        return groups

    @cached_property
    def _boundary(self) -> dict[int, IncidenceMatrix]:
        d1 = {}
        for e, (t, h) in enumerate(self.edges):
            d1[(h, e)] = 1
            d1[(t, e)] = -1
        d2 = {(e, f): s for (f, e), s in self.edge_face_incidence.items()}
        return {
            1: IncidenceMatrix(self.vertex_count, len(self.edges), d1),
            2: IncidenceMatrix(len(self.edges), len(self.faces), d2),
        }

    def face_lists(self) -> list[list[int]]:
        return [list(f) for f in self.faces]


@dataclass(frozen=True)
class Chain:
    """Integer coefficients on the oriented cells of one degree."""

    degree: int
    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coefficients, dtype=np.int64)
        if coeffs.ndim != 1:
            raise ValueError("chain coefficients must be one-dimensional")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, complex: PolygonalComplex, degree: int) -> Chain:
        return cls(degree, np.zeros(complex.cell_count(degree), dtype=np.int64))

    @classmethod
    def unit(cls, complex: PolygonalComplex, degree: int, cell: int, coefficient: int = 1) -> Chain:
        c = np.zeros(complex.cell_count(degree), dtype=np.int64)
        c[cell] = coefficient
        return cls(degree, c)

    def __neg__(self) -> Chain:
        return Chain(self.degree, -self.coefficients)

    def __add__(self, other: Chain) -> Chain:
        if self.degree != other.degree:
            raise ValueError("cannot add chains of different degree")
        return Chain(self.degree, self.coefficients + other.coefficients)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.coefficients, other.coefficients)

    def __hash__(self):
        return hash((self.degree, self.coefficients.tobytes()))


def _validate_faces(faces, vertex_count):
    out = []
    for fid, face in enumerate(faces):
        verts = tuple(int(v) for v in face)
        if len(verts) < 3:
            raise DegenerateFace(fid, f"needs at least 3 vertices, got {len(verts)}")
        if len(set(verts)) != len(verts):
            raise DegenerateFace(fid, "repeated vertex")
        for v in verts:
            if not 0 <= v < vertex_count:
                raise DegenerateFace(fid, f"vertex {v} out of range [0, {vertex_count})")
        out.append(verts)
    return out


def _face_slots(face):
    p = len(face)
    return [(face[i], face[(i + 1) % p]) for i in range(p)]


def _orientation_signs(faces, edge_faces, slot_sign):
    """BFS over the dual graph for face flips making every shared edge coherent.

    Returns ``(flips, bad_edge)``; ``flips[f]`` is +1 or -1 and
    ``bad_edge`` is the first edge where propagation hit a contradiction,
    or None if the complex is orientable.
    """
    n = len(faces)
    flips = [0] * n
    flips[0] = 1
    queue = deque([0])
    face_edges = [[] for _ in range(n)]
    for e, fs in enumerate(edge_faces):
        for f in fs:
            face_edges[f].append(e)
    while queue:
        f = queue.popleft()
        for e in face_edges[f]:
            fs = edge_faces[e]
            if len(fs) != 2:
                continue
            g = fs[1] if fs[0] == f else fs[0]
            # need flips[f]*[f:e] + flips[g]*[g:e] == 0
            want = -flips[f] * slot_sign[(f, e)] * slot_sign[(g, e)]
            if flips[g] == 0:
                flips[g] = want
                queue.append(g)
            elif flips[g] != want:
                return flips, e
    return flips, None


def coherently_orient(faces: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reverse faces as needed so all shared edges are coherently oriented.

    Face 0 keeps its orientation. Raises :class:`Nonorientable` if no
    coherent choice exists.
    """
    faces = [tuple(int(v) for v in f) for f in faces]
    if not faces:
        return []
    edge_map: dict[tuple[int, int], list[int]] = {}
    slot_sign = {}
    for fid, face in enumerate(faces):
        for t, h in _face_slots(face):
            key = (min(t, h), max(t, h))
            edge_map.setdefault(key, []).append(fid)
    keys = sorted(edge_map)
    edge_faces = [tuple(edge_map[k]) for k in keys]
    index = {k: i for i, k in enumerate(keys)}
    for fid, face in enumerate(faces):
        for t, h in _face_slots(face):
            slot_sign[(fid, index[(min(t, h), max(t, h))])] = 1 if t < h else -1
    _check_connected(len(faces), edge_faces)
    flips, bad = _orientation_signs(faces, edge_faces, slot_sign)
    if bad is not None:
        raise Nonorientable(keys[bad], edge_faces[bad], "coherent propagation fails")
    return [f if s > 0 else (f[0],) + tuple(reversed(f[1:])) for f, s in zip(faces, flips)]


def _check_connected(n_faces, edge_faces):
    if n_faces == 0:
        return
    adj = [[] for _ in range(n_faces)]
    for fs in edge_faces:
        if len(fs) == 2:
            a, b = fs
            adj[a].append(b)
            adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in seen:
                seen.add(g)
                stack.append(g)
    if len(seen) != n_faces:
        missing = sorted(set(range(n_faces)) - seen)
        raise NotAPseudomanifold(3, missing, "face-adjacency graph is disconnected")


def build_complex(
    faces: Iterable[Sequence[int]],
    vertex_count: int,
    coords=None,
    *,
    edges: Sequence[tuple[int, int]] | None = None,
    orient: bool = False,
) -> PolygonalComplex:
    """Validate face lists and build an oriented polygonal complex.

    Parameters
    ----------
    faces : iterable of vertex sequences
        Each face is a cyclic vertex sequence; its order fixes the face
        orientation.
    vertex_count : int
        Number of vertices. Every vertex must lie on some face.
    coords : array_like, optional
        ``(vertex_count, 3)`` coordinates, carried along but never used
        by the calculus.
    edges : sequence of (tail, head), optional
        Explicit edge ids and orientations. By default edges are the
        distinct face sides, stored low -> high and numbered in
        lexicographic order.
    orient : bool
        Reverse faces as needed to orient the complex coherently instead
        of rejecting incoherent input.

    Raises
    ------
    DegenerateFace, NotAPseudomanifold, IncoherentOrientation, Nonorientable
    """
    vertex_count = int(vertex_count)
    if vertex_count < 0:
        raise ValueError("vertex_count must be non-negative")
    faces = _validate_faces(faces, vertex_count)
    if not faces:
        raise NotAPseudomanifold(1, list(range(vertex_count)), "complex has no faces")
    if orient:
        faces = coherently_orient(faces)

    used_pairs = sorted({(min(t, h), max(t, h)) for f in faces for t, h in _face_slots(f)})
    if edges is None:
        edge_list = used_pairs
    else:
        edge_list = [(int(t), int(h)) for t, h in edges]
        keys = [(min(t, h), max(t, h)) for t, h in edge_list]
        if any(t == h for t, h in edge_list):
            raise ValueError("edge endpoints must differ")
        if len(set(keys)) != len(keys):
            raise ValueError("explicit edge list repeats a vertex pair")
        missing = sorted(set(used_pairs) - set(keys))
        if missing:
            raise ValueError(f"face sides {missing} are missing from the edge list")
        unused = [i for i, k in enumerate(keys) if k not in set(used_pairs)]
        if unused:
            raise NotAPseudomanifold(1, [("edge", i) for i in unused], "edge lies on no face")
    index = {(min(t, h), max(t, h)): i for i, (t, h) in enumerate(edge_list)}

    face_edges, face_signs = [], []
    edge_faces: list[list[int]] = [[] for _ in edge_list]
    slot_sign = {}
    for fid, face in enumerate(faces):
        es, ss = [], []
        for t, h in _face_slots(face):
            e = index[(min(t, h), max(t, h))]
            s = 1 if edge_list[e] == (t, h) else -1
            es.append(e)
            ss.append(s)
            edge_faces[e].append(fid)
            slot_sign[(fid, e)] = s
        face_edges.append(tuple(es))
        face_signs.append(tuple(ss))

    # condition 1: every vertex lies on a face
    on_face = np.zeros(vertex_count, dtype=bool)
    for f in faces:
        on_face[list(f)] = True
    if not on_face.all():
        raise NotAPseudomanifold(1, np.flatnonzero(~on_face).tolist(), "vertex lies on no face")
    # condition 2: an edge bounds at most two faces
    crowded = [e for e, fs in enumerate(edge_faces) if len(fs) > 2]
    if crowded:
        raise NotAPseudomanifold(2, crowded, "edge bounds more than two faces")
    # condition 3: faces are edge-connected
    _check_connected(len(faces), edge_faces)

    for e, fs in enumerate(edge_faces):
        if len(fs) == 2:
            f, g = fs
            if slot_sign[(f, e)] + slot_sign[(g, e)] != 0:
                flips, bad = _orientation_signs(faces, edge_faces, slot_sign)
                if bad is not None:
                    raise Nonorientable(edge_list[bad], edge_faces[bad], "coherent propagation fails")
                raise IncoherentOrientation(
                    edge_list[e], fs, "the complex is orientable; pass orient=True to fix"
                )

    if coords is not None:
        coords = np.array(coords, dtype=np.float64)
        if coords.shape != (vertex_count, 3):
            raise ValueError(f"coords must have shape ({vertex_count}, 3), got {coords.shape}")
        coords.flags.writeable = False

    cx = PolygonalComplex(
        vertex_count=vertex_count,
        edges=tuple(edge_list),
        faces=tuple(faces),
        face_edges=tuple(face_edges),
        face_signs=tuple(face_signs),
        edge_faces=tuple(tuple(fs) for fs in edge_faces),
        boundary_flag=any(len(fs) == 1 for fs in edge_faces),
        coords=coords,
    )
    _check_incidence(cx)
    return cx


def _check_incidence(cx: PolygonalComplex) -> None:
    # [f:e_a][e_a:v] + [f:e_b][e_b:v] == 0 for the two sides of f at v
    for fid, (verts, es, ss) in enumerate(zip(cx.faces, cx.face_edges, cx.face_signs)):
        p = len(verts)
        for i in range(p):
            v = verts[i]
            total = 0
            for slot in ((i - 1) % p, i):
                t, h = cx.edges[es[slot]]
                total += ss[slot] * (1 if v == h else -1 if v == t else 0)
            if total != 0:
                raise AssertionError(f"incidence condition violated at face {fid}, vertex {v}")


def boundary_matrix(c: PolygonalComplex, n: int) -> IncidenceMatrix:
    """Boundary operator from n-chains to (n-1)-chains, n in {1, 2}."""
    if n not in (1, 2):
        raise DegreeOutOfRange(f"boundary matrix of degree {n} is not defined")
    return c._boundary[n]


def apply_boundary(c: PolygonalComplex, chain: Chain) -> Chain:
    if chain.degree not in (1, 2):
        raise DegreeOutOfRange(f"boundary of a {chain.degree}-chain")
    m = boundary_matrix(c, chain.degree)
    if chain.coefficients.shape != (m.cols,):
        raise ValueError(f"chain has {chain.coefficients.size} coefficients, expected {m.cols}")
    return Chain(chain.degree - 1, m @ chain.coefficients)


def star_cells(c: PolygonalComplex, cell: tuple[int, int]) -> set[tuple[int, int]]:
    """Cells having ``cell`` as a face, the cell itself included.

    Cells are written ``(degree, id)``.
    """
    degree, idx = cell
    try:
        count = c.cell_count(degree)
    except DegreeOutOfRange:
        raise UnknownCell(f"no cells of degree {degree}") from None
    if degree == 3 or not 0 <= idx < count:
        raise UnknownCell(f"cell {cell} does not exist")
    out = {(degree, idx)}
    if degree == 0:
        for e, (t, h) in enumerate(c.edges):
            if idx in (t, h):
                out.add((1, e))
        for f, verts in enumerate(c.faces):
            if idx in verts:
                out.add((2, f))
    elif degree == 1:
        out.update((2, f) for f in c.edge_faces[idx])
    return out
