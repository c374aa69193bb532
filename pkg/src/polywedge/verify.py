"""Random generators and executable property checks.

Every identity the polygonal cup product is known to satisfy is exposed
as a named property. :func:`check_property` runs it over generated
(complex, forms) instances and reports the worst deviation seen. All
randomness derives from an explicit integer seed, so a report can be
reproduced from ``(name, trials, seed, profile)`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .complex import PolygonalComplex, boundary_matrix, build_complex, star_cells
from .errors import DegreeOutOfRange, UnknownProperty
from .forms import DiscreteForm, exterior_derivative
from .wedge import (
    cubical_cup_values,
    cup,
    cup11_face,
    cup_coefficient,
    cup_values,
    simplicial_cup_values,
)

__all__ = [
    "PROFILES",
    "PROPERTIES",
    "PropertyReport",
    "gen_complex",
    "gen_form",
    "derive_seed",
    "check_property",
    "telescoping_sides",
]

PROFILES = ("triangles", "quads", "mixed", "sphere", "torus", "disk")

FLOAT_TOL = 1e-12
COUNTEREXAMPLE_MIN = 1e-6
MAX_FACE = 12

DEGREE_PAIRS = [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (1, 1)]


def derive_seed(seed: int, *keys: int) -> int:
    """A 63-bit seed derived from ``seed`` and integer keys."""
    ss = np.random.SeedSequence([int(seed), *(int(k) for k in keys)])
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


# -- mesh generators ---------------------------------------------------------

def _grid(nx, ny, wrap):
    mx = nx if wrap else nx + 1
    my = ny if wrap else ny + 1
    vid = lambda i, j: (i % mx) * my + (j % my)
    faces = [(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)) for i in range(nx) for j in range(ny)]
    coords = np.zeros((mx * my, 3))
    for i in range(mx):
        for j in range(my):
            if wrap:
                u, v = 2 * np.pi * i / mx, 2 * np.pi * j / my
                coords[vid(i, j)] = ((2 + np.cos(v)) * np.cos(u), (2 + np.cos(v)) * np.sin(u), np.sin(v))
            else:
                coords[vid(i, j)] = (i, j, 0.0)
    return faces, coords


def _cube_surface(n):
    """Quadrangulated boundary of the cube [0, n]^3, outward oriented."""
    index = {}
    pts = []

    def vid(p):
        if p not in index:
            index[p] = len(pts)
            pts.append(p)
        return index[p]

    faces = []
    for axis in range(3):
        u, w = [a for a in range(3) if a != axis]
        for side in (0, n):
            outward = 1 if side == n else -1
            for a in range(n):
                for b in range(n):
                    corners = []
                    for da, db in ((0, 0), (1, 0), (1, 1), (0, 1)):
                        p = [0, 0, 0]
                        p[axis], p[u], p[w] = side, a + da, b + db
                        corners.append(tuple(p))
                    p0, p1, p2 = (np.array(c) for c in corners[:3])
                    normal = np.cross(p1 - p0, p2 - p0)
                    if normal[axis] * outward < 0:
                        corners = [corners[0]] + corners[:0:-1]
                    faces.append(tuple(vid(c) for c in corners))
    return faces, np.array(pts, dtype=np.float64)


def _triangulate(faces, rng, prob):
    out = []
    for f in faces:
        if len(f) == 4 and rng.random() < prob:
            a, b, c, d = f
            if rng.random() < 0.5:
                out += [(a, b, c), (a, c, d)]
            else:
                out += [(a, b, d), (b, c, d)]
        else:
            out.append(f)
    return out


def _merge_faces(faces, rng, attempts, max_size=MAX_FACE):
    """Randomly fuse edge-adjacent face pairs into larger simple polygons.

    A pair is fused only when the two faces share exactly the endpoints
    of one edge, so the union never repeats a vertex.
    """
    faces = [tuple(f) for f in faces]
    for _ in range(attempts):
        if len(faces) < 2:
            break
        edge_map = {}
        for k, f in enumerate(faces):
            for i in range(len(f)):
                t, h = f[i], f[(i + 1) % len(f)]
                edge_map.setdefault((min(t, h), max(t, h)), []).append(k)
        k = int(rng.integers(len(faces)))
        f = faces[k]
        i = int(rng.integers(len(f)))
        u, w = f[i], f[(i + 1) % len(f)]
        owners = edge_map[(min(u, w), max(u, w))]
        if len(owners) != 2:
            continue
        m = owners[0] if owners[1] == k else owners[1]
        g = faces[m]
        if len(f) + len(g) - 2 > max_size or set(f) & set(g) != {u, w}:
            continue
        kf = f.index(w)
        f_rot = f[kf:] + f[:kf]  # w ... u
        kg = g.index(u)
        g_rot = g[kg:] + g[:kg]  # u ... w
        merged = f_rot + g_rot[1:-1]
        faces = [x for j, x in enumerate(faces) if j not in (k, m)] + [merged]
    return faces


def _base_surface(topology, rng):
    if topology == "disk":
        return _grid(int(rng.integers(2, 6)), int(rng.integers(2, 6)), wrap=False)
    if topology == "torus":
        return _grid(int(rng.integers(3, 6)), int(rng.integers(3, 6)), wrap=True)
    if topology == "sphere":
        return _cube_surface(int(rng.integers(1, 4)))
    raise ValueError(topology)


def _shuffle(faces, coords, rng):
    """Relabel vertices, reorder faces and rotate each face's start."""
    perm = rng.permutation(len(coords))
    faces = [tuple(int(perm[v]) for v in f) for f in faces]
    new_coords = np.empty_like(coords)
    new_coords[perm] = coords
    faces = [faces[i] for i in rng.permutation(len(faces))]
    out = []
    for f in faces:
        s = int(rng.integers(len(f)))
        out.append(f[s:] + f[:s])
    return out, new_coords


def gen_complex(seed: int, profile: str = "mixed") -> PolygonalComplex:
    """Deterministic random complex of the given profile.

    ``sphere``, ``torus`` and ``disk`` fix the topology and mix triangles,
    quads and merged polygons; ``triangles`` and ``quads`` fix the face
    type over a random topology; ``mixed`` merges a triangulation into
    polygons with 3 to 12 sides.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    rng = np.random.default_rng(int(seed))
    if profile in ("sphere", "torus", "disk"):
        topology = profile
    else:
        topology = ("disk", "sphere", "torus")[int(rng.integers(3))]
    faces, coords = _base_surface(topology, rng)
    if profile == "triangles":
        faces = _triangulate(faces, rng, 1.0)
    elif profile == "mixed":
        faces = _triangulate(faces, rng, 1.0)
        faces = _merge_faces(faces, rng, attempts=2 * len(faces))
    elif profile != "quads":
        faces = _triangulate(faces, rng, float(rng.random()))
        faces = _merge_faces(faces, rng, attempts=int(rng.integers(0, len(faces) + 1)))
    faces, coords = _shuffle(faces, coords, rng)
    return build_complex(faces, len(coords), coords)


def gen_form(seed: int, complex: PolygonalComplex, degree: int) -> DiscreteForm:
    """Form with independent uniform values in [-1, 1]."""
    if degree not in (0, 1, 2):
        raise DegreeOutOfRange(f"cannot generate a {degree}-form")
    rng = np.random.default_rng(int(seed))
    return DiscreteForm(degree, rng.uniform(-1.0, 1.0, complex.cell_count(degree)), complex)


# -- reports -----------------------------------------------------------------

@dataclass
class PropertyReport:
    name: str
    trials: int
    max_deviation: float
    tolerance: float
    passed: bool
    mode: str = "identity"
    witness: dict | None = field(default=None)

    def to_text(self) -> str:
        lines = [
            f"property={self.name}",
            f"mode={self.mode}",
            f"trials={self.trials}",
            f"max_deviation={self.max_deviation!r}",
            f"tolerance={self.tolerance!r}",
            f"status={'pass' if self.passed else 'fail'}",
        ]
        if self.witness is not None:
            for k in sorted(self.witness):
                lines.append(f"witness.{k}={self.witness[k]}")
        return "\n".join(lines) + "\n"


@dataclass
class _Outcome:
    deviation: float
    cell: object = None
    extra: dict = field(default_factory=dict)


def _maxabs(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    return float(np.max(np.abs(x))) if x.size else 0.0


def _argmax(x):
    x = np.asarray(x, dtype=np.float64)
    return int(np.argmax(np.abs(x))) if x.size else None


# -- individual properties ---------------------------------------------------
# Each takes (rng, complex) and returns an _Outcome.

def _prop_boundary_sq_zero(rng, c):
    prod = boundary_matrix(c, 1) @ boundary_matrix(c, 2)
    return _Outcome(float(np.max(np.abs(prod), initial=0)))


def _prop_dd_zero(rng, c):
    a = DiscreteForm(0, rng.integers(-1000, 1001, c.vertex_count).astype(np.float64), c)
    dd = exterior_derivative(exterior_derivative(a)).values
    b = DiscreteForm(1, rng.integers(-1000, 1001, c.n_edges).astype(np.float64), c)
    top = exterior_derivative(exterior_derivative(b)).values
    dev = max(_maxabs(dd), _maxabs(top))
    return _Outcome(dev, ("face", _argmax(dd)))


def _rand_form(rng, c, degree):
    return DiscreteForm(degree, rng.uniform(-1.0, 1.0, c.cell_count(degree)), c)


def _leibniz(rng, c, l):
    a = _rand_form(rng, c, 0)
    b = _rand_form(rng, c, l)
    lhs = exterior_derivative(cup(a, b)).values
    rhs = (cup(exterior_derivative(a), b) + cup(a, exterior_derivative(b))).values
    diff = lhs - rhs
    return _Outcome(_maxabs(diff), (l + 1, _argmax(diff)))


def _prop_leibniz00(rng, c):
    return _leibniz(rng, c, 0)


def _prop_leibniz01(rng, c):
    return _leibniz(rng, c, 1)


def _prop_skew(rng, c):
    dev, cell = 0.0, None
    for k, l in DEGREE_PAIRS:
        a, b = _rand_form(rng, c, k), _rand_form(rng, c, l)
        diff = cup(a, b).values - (-1) ** (k * l) * cup(b, a).values
        if _maxabs(diff) > dev or cell is None:
            dev, cell = max(dev, _maxabs(diff)), (k + l, _argmax(diff))
    return _Outcome(dev, cell)


def _prop_unit(rng, c):
    one = DiscreteForm.constant(c, 1.0)
    dev = 0.0
    for q in (0, 1, 2):
        a = _rand_form(rng, c, q)
        dev = max(dev, _maxabs(cup(one, a).values - a.values), _maxabs(cup(a, one).values - a.values))
    return _Outcome(dev)


def _prop_bilinear(rng, c):
    dev = 0.0
    for k, l in DEGREE_PAIRS:
        t = float(rng.uniform(-1, 1))
        a, a2 = _rand_form(rng, c, k), _rand_form(rng, c, k)
        b, b2 = _rand_form(rng, c, l), _rand_form(rng, c, l)
        left = cup(t * a + a2, b).values - (t * cup(a, b).values + cup(a2, b).values)
        right = cup(a, t * b + b2).values - (t * cup(a, b).values + cup(a, b2).values)
        dev = max(dev, _maxabs(left), _maxabs(right))
    return _Outcome(dev)


def _assoc_dev(a, b, g):
    return cup(a, cup(b, g)).values - cup(cup(a, b), g).values


def _prop_assoc_closed(rng, c):
    const = lambda: DiscreteForm.constant(c, float(rng.uniform(-1, 1)))
    dev = 0.0
    # three 0-forms: always associative
    dev = max(dev, _maxabs(_assoc_dev(_rand_form(rng, c, 0), _rand_form(rng, c, 0), _rand_form(rng, c, 0))))
    for m in (1, 2):
        # closed first factor, then closed second factor
        dev = max(dev, _maxabs(_assoc_dev(const(), _rand_form(rng, c, 0), _rand_form(rng, c, m))))
        dev = max(dev, _maxabs(_assoc_dev(_rand_form(rng, c, 0), const(), _rand_form(rng, c, m))))
    dev = max(dev, _maxabs(_assoc_dev(const(), _rand_form(rng, c, 1), _rand_form(rng, c, 1))))
    return _Outcome(dev)


def _prop_assoc_counterexample(rng, c):
    best = _Outcome(0.0)
    for m in (1, 2):
        a, b, g = _rand_form(rng, c, 0), _rand_form(rng, c, 0), _rand_form(rng, c, m)
        diff = _assoc_dev(a, b, g)
        if _maxabs(diff) > best.deviation:
            best = _Outcome(_maxabs(diff), (m, _argmax(diff)), {"degrees": f"(0,0,{m})"})
    return best


def telescoping_sides(beta, i):
    """Both sides of the per-index identity behind the (0,1) Leibniz rule.

    Returns ``((b[i-1] + b[i]) / 2, rhs)`` where ``rhs`` is the
    weighted telescoping sum over offsets ``1 .. (n-1)//2``.
    """
    beta = np.asarray(beta, dtype=np.float64)
    n = beta.size
    b = lambda j: beta[j % n]
    lhs = (b(i - 1) + b(i)) / 2
    acc = 0.0
    for s in range(1, (n - 1) // 2 + 1):
        acc += (n - 2 * s) * (b(i + s - 1) - b(i + s) + b(i - s) - b(i - s - 1))
    rhs = (acc + 2 * beta.sum()) / (2 * n)
    return lhs, rhs


def _prop_telescoping(rng, c, n):
    beta = rng.uniform(-1, 1, n)
    dev, worst = 0.0, 0
    for i in range(n):
        lhs, rhs = telescoping_sides(beta, i)
        if abs(lhs - rhs) > dev:
            dev, worst = abs(lhs - rhs), i
    return _Outcome(dev, ("index", worst), {"n": n})


def _to_fractions(values):
    return np.array([Fraction(float(v)) for v in values], dtype=object)


def _specialize(rng, c, reference, p, weight11):
    dev, cell = 0.0, None
    if cup_coefficient(p, 1) != weight11 or (p - 1) // 2 != 1:
        return _Outcome(float("inf"), ("coefficient", p))
    for k, l in DEGREE_PAIRS:
        a = _to_fractions(rng.uniform(-1, 1, c.cell_count(k)))
        b = _to_fractions(rng.uniform(-1, 1, c.cell_count(l)))
        ours = cup_values(c, k, a, l, b)
        ref = reference(c, k, a, l, b)
        diff = np.array([float(x - y) for x, y in zip(ours, ref)])
        if _maxabs(diff) > dev or cell is None:
            dev, cell = max(dev, _maxabs(diff)), (k + l, _argmax(diff))
    return _Outcome(dev, cell)


def _prop_specialize_simplicial(rng, c):
    return _specialize(rng, c, simplicial_cup_values, 3, Fraction(1, 6))


def _prop_specialize_cubical(rng, c):
    return _specialize(rng, c, cubical_cup_values, 4, Fraction(1, 4))


def _reversed_face(f):
    return (f[0],) + tuple(reversed(f[1:]))


def _prop_orientation_covariance(rng, c):
    rev = build_complex([_reversed_face(f) for f in c.faces], c.vertex_count, edges=c.edges)
    a0, a1, b1, b2 = (_rand_form(rng, c, q) for q in (0, 1, 1, 2))
    dev = 0.0
    # same cochains written on the reversed complex: 1-forms unchanged, 2-forms negated
    r11 = cup_values(rev, 1, a1.values, 1, b1.values)
    dev = max(dev, _maxabs(r11 + cup(a1, b1).values))
    r02 = cup_values(rev, 0, a0.values, 2, -b2.values)
    dev = max(dev, _maxabs(r02 + cup(a0, b2).values))
    # single-face reversal: slot i of the reversed face is slot -i-1 traversed backwards
    for f in range(c.n_faces):
        view_e, view_s = np.asarray(c.face_edges[f]), np.asarray(c.face_signs[f])
        al, bl = a1.values[view_e] * view_s, b1.values[view_e] * view_s
        p = al.size
        back = [(-i - 1) % p for i in range(p)]
        dev = max(dev, abs(cup11_face(-al[back], -bl[back]) + cup11_face(al, bl)))
    return _Outcome(dev)


def _prop_locality(rng, c):
    k, l = DEGREE_PAIRS[int(rng.integers(len(DEGREE_PAIRS)))]
    target = int(rng.integers(c.cell_count(k + l)))
    a, b = _rand_form(rng, c, k), _rand_form(rng, c, l)
    a2, b2 = a.values.copy(), b.values.copy()
    for deg, arr in ((k, a2), (l, b2)):
        for s in range(arr.size):
            if (k + l, target) not in star_cells(c, (deg, s)):
                arr[s] += rng.uniform(1, 2)
    before = cup(a, b).values[target]
    after = cup(DiscreteForm(k, a2, c), DiscreteForm(l, b2, c)).values[target]
    return _Outcome(abs(float(after - before)), (k + l, target), {"degrees": f"({k},{l})"})


def _prop_rotation_invariance(rng, c):
    faces = []
    for f in c.faces:
        s = int(rng.integers(len(f)))
        faces.append(f[s:] + f[:s])
    rot = build_complex(faces, c.vertex_count, edges=c.edges)
    dev = 0.0
    for k, l in ((1, 1), (0, 2), (0, 1)):
        a, b = _rand_form(rng, c, k), _rand_form(rng, c, l)
        dev = max(dev, _maxabs(cup_values(rot, k, a.values, l, b.values) - cup(a, b).values))
    return _Outcome(dev)


@dataclass(frozen=True)
class _Spec:
    func: Callable
    tolerance: float
    profiles: tuple[str, ...]
    mode: str = "identity"
    needs_complex: bool = True


PROPERTIES: dict[str, _Spec] = {
    "dd_zero": _Spec(_prop_dd_zero, 0.0, PROFILES),
    "boundary_sq_zero": _Spec(_prop_boundary_sq_zero, 0.0, PROFILES),
    "leibniz00": _Spec(_prop_leibniz00, FLOAT_TOL, ("mixed",)),
    "leibniz01": _Spec(_prop_leibniz01, FLOAT_TOL, ("mixed",)),
    "skew": _Spec(_prop_skew, FLOAT_TOL, PROFILES),
    "unit": _Spec(_prop_unit, 0.0, PROFILES),
    "bilinear": _Spec(_prop_bilinear, FLOAT_TOL, PROFILES),
    "assoc_closed": _Spec(_prop_assoc_closed, FLOAT_TOL, PROFILES),
    "assoc_counterexample": _Spec(_prop_assoc_counterexample, COUNTEREXAMPLE_MIN, ("mixed",), "counterexample"),
    "telescoping_eq9": _Spec(_prop_telescoping, FLOAT_TOL, (), needs_complex=False),
    "specialize_simplicial": _Spec(_prop_specialize_simplicial, 0.0, ("triangles",)),
    "specialize_cubical": _Spec(_prop_specialize_cubical, 0.0, ("quads",)),
    "orientation_covariance": _Spec(_prop_orientation_covariance, FLOAT_TOL, PROFILES),
    "locality": _Spec(_prop_locality, 0.0, PROFILES),
    "rotation_invariance": _Spec(_prop_rotation_invariance, FLOAT_TOL, PROFILES),
}


def check_property(
    name: str,
    trials: int = 100,
    seed: int = 0,
    profile: str | None = None,
    tol: float | None = None,
) -> PropertyReport:
    """Run property ``name`` on ``trials`` generated instances.

    Identity properties pass when the largest deviation is within the
    tolerance (0 means exact equality); the witness then stays empty,
    and on failure it records the first offending trial.
    ``assoc_counterexample`` instead searches for a deviation above the
    tolerance and passes once it finds one, reporting it as the witness.
    """
    if name not in PROPERTIES:
        raise UnknownProperty(f"unknown property {name!r}; choose from {sorted(PROPERTIES)}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    spec = PROPERTIES[name]
    if profile is not None and profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    tolerance = spec.tolerance if tol is None else float(tol)
    profiles = (profile,) if profile else spec.profiles

    max_dev = 0.0
    witness = None
    done = 0
    for t in range(trials):
        done = t + 1
        info = {"trial": t}
        rng = np.random.default_rng(derive_seed(seed, t, 1))
        if spec.needs_complex:
            prof = profiles[t % len(profiles)]
            mesh_seed = derive_seed(seed, t, 0)
            c = gen_complex(mesh_seed, prof)
            out = spec.func(rng, c)
            info.update(profile=prof, mesh_seed=mesh_seed)
        else:
            out = spec.func(rng, None, 3 + t % 10)
        info["form_seed"] = derive_seed(seed, t, 1)
        if out.cell is not None:
            info["cell"] = out.cell
        info.update(out.extra)
        max_dev = max(max_dev, out.deviation)
        if spec.mode == "counterexample":
            if out.deviation > tolerance:
                info["deviation"] = repr(out.deviation)
                witness = info
                break
        elif out.deviation > tolerance and witness is None:
            info["deviation"] = repr(out.deviation)
            witness = info
    if spec.mode == "counterexample":
        passed = witness is not None
    else:
        passed = max_dev <= tolerance
    return PropertyReport(name, done, max_dev, tolerance, passed, spec.mode, witness)
