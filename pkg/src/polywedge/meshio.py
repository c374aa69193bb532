"""Text formats: OFF and OBJ polygon meshes, and the DFORM cochain format.

DFORM layout::

    DFORM <degree> <cell_count>
    <value 0>
    ...
    <value cell_count-1>

Values are written with ``repr`` (shortest round-trip decimal), so a
write/read cycle reproduces every float64 bit for bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .complex import PolygonalComplex, build_complex
from .errors import (
    CountMismatch,
    IndexOutOfRange,
    MalformedHeader,
    MalformedLine,
    UnparseableNumber,
)
from .forms import DiscreteForm

__all__ = [
    "RawMesh",
    "parse_off",
    "parse_obj",
    "parse_mesh",
    "serialize_off",
    "serialize_obj",
    "read_form",
    "write_form",
    "load_mesh",
    "load_complex",
    "load_form",
]

# dot-decimal only; no underscores, hex, or locale separators
_FLOAT_RE = re.compile(r"[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|inf|infinity|nan)", re.IGNORECASE)
_INT_RE = re.compile(r"[+-]?\d+")


@dataclass
class RawMesh:
    coords: np.ndarray
    faces: list[tuple[int, ...]]

    @property
    def vertex_count(self) -> int:
        return int(self.coords.shape[0])

    def to_complex(self, *, orient: bool = False) -> PolygonalComplex:
        return build_complex(self.faces, self.vertex_count, self.coords, orient=orient)


def _to_text(data) -> str:
    if isinstance(data, (bytes, bytearray, memoryview)):
        try:
            return bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedHeader(f"not UTF-8 text ({exc.reason})") from None
    if not isinstance(data, str):
        raise TypeError("expected str or bytes")
    return data


def _float(tok, lineno):
    if not _FLOAT_RE.fullmatch(tok):
        raise UnparseableNumber(f"cannot parse number {tok!r}", lineno)
    return float(tok)


def _int(tok, lineno, what="integer"):
    if not _INT_RE.fullmatch(tok):
        raise MalformedLine(f"expected {what}, got {tok!r}", lineno)
    return int(tok)


def _content_lines(text):
    """(line number, tokens) for non-empty lines, comments stripped."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        toks = line.split()
        if toks:
            yield lineno, toks


def parse_off(text) -> RawMesh:
    text = _to_text(text)
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or first[1][0] != "OFF":
        raise MalformedHeader("missing OFF keyword", first[0] if first else 1)
    lineno, toks = first
    counts = toks[1:]
    if not counts:
        nxt = next(lines, None)
        if nxt is None:
            raise MalformedHeader("missing 'V F E' counts line", lineno + 1)
        lineno, counts = nxt
    if len(counts) < 2 or len(counts) > 3:
        raise MalformedHeader("counts line must be 'V F [E]'", lineno)
    nv, nf = (_int(t, lineno, "count") for t in counts[:2])
    if len(counts) == 3:
        _int(counts[2], lineno, "count")
    if nv < 0 or nf < 0:
        raise MalformedHeader("negative count", lineno)

    coords = []
    for _ in range(nv):
        nxt = next(lines, None)
        if nxt is None:
            raise CountMismatch(f"expected {nv} vertices, found {len(coords)}", lineno)
        lineno, toks = nxt
        if len(toks) < 3:
            raise MalformedLine("vertex line needs 3 coordinates", lineno)
        coords.append([_float(t, lineno) for t in toks[:3]])
    faces = []
    for _ in range(nf):
        nxt = next(lines, None)
        if nxt is None:
            raise CountMismatch(f"expected {nf} faces, found {len(faces)}", lineno)
        lineno, toks = nxt
        p = _int(toks[0], lineno, "face size")
        if p < 3:
            raise MalformedLine(f"face needs at least 3 vertices, got {p}", lineno)
        if len(toks) < p + 1:
            raise MalformedLine(f"face lists {len(toks) - 1} indices, expected {p}", lineno)
        idx = tuple(_int(t, lineno, "vertex index") for t in toks[1 : p + 1])
        for i in idx:
            if not 0 <= i < nv:
                raise IndexOutOfRange(f"vertex index {i} not in [0, {nv})", lineno)
        faces.append(idx)
    extra = next(lines, None)
    if extra is not None:
        raise CountMismatch("trailing data after the declared faces", extra[0])
    return RawMesh(np.asarray(coords, dtype=np.float64).reshape(nv, 3), faces)


def parse_obj(text) -> RawMesh:
    text = _to_text(text)
    coords = []
    raw_faces = []
    for lineno, toks in _content_lines(text):
        kind = toks[0]
        if kind == "v":
            if len(toks) < 4:
                raise MalformedLine("vertex line needs 3 coordinates", lineno)
            coords.append([_float(t, lineno) for t in toks[1:4]])
        elif kind == "f":
            if len(toks) < 4:
                raise MalformedLine("face needs at least 3 vertices", lineno)
            idx = tuple(_int(t.split("/", 1)[0], lineno, "vertex index") for t in toks[1:])
            raw_faces.append((lineno, idx))
    nv = len(coords)
    faces = []
    for lineno, idx in raw_faces:
        for i in idx:
            if not 1 <= i <= nv:
                raise IndexOutOfRange(f"vertex index {i} not in [1, {nv}]", lineno)
        faces.append(tuple(i - 1 for i in idx))
    return RawMesh(np.asarray(coords, dtype=np.float64).reshape(nv, 3), faces)


def parse_mesh(text, fmt: str | None = None) -> RawMesh:
    """Parse OFF or OBJ text; without ``fmt`` the OFF keyword decides."""
    if fmt is None:
        body = _to_text(text)
        head = next(_content_lines(body), (None, [""]))[1][0]
        fmt = "off" if head == "OFF" else "obj"
    fmt = fmt.lower()
    if fmt == "off":
        return parse_off(text)
    if fmt == "obj":
        return parse_obj(text)
    raise ValueError(f"unknown mesh format {fmt!r}")


def _coords_of(mesh):
    if isinstance(mesh, PolygonalComplex):
        coords = mesh.coords if mesh.coords is not None else np.zeros((mesh.vertex_count, 3))
        return coords, mesh.faces
    return mesh.coords, mesh.faces


def serialize_off(mesh) -> str:
    coords, faces = _coords_of(mesh)
    out = ["OFF", f"{len(coords)} {len(faces)} 0"]
    out += [" ".join(repr(float(x)) for x in row) for row in coords]
    out += [" ".join(str(v) for v in (len(f), *f)) for f in faces]
    return "\n".join(out) + "\n"


def serialize_obj(mesh) -> str:
    coords, faces = _coords_of(mesh)
    out = ["v " + " ".join(repr(float(x)) for x in row) for row in coords]
    out += ["f " + " ".join(str(v + 1) for v in f) for f in faces]
    return "\n".join(out) + "\n"


def write_form(form: DiscreteForm) -> str:
    vals = form.values
    lines = [f"DFORM {form.degree} {vals.size}"]
    lines += [repr(float(v)) for v in vals]
    return "\n".join(lines) + "\n"


def read_form(text, complex: PolygonalComplex) -> DiscreteForm:
    """Parse DFORM text into a form on ``complex``."""
    text = _to_text(text)
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise MalformedHeader("empty form file", 1)
    lineno, header = lines[0]
    toks = header.split()
    if len(toks) != 3 or toks[0] != "DFORM":
        raise MalformedHeader("expected 'DFORM <degree> <cell_count>'", lineno)
    degree = _int(toks[1], lineno, "degree")
    count = _int(toks[2], lineno, "cell count")
    if degree not in (0, 1, 2, 3):
        raise MalformedHeader(f"degree {degree} not in 0..3", lineno)
    body = lines[1:]
    if len(body) != count:
        raise CountMismatch(f"header declares {count} values, found {len(body)}", lineno)
    expected = complex.cell_count(degree)
    if count != expected:
        raise CountMismatch(f"complex has {expected} cells of degree {degree}, form has {count}", lineno)
    values = []
    for ln, tok in body:
        if len(tok.split()) != 1:
            raise UnparseableNumber(f"expected one number, got {tok!r}", ln)
        values.append(_float(tok, ln))
    return DiscreteForm(degree, np.asarray(values, dtype=np.float64), complex)


def load_mesh(path, fmt: str | None = None) -> RawMesh:
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt is None:
        suffix = str(path).rsplit(".", 1)[-1].lower()
        fmt = suffix if suffix in ("off", "obj") else None
    return parse_mesh(data, fmt)


def load_complex(path, fmt: str | None = None, *, orient: bool = False) -> PolygonalComplex:
    return load_mesh(path, fmt).to_complex(orient=orient)


def load_form(path, complex: PolygonalComplex) -> DiscreteForm:
    with open(path, "rb") as fh:
        return read_form(fh.read(), complex)

