"""64-bit cell identifiers for points on the unit sphere.

The sphere is projected from its center onto the six faces of the cube
[-1, 1]^3. Each face carries a 2**k by 2**k grid in area-equalised (s, t)
coordinates, and its cells are ordered along a Hilbert curve. Per-face
curve orientations make the six curves join end to end.

Bit layout of a cell id, most significant first::

    fff  pp pp ... pp  1  00...0
    face  2*level bits  sentinel

Face numbering: 0 = +x, 1 = +y, 2 = +z, 3 = -x, 4 = -y, 5 = -z.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .curve_core import DyadicSquare, QuarticInterval
from .hilbert import phi, phi_inverse

MAX_LEVEL = 30
POS_BITS = 2 * MAX_LEVEL + 1  # position bits plus sentinel below the face bits
EARTH_RADIUS_CM = 6.371e8

# 3-D point on face f at face coordinates (u, v); the face axis component is +-1
_FACE_FRAMES = (
    lambda u, v: (1.0, u, v),
    lambda u, v: (-u, 1.0, v),
    lambda u, v: (-u, -v, 1.0),
    lambda u, v: (-1.0, -v, -u),
    lambda u, v: (v, -1.0, -u),
    lambda u, v: (v, u, -1.0),
)

# (u, v) of a point whose dominant axis selects face f
_FACE_UV = (
    lambda x, y, z: (y / x, z / x),
    lambda x, y, z: (-x / y, z / y),
    lambda x, y, z: (-x / z, -y / z),
    lambda x, y, z: (z / x, y / x),
    lambda x, y, z: (z / y, -x / y),
    lambda x, y, z: (-y / z, -x / z),
)

# Grid symmetry applied to face cell (i, j) before the Hilbert ordering:
# odd faces transpose. With this choice the curve of face f ends at the cube
# corner where the curve of face f + 1 starts (and face 5 returns to face 0).
FACE_TRANSPOSED = (False, True, False, True, False, True)


@dataclass(frozen=True)
class LatLng:
    lat: float
    lng: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lng <= 180.0:
            raise ValueError(f"longitude {self.lng} outside [-180, 180]")


@dataclass(frozen=True)
class UnitVector:
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if abs(self.x * self.x + self.y * self.y + self.z * self.z - 1.0) > 1e-12:
            raise ValueError(f"({self.x}, {self.y}, {self.z}) is not a unit vector")

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> UnitVector:
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0:
            raise ValueError("cannot normalise the zero vector")
        return cls(x / n, y / n, z / n)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def angle(self, other: UnitVector) -> float:
        """Great-circle angle in radians; the atan2 form stays accurate for tiny angles."""
        cx = self.y * other.z - self.z * other.y
        cy = self.z * other.x - self.x * other.z
        cz = self.x * other.y - self.y * other.x
        dot = self.x * other.x + self.y * other.y + self.z * other.z
        return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), dot)


@dataclass(frozen=True)
class FaceUV:
    face: int
    u: float
    v: float

    def __post_init__(self) -> None:
        if self.face not in range(6):
            raise ValueError(f"face {self.face} not in 0..5")
        if abs(self.u) > 1 or abs(self.v) > 1:
            raise ValueError(f"face coordinates ({self.u}, {self.v}) outside [-1, 1]")


def latlng_to_vector(p: LatLng) -> UnitVector:
    lat, lng = math.radians(p.lat), math.radians(p.lng)
    return UnitVector.normalized(
        math.cos(lat) * math.cos(lng), math.cos(lat) * math.sin(lng), math.sin(lat)
    )


def vector_to_latlng(v: UnitVector) -> LatLng:
    lat = math.degrees(math.atan2(v.z, math.hypot(v.x, v.y)))
    lng = math.degrees(math.atan2(v.y, v.x))
    return LatLng(lat, lng)


def vector_face(x: float, y: float, z: float) -> int:
    """Face of the largest-magnitude component; ties go to the lowest face number."""
    comps = (x, y, z)
    big = max(abs(c) for c in comps)
    return min(a if comps[a] > 0 else a + 3 for a in range(3) if abs(comps[a]) == big)


def vector_to_face_uv(v: UnitVector) -> FaceUV:
    face = vector_face(v.x, v.y, v.z)
    u, w = _FACE_UV[face](v.x, v.y, v.z)
    # rounding can nudge |u| a hair past 1 on a face edge
    return FaceUV(face, max(-1.0, min(1.0, u)), max(-1.0, min(1.0, w)))


def face_uv_to_vector(f: FaceUV) -> UnitVector:
    return UnitVector.normalized(*_FACE_FRAMES[f.face](f.u, f.v))


def uv_to_st(u: float) -> float:
    if u >= 0:
        return 0.5 * math.sqrt(1.0 + 3.0 * u)
    return 1.0 - 0.5 * math.sqrt(1.0 - 3.0 * u)


def st_to_uv(s: float) -> float:
    if s >= 0.5:
        return (4.0 * s * s - 1.0) / 3.0
    return (1.0 - 4.0 * (1.0 - s) * (1.0 - s)) / 3.0


def _st_to_cell(s: float, level: int) -> int:
    n = 1 << level
    # interior grid lines belong to the lower/left cell
    return min(n - 1, max(0, math.ceil(s * n) - 1))


def face_ij_to_square(face: int, i: int, j: int, level: int) -> DyadicSquare:
    """Grid cell (i, j) of a face, expressed in that face's Hilbert frame."""
    if FACE_TRANSPOSED[face]:
        i, j = j, i
    return DyadicSquare(level, i, j)


def square_to_face_ij(face: int, square: DyadicSquare) -> tuple[int, int]:
    if FACE_TRANSPOSED[face]:
        return square.y, square.x
    return square.x, square.y


@dataclass(frozen=True, order=True)
class CellId:
    raw: int

    def __post_init__(self) -> None:
        if not 0 < self.raw < 1 << 64:
            raise ValueError(f"cell id {self.raw:#x} outside the 64-bit range or zero")
        if self.raw >> 61 >= 6:
            raise ValueError(f"cell id {self.raw:#018x} has face {self.raw >> 61}")
        low = (self.raw & -self.raw).bit_length() - 1
        if low % 2:
            raise ValueError(f"cell id {self.raw:#018x} has its sentinel at odd bit {low}")

    @classmethod
    def from_face_pos_level(cls, face: int, pos: int, level: int) -> CellId:
        if not 0 <= level <= MAX_LEVEL:
            raise ValueError(f"level must be in [0, {MAX_LEVEL}], got {level}")
        if not 0 <= face < 6:
            raise ValueError(f"face {face} not in 0..5")
        if not 0 <= pos < 4**level:
            raise ValueError(f"position {pos} out of range for level {level}")
        lsb = 1 << (2 * (MAX_LEVEL - level))
        return cls((face << POS_BITS) | (pos << (2 * (MAX_LEVEL - level) + 1)) | lsb)

    @classmethod
    def from_hex(cls, text: str) -> CellId:
        if not re.fullmatch(r"[0-9a-fA-F]{16}", text):
            raise ValueError(f"cell id must be 16 hexadecimal digits, got {text!r}")
        return cls(int(text, 16))

    def to_hex(self) -> str:
        return f"{self.raw:016x}"

    def __str__(self) -> str:
        return self.to_hex()

    @property
    def face(self) -> int:
        return self.raw >> POS_BITS

    @property
    def lsb(self) -> int:
        return self.raw & -self.raw

    @property
    def level(self) -> int:
        return MAX_LEVEL - (self.lsb.bit_length() - 1) // 2

    @property
    def pos(self) -> int:
        """Hilbert index of the cell within its face."""
        return (self.raw & ((1 << POS_BITS) - 1)) >> (2 * (MAX_LEVEL - self.level) + 1)


def encode_cell(p: LatLng, level: int) -> CellId:
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"level must be in [0, {MAX_LEVEL}], got {level}")
    return encode_vector(latlng_to_vector(p), level)


def encode_vector(v: UnitVector, level: int) -> CellId:
    fuv = vector_to_face_uv(v)
    i = _st_to_cell(uv_to_st(fuv.u), level)
    j = _st_to_cell(uv_to_st(fuv.v), level)
    pos = phi_inverse(face_ij_to_square(fuv.face, i, j, level)).index
    return CellId.from_face_pos_level(fuv.face, pos, level)


def decode_cell(c: CellId) -> tuple[int, DyadicSquare, int]:
    """(face, grid square in face (s, t) coordinates, level)."""
    level = c.level
    i, j = square_to_face_ij(c.face, phi(QuarticInterval(level, c.pos)))
    return c.face, DyadicSquare(level, i, j), level


def cell_parent(c: CellId) -> CellId:
    if c.level == 0:
        raise ValueError("level-0 cell has no parent")
    lsb = c.lsb << 2
    return CellId((c.raw & -lsb) | lsb)


def cell_children(c: CellId) -> tuple[CellId, CellId, CellId, CellId]:
    if c.level == MAX_LEVEL:
        raise ValueError(f"level-{MAX_LEVEL} cell has no children")
    lsb = c.lsb
    step = lsb >> 2
    base = c.raw - lsb + step
    return tuple(CellId(base + 2 * d * step) for d in range(4))


def curve_position(c: CellId) -> int:
    """Index along the single curve that visits face 0, then 1, ... then 5."""
    return c.face * 4**c.level + c.pos


def cell_from_curve_position(position: int, level: int) -> CellId:
    face, pos = divmod(position, 4**level)
    return CellId.from_face_pos_level(face, pos, level)


def cell_st_bounds(c: CellId) -> tuple[int, float, float, float, float]:
    """(face, s0, t0, s1, t1) of the cell's region on its face."""
    face, sq, level = decode_cell(c)
    n = float(1 << level)
    return face, sq.x / n, sq.y / n, (sq.x + 1) / n, (sq.y + 1) / n


def _st_vector(face: int, s: float, t: float) -> UnitVector:
    return face_uv_to_vector(FaceUV(face, st_to_uv(s), st_to_uv(t)))


def cell_corners(c: CellId) -> tuple[UnitVector, UnitVector, UnitVector, UnitVector]:
    """Corner vectors in counter-clockwise (s, t) order starting at (s0, t0)."""
    face, s0, t0, s1, t1 = cell_st_bounds(c)
    return (
        _st_vector(face, s0, t0),
        _st_vector(face, s1, t0),
        _st_vector(face, s1, t1),
        _st_vector(face, s0, t1),
    )


def cell_center(c: CellId) -> UnitVector:
    face, s0, t0, s1, t1 = cell_st_bounds(c)
    return _st_vector(face, 0.5 * (s0 + s1), 0.5 * (t0 + t1))


def triangle_excess(a: UnitVector, b: UnitVector, c: UnitVector) -> float:
    """Area of a spherical triangle on the unit sphere via L'Huilier's theorem."""
    sa, sb, sc = b.angle(c), c.angle(a), a.angle(b)
    s = 0.5 * (sa + sb + sc)
    prod = (
        math.tan(0.5 * s)
        * math.tan(0.5 * (s - sa))
        * math.tan(0.5 * (s - sb))
        * math.tan(0.5 * (s - sc))
    )
    return 4.0 * math.atan(math.sqrt(max(prod, 0.0)))


def cell_area_steradians(c: CellId) -> float:
    p0, p1, p2, p3 = cell_corners(c)
    return triangle_excess(p0, p1, p2) + triangle_excess(p0, p2, p3)


# ----- batch helpers over whole levels -----

def _np_st_to_uv(s: np.ndarray) -> np.ndarray:
    return np.where(s >= 0.5, (4.0 * s * s - 1.0) / 3.0, (1.0 - 4.0 * (1.0 - s) ** 2) / 3.0)


def _np_angle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    cross = np.linalg.norm(np.cross(a, b), axis=-1)
    return np.arctan2(cross, np.sum(a * b, axis=-1))


def _np_excess(a, b, c) -> np.ndarray:
    sa, sb, sc = _np_angle(b, c), _np_angle(c, a), _np_angle(a, b)
    s = 0.5 * (sa + sb + sc)
    prod = np.tan(0.5 * s) * np.tan(0.5 * (s - sa)) * np.tan(0.5 * (s - sb)) * np.tan(0.5 * (s - sc))
    return 4.0 * np.arctan(np.sqrt(np.maximum(prod, 0.0)))


def face_corner_grid(face: int, level: int) -> np.ndarray:
    """Unit vectors at the (n+1) x (n+1) grid corners of a face, indexed [i, j]."""
    n = 1 << level
    uv = _np_st_to_uv(np.arange(n + 1) / n)
    u, v = np.meshgrid(uv, uv, indexing="ij")
    pts = np.stack(np.broadcast_arrays(*_FACE_FRAMES[face](u, v)), axis=-1).astype(float)
    return pts / np.linalg.norm(pts, axis=-1, keepdims=True)


def level_areas(level: int) -> np.ndarray:
    """Steradian areas of every cell at ``level``, shaped (6, n, n) as [face, i, j]."""
    out = []
    for face in range(6):
        g = face_corner_grid(face, level)
        p0, p1, p2, p3 = g[:-1, :-1], g[1:, :-1], g[1:, 1:], g[:-1, 1:]
        out.append(_np_excess(p0, p1, p2) + _np_excess(p0, p2, p3))
    return np.stack(out)


# ----- neighbours on the cube surface -----

_FACE_AXIS = (0, 1, 2, 0, 1, 2)
_FACE_SIGN = (1, 1, 1, -1, -1, -1)


def _lattice_point(face: int, u: int, v: int, n: int) -> list[int]:
    x, y, z = _FACE_FRAMES[face](u, v)
    # frames put +-1.0 on the face axis; scale that slot to the lattice size
    p = [x, y, z]
    p[_FACE_AXIS[face]] = _FACE_SIGN[face] * n
    return [int(c) for c in p]


def cell_neighbor(face: int, i: int, j: int, level: int, di: int, dj: int) -> tuple[int, int, int]:
    """Edge neighbour of face cell (i, j) one step in direction (di, dj), across faces if needed.

    Works on the integer lattice of the cube scaled so cell centres have odd
    coordinates; a step off a face folds over the cube edge onto the next face.
    """
    n = 1 << level
    u, v = 2 * i + 1 - n + 2 * di, 2 * j + 1 - n + 2 * dj
    p = _lattice_point(face, u, v, n)
    axis = _FACE_AXIS[face]
    for a in range(3):
        if a != axis and abs(p[a]) > n:
            excess = abs(p[a]) - n
            p[a] = n if p[a] > 0 else -n
            p[axis] -= _FACE_SIGN[face] * excess
            face = a if p[a] > 0 else a + 3
            break
    fu, fv = _FACE_UV[face](*(c / n for c in p))
    return face, round((fu * n + n - 1) / 2), round((fv * n + n - 1) / 2)
