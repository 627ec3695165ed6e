"""Lattice primitives: cubes, colors, regions, planar bases and cylinders.

Conventions used throughout the package:

  * A basic cube is addressed by its minimal integer corner ``(x, y, z)``
    and occupies ``corner + [0, 1]^3``.
  * ``color(c) = +1`` (black) iff ``x + y + z`` is odd, ``-1`` (white) iff
    even.  Every sign-sensitive formula in the package depends on this one
    definition.
  * Cube centers are half-integer points; where exactness matters they are
    carried as doubled integers (``center2``), so centers are odd triples.
  * Directions are the six unit vectors ``(+-1, 0, 0)`` etc., plain tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidRegionError

Vec = tuple[int, int, int]
Square = tuple[int, int]

EX: Vec = (1, 0, 0)
EY: Vec = (0, 1, 0)
EZ: Vec = (0, 0, 1)

#: The three positive coordinate directions.
AXES: tuple[Vec, Vec, Vec] = (EX, EY, EZ)

#: All six unit directions (the set the theory calls Phi).
UNIT_VECTORS: tuple[Vec, ...] = (
    (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
)

_AXIS_NAMES = {"x": EX, "y": EY, "z": EZ}
_NAME_OF_AXIS = {EX: "x", EY: "y", EZ: "z"}


def add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def neg(u: Vec) -> Vec:
    return (-u[0], -u[1], -u[2])


def scale(k: int, u: Vec) -> Vec:
    return (k * u[0], k * u[1], k * u[2])


def dot(u: Vec, v: Vec) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Vec, v: Vec) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(p: Vec, q: Vec, r: Vec) -> int:
    """Determinant of the 3x3 matrix with columns p, q, r."""
    return dot(p, cross(q, r))


def is_unit(u: Vec) -> bool:
    return u in UNIT_VECTORS


def axis_index(u: Vec) -> int:
    """0, 1 or 2 for a unit vector along x, y or z."""
    if not is_unit(u):
        raise ValueError(f"not a unit direction: {u!r}")
    return 0 if u[0] else 1 if u[1] else 2


def axis_name(u: Vec) -> str:
    return _NAME_OF_AXIS[u if sum(u) > 0 else neg(u)]


def axis_from_name(name: str) -> Vec:
    try:
        return _AXIS_NAMES[name]
    except KeyError:
        raise ValueError(f"axis must be one of x, y, z: {name!r}") from None


def color(cube: Vec) -> int:
    """+1 for a black cube, -1 for a white one."""
    return 1 if (cube[0] + cube[1] + cube[2]) % 2 else -1


def center2(cube: Vec) -> Vec:
    """The cube's center, in doubled coordinates (an odd integer triple)."""
    return (2 * cube[0] + 1, 2 * cube[1] + 1, 2 * cube[2] + 1)


def cube_of_center2(p: Vec) -> Vec:
    """Inverse of :func:`center2`."""
    if any(c % 2 == 0 for c in p):
        raise ValueError(f"not a doubled cube center: {p!r}")
    return ((p[0] - 1) // 2, (p[1] - 1) // 2, (p[2] - 1) // 2)


class Basis(tuple):
    """A positively oriented orthonormal basis with entries in Phi.

    There are exactly 24 of these; they are the symmetry frame for slant
    projections and writhe computations.
    """

    __slots__ = ()

    def __new__(cls, b1: Vec, b2: Vec, b3: Vec):
        for b in (b1, b2, b3):
            if not is_unit(b):
                raise ValueError(f"basis entries must be unit directions: {b!r}")
        if dot(b1, b2) or dot(b2, b3) or dot(b1, b3):
            raise ValueError("basis entries must be pairwise orthogonal")
        if det3(b1, b2, b3) != 1:
            raise ValueError("basis must be positively oriented")
        return super().__new__(cls, (b1, b2, b3))

    @property
    def b1(self) -> Vec:
        return self[0]

    @property
    def b2(self) -> Vec:
        return self[1]

    @property
    def b3(self) -> Vec:
        return self[2]

    @staticmethod
    def around(b3: Vec) -> "Basis":
        """The cyclic right-handed basis whose third vector is b3."""
        i = axis_index(b3)
        s = sum(b3)
        b1 = scale(s, AXES[(i + 1) % 3])
        b2 = AXES[(i + 2) % 3]
        return Basis(b1, b2, b3)


def all_bases() -> tuple[Basis, ...]:
    """All 24 positively oriented bases with entries in Phi."""
    out = []
    for b1, b2 in itertools.permutations(UNIT_VECTORS, 2):
        if dot(b1, b2) == 0:
            out.append(Basis(b1, b2, cross(b1, b2)))
    return tuple(out)


def plane_axes(axis: Vec) -> tuple[Vec, Vec]:
    """In-plane coordinate directions for a plane normal to `axis`.

    Cyclic convention: x -> (y, z), y -> (z, x), z -> (x, y).  The pair is
    right-handed with the positive axis: det(a1, a2, axis) = +1.
    """
    i = axis_index(axis)
    return AXES[(i + 1) % 3], AXES[(i + 2) % 3]


@dataclass(frozen=True)
class PlanarRegion:
    """A finite set of unit squares in a lattice plane.

    ``squares`` holds in-plane coordinates along :func:`plane_axes` of the
    (positive) axis; the square ``(i, j)`` at level ``l`` on an x-normal
    plane is ``{x = l} x [i, i+1]_y x [j, j+1]_z`` and so on cyclically.
    """

    axis: Vec
    level: int
    squares: frozenset[Square]

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"plane axis must be a positive unit direction: {self.axis!r}")

    @staticmethod
    def of(axis: Vec, level: int, squares: Iterable[Square]) -> "PlanarRegion":
        sqs = []
        for s in squares:
            i, j = s
            sqs.append((int(i), int(j)))
        fs = frozenset(sqs)
        if len(fs) != len(sqs):
            raise InvalidRegionError("duplicate squares in planar region")
        return PlanarRegion(axis, int(level), fs)

    def __len__(self) -> int:
        return len(self.squares)

    def cube_at(self, square: Square, offset: int) -> Vec:
        """Cube obtained by extruding `square` by `offset` layers along axis."""
        a1, a2 = plane_axes(self.axis)
        i, j = square
        return add(add(scale(i, a1), scale(j, a2)), scale(self.level + offset, self.axis))

    def square_colors(self) -> dict[Square, int]:
        """Color of the offset-0 cube over each square."""
        return {s: color(self.cube_at(s, 0)) for s in self.squares}

    def is_balanced(self) -> bool:
        return sum(self.square_colors().values()) == 0


def _connected(cells: frozenset[Square]) -> bool:
    if not cells:
        return True
    seen = set()
    stack = [next(iter(cells))]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        i, j = c
        for n in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if n in cells and n not in seen:
                stack.append(n)
    return len(seen) == len(cells)


def interior_connected(squares: frozenset[Square]) -> bool:
    """Whether the squares form a single edge-connected patch."""
    return _connected(squares)


def simply_connected(squares: frozenset[Square]) -> bool:
    """Edge-connected and without holes.

    A hole shows up as a component of the complement that does not reach the
    one-ring padding of the bounding rectangle.
    """
    if not squares:
        return True
    if not _connected(squares):
        return False
    is_ = [s[0] for s in squares]
    js = [s[1] for s in squares]
    lo_i, hi_i = min(is_) - 1, max(is_) + 1
    lo_j, hi_j = min(js) - 1, max(js) + 1
    complement = frozenset(
        (i, j)
        for i in range(lo_i, hi_i + 1)
        for j in range(lo_j, hi_j + 1)
        if (i, j) not in squares
    )
    return _connected(complement)


class Region:
    """A finite union of basic cubes, with set semantics."""

    __slots__ = ("cubes", "_hash")

    cubes: frozenset[Vec]

    def __init__(self, cubes: Iterable[Vec]):
        object.__setattr__(self, "cubes", frozenset((int(x), int(y), int(z)) for x, y, z in cubes))
        object.__setattr__(self, "_hash", hash(self.cubes))

    def __setattr__(self, *a):
        raise AttributeError("Region is immutable")

    @staticmethod
    def of(cubes: Iterable[Vec]) -> "Region":
        listed = [(int(x), int(y), int(z)) for x, y, z in cubes]
        if len(set(listed)) != len(listed):
            raise InvalidRegionError("duplicate cubes in region")
        return Region(listed)

    def __contains__(self, cube: Vec) -> bool:
        return cube in self.cubes

    def __iter__(self) -> Iterator[Vec]:
        return iter(self.cubes)

    def __len__(self) -> int:
        return len(self.cubes)

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self.cubes == other.cubes

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Region({len(self.cubes)} cubes)"

    def sorted_cubes(self) -> list[Vec]:
        return sorted(self.cubes)

    def bounds(self) -> tuple[Vec, Vec]:
        """(lo, hi) with cube corners in lo .. hi-1 componentwise."""
        if not self.cubes:
            return (0, 0, 0), (0, 0, 0)
        xs, ys, zs = zip(*self.cubes)
        return (min(xs), min(ys), min(zs)), (max(xs) + 1, max(ys) + 1, max(zs) + 1)

    def color_counts(self) -> tuple[int, int]:
        """(black, white) cube counts."""
        black = sum(1 for c in self.cubes if color(c) == 1)
        return black, len(self.cubes) - black

    def is_balanced(self) -> bool:
        black, white = self.color_counts()
        return black == white

    def translate(self, b: Vec) -> "Region":
        return Region(add(c, b) for c in self.cubes)

    def union(self, other: "Region") -> "Region":
        if self.cubes & other.cubes:
            raise InvalidRegionError("regions overlap")
        return Region(self.cubes | other.cubes)


def make_box(L: int, M: int, N: int) -> Region:
    """The box [0,L] x [0,M] x [0,N] as a set of L*M*N cubes."""
    if L < 1 or M < 1 or N < 1:
        raise ValueError(f"box dimensions must be positive: {(L, M, N)}")
    return Region(itertools.product(range(L), range(M), range(N)))


def make_cylinder(base: PlanarRegion, axis: Vec, depth: int) -> Region:
    """The extrusion of `base` by `depth` layers along `axis`.

    `axis` may be the base plane's normal or its negation; extrusion along
    the negation stacks layers on the other side of the plane.
    """
    if depth < 1:
        raise ValueError(f"depth must be positive: {depth}")
    if axis != base.axis and axis != neg(base.axis):
        raise ValueError("extrusion axis must be normal to the base plane")
    if not base.squares:
        raise ValueError("empty base")
    sign = 1 if axis == base.axis else -1
    offsets = range(depth) if sign == 1 else range(-depth, 0)
    return Region(base.cube_at(s, k) for s in base.squares for k in offsets)


@dataclass(frozen=True)
class CylinderStructure:
    """One axis along which a region is an extruded planar base."""

    base: PlanarRegion
    axis: Vec
    depth: int
    simply_connected: bool


@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify`: the region's shape kind plus every axis
    realizing it as an extrusion."""

    kind: str  # "box" | "cylinder" | "pseudocylinder" | "other"
    structures: tuple[CylinderStructure, ...]

    @property
    def axes(self) -> tuple[Vec, ...]:
        return tuple(s.axis for s in self.structures)

    def structure(self, axis: Vec) -> CylinderStructure:
        for s in self.structures:
            if s.axis == axis or s.axis == neg(axis):
                return s
        raise ValueError(f"region is not an extrusion along {axis!r}")


def _extrusion_along(region: Region, axis: Vec) -> CylinderStructure | None:
    """Recognize region == base + [0, depth] * axis, or None."""
    a1, a2 = plane_axes(axis)
    columns: dict[Square, list[int]] = {}
    for c in region.cubes:
        columns.setdefault((dot(c, a1), dot(c, a2)), []).append(dot(c, axis))
    profile = None
    for ks in columns.values():
        ks.sort()
        if ks[-1] - ks[0] + 1 != len(ks):
            return None
        if profile is None:
            profile = (ks[0], len(ks))
        elif profile != (ks[0], len(ks)):
            return None
    assert profile is not None
    level, depth = profile
    squares = frozenset(columns)
    if not interior_connected(squares):
        return None
    base = PlanarRegion(axis, level, squares)
    return CylinderStructure(base, axis, depth, simply_connected(squares))


def classify(region: Region) -> Classification:
    """Shape of a region: box, cylinder, pseudocylinder or other.

    Every positive axis for which the region is an extrusion of a planar
    base with connected interior is reported; a cylinder additionally has a
    simply connected base, and a (nonempty) box qualifies along all three.
    """
    if not region.cubes:
        return Classification("other", ())
    structures = tuple(
        s for axis in AXES if (s := _extrusion_along(region, axis)) is not None
    )
    lo, hi = region.bounds()
    is_box = len(region) == (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2])
    if is_box:
        kind = "box"
    elif any(s.simply_connected for s in structures):
        kind = "cylinder"
    elif structures:
        kind = "pseudocylinder"
    else:
        kind = "other"
    return Classification(kind, structures)


def is_fully_balanced(region: Region, u: Vec) -> bool:
    """Whether every 2x2 window normal to `u` has color-balanced shades.

    For each 2x2 square Q contained in the region, the cubes of the region
    inside the closed shade of Q on either side along u must sum to color
    zero.  Pseudocylinders always pass; general regions need not.
    """
    if not is_unit(u):
        raise ValueError(f"not a unit direction: {u!r}")
    if u not in AXES:
        u = neg(u)  # the predicate is symmetric in u and -u
    if not region.cubes:
        return True
    a1, a2 = plane_axes(u)
    # Column view: (i, j) footprint -> set of levels along u.
    columns: dict[Square, set[int]] = {}
    for c in region.cubes:
        columns.setdefault((dot(c, a1), dot(c, a2)), set()).add(dot(c, u))
    lo, hi = region.bounds()
    ai = axis_index(u)
    levels = range(lo[ai], hi[ai] + 1)

    def cube_color(q: Square, k: int) -> int:
        return color(add(add(scale(q[0], a1), scale(q[1], a2)), scale(k, u)))

    for (i, j) in columns:
        quad = ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1))
        if not all(q in columns for q in quad):
            continue
        for level in levels:
            # Q = the 2x2 square at this level; contained in the region iff
            # each unit square touches a region cube on one of its sides.
            if not all(
                level in columns[q] or (level - 1) in columns[q] for q in quad
            ):
                continue
            above = sum(
                cube_color(q, k) for q in quad for k in columns[q] if k >= level
            )
            below = sum(
                cube_color(q, k) for q in quad for k in columns[q] if k < level
            )
            if above != 0 or below != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# JSON forms


def region_to_json(region: Region) -> dict:
    return {"cubes": [list(c) for c in region.sorted_cubes()]}


def planar_region_to_json(base: PlanarRegion) -> dict:
    return {
        "base": [list(s) for s in sorted(base.squares)],
        "plane": {"axis": axis_name(base.axis), "level": base.level},
    }


def planar_region_from_json(obj: dict) -> PlanarRegion:
    if not isinstance(obj, dict) or "base" not in obj:
        raise InvalidRegionError(
            "planar region JSON needs a 'base' list of [i, j] squares"
        )
    plane = obj.get("plane", {"axis": "z", "level": 0})
    axis = axis_from_name(plane.get("axis", "z"))
    level = int(plane.get("level", 0))
    try:
        squares = [(int(i), int(j)) for i, j in obj["base"]]
    except (TypeError, ValueError) as exc:
        raise InvalidRegionError(f"malformed 'base' squares: {exc}") from exc
    return PlanarRegion.of(axis, level, squares)


def region_from_json(obj: dict) -> Region:
    """Parse a region from its JSON form.

    Accepts ``{"cubes": [[x,y,z], ...]}``, the box shorthand
    ``{"box": [L,M,N]}`` and the cylinder shorthand
    ``{"cylinder": {"base": [[i,j],...], "plane": {"axis": "z", "level": 0},
    "depth": n}}``.  Duplicate cubes are rejected.
    """
    if not isinstance(obj, dict):
        raise InvalidRegionError("region JSON must be an object")
    keys = [k for k in ("cubes", "box", "cylinder") if k in obj]
    if len(keys) != 1:
        raise InvalidRegionError(
            "region JSON needs exactly one of 'cubes', 'box', 'cylinder'"
        )
    key = keys[0]
    if key == "cubes":
        cubes = [(int(x), int(y), int(z)) for x, y, z in obj["cubes"]]
        return Region.of(cubes)
    if key == "box":
        L, M, N = (int(v) for v in obj["box"])
        return make_box(L, M, N)
    spec = obj["cylinder"]
    base = planar_region_from_json(spec)
    return make_cylinder(base, base.axis, int(spec["depth"]))
