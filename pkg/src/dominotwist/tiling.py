"""Dominoes, tilings, the dimer view, and lossless text codecs.

A domino is an ordered pair (white cube, black cube) of face-adjacent
cubes, so its orientation vector ``v(d) = center(black) - center(white)``
is just field order.  A tiling stores its dominoes in canonical order
(sorted by white corner), which makes equality, hashing and digests
deterministic.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, NamedTuple, Sequence

from . import geometry as geo
from .errors import TilingError, UnsupportedRegionError
from .geometry import Region, Vec, center2, color, sub


class Domino(NamedTuple):
    white: Vec
    black: Vec

    @staticmethod
    def of(white: Vec, black: Vec) -> "Domino":
        """Strict constructor: checks colors and face adjacency."""
        if color(white) != -1:
            raise TilingError("colors", white, f"cube {white} is not white")
        if color(black) != 1:
            raise TilingError("colors", black, f"cube {black} is not black")
        if sub(black, white) not in geo.UNIT_VECTORS:
            raise TilingError(
                "colors", white, f"cubes {white} and {black} are not face-adjacent"
            )
        return Domino(white, black)

    @staticmethod
    def pair(a: Vec, b: Vec) -> "Domino":
        """Unordered constructor: sorts the two cubes into (white, black)."""
        return Domino.of(a, b) if color(a) == -1 else Domino.of(b, a)

    @property
    def direction(self) -> Vec:
        """v(d): the unit step from the white center to the black center."""
        return sub(self.black, self.white)

    @property
    def cells(self) -> tuple[Vec, Vec]:
        return (self.white, self.black)

    def translate(self, b: Vec) -> "Domino":
        # A translation with odd coordinate sum swaps the two cube colors.
        w, k = geo.add(self.white, b), geo.add(self.black, b)
        return Domino(w, k) if sum(b) % 2 == 0 else Domino(k, w)


class Segment(NamedTuple):
    """An oriented unit segment between cube centers, in doubled coordinates.

    ``start`` and ``end`` are odd integer triples (centers times two); a
    segment is a dimer iff its start is a white cube's center.
    """

    start: Vec
    end: Vec

    @property
    def direction(self) -> Vec:
        """The unit direction of traversal (undoubled)."""
        d = sub(self.end, self.start)
        return (d[0] // 2, d[1] // 2, d[2] // 2)

    def reverse(self) -> "Segment":
        return Segment(self.end, self.start)

    def translate2(self, b2: Vec) -> "Segment":
        return Segment(geo.add(self.start, b2), geo.add(self.end, b2))


def dimer_of(d: Domino) -> Segment:
    return Segment(center2(d.white), center2(d.black))


def domino_of_dimer(s: Segment) -> Domino:
    return Domino.of(geo.cube_of_center2(s.start), geo.cube_of_center2(s.end))


class Tiling:
    """A partition of a region into dominoes, in canonical order."""

    __slots__ = ("region", "dominoes", "_hash", "_cells")

    region: Region
    dominoes: tuple[Domino, ...]

    def __init__(self, region: Region, dominoes: Iterable[Domino]):
        object.__setattr__(self, "region", region)
        object.__setattr__(self, "dominoes", tuple(sorted(dominoes)))
        object.__setattr__(self, "_hash", hash(self.dominoes))
        object.__setattr__(self, "_cells", None)

    def __setattr__(self, *a):
        raise AttributeError("Tiling is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Tiling) and self.dominoes == other.dominoes

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.dominoes)

    def __iter__(self):
        return iter(self.dominoes)

    def __repr__(self) -> str:
        return f"Tiling({len(self.dominoes)} dominoes, digest {self.digest()[:8]})"

    def digest(self) -> str:
        h = hashlib.blake2b(digest_size=16)
        for d in self.dominoes:
            h.update(repr(d.cells).encode())
        return h.hexdigest()

    def domino_at(self, cube: Vec) -> Domino:
        return self._by_cube()[cube]

    def _by_cube(self) -> dict[Vec, Domino]:
        cached = self._cells
        if cached is None:
            cached = {cell: d for d in self.dominoes for cell in d.cells}
            object.__setattr__(self, "_cells", cached)
        return cached

    def translate(self, b: Vec) -> "Tiling":
        return Tiling(self.region.translate(b), (d.translate(b) for d in self.dominoes))

    def replace(self, removed: Sequence[Domino], placed: Sequence[Domino]) -> "Tiling":
        """New tiling with `removed` swapped for `placed` (cells must match)."""
        current = set(self.dominoes)
        for d in removed:
            if d not in current:
                raise TilingError("gap", d.white, f"domino {d} not in tiling")
            current.remove(d)
        rem_cells = {c for d in removed for c in d.cells}
        new_cells = {c for d in placed for c in d.cells}
        if rem_cells != new_cells:
            raise TilingError("overlap", next(iter(new_cells)), "replacement cells mismatch")
        current.update(placed)
        return Tiling(self.region, current)

    def union(self, other: "Tiling") -> "Tiling":
        """Disjoint union of two tilings (regions must not overlap)."""
        return Tiling(self.region.union(other.region), self.dominoes + other.dominoes)


def validate(region: Region, dominoes: Iterable[Domino]) -> Tiling:
    """Check that the dominoes partition the region, reporting the first
    offending cube otherwise."""
    seen: set[Vec] = set()
    doms = sorted(dominoes)
    for d in doms:
        for cell in d.cells:
            if cell not in region:
                raise TilingError("outside", cell, f"cube {cell} outside region")
            if cell in seen:
                raise TilingError("overlap", cell, f"cube {cell} covered twice")
            seen.add(cell)
    if len(seen) != len(region):
        missing = min(region.cubes - seen)
        raise TilingError("gap", missing, f"cube {missing} not covered")
    return Tiling(region, doms)


def base_tiling(region: Region, axis: Vec) -> Tiling:
    """The tiling of an even-depth pseudocylinder whose dominoes are all
    parallel to the axis, pairing consecutive layers."""
    cls = geo.classify(region)
    try:
        structure = cls.structure(axis)
    except ValueError:
        raise UnsupportedRegionError(
            f"region is not a pseudocylinder with axis {axis!r}"
        ) from None
    if structure.depth % 2:
        raise UnsupportedRegionError(
            f"base tiling needs even depth, got {structure.depth}"
        )
    base = structure.base
    dominoes = []
    for s in base.squares:
        for k in range(0, structure.depth, 2):
            dominoes.append(Domino.pair(base.cube_at(s, k), base.cube_at(s, k + 1)))
    return validate(region, dominoes)


def to_dimers(t: Tiling) -> frozenset[Segment]:
    return frozenset(dimer_of(d) for d in t.dominoes)


def from_dimers(region: Region, segments: Iterable[Segment]) -> Tiling:
    return validate(region, (domino_of_dimer(s) for s in segments))


# ---------------------------------------------------------------------------
# JSON form


def tiling_to_json(t: Tiling) -> dict:
    return {"dominoes": [[list(d.white), list(d.black)] for d in t.dominoes]}


def tiling_from_json(obj: dict, region: Region | None = None) -> Tiling:
    """Parse ``{"dominoes": [[[x,y,z],[x',y',z']], ...]}`` (white cube first).

    The region defaults to the union of the dominoes' cells; pass one
    explicitly to additionally check coverage of a known region.
    """
    if not isinstance(obj, dict) or "dominoes" not in obj:
        raise TilingError("gap", None, "tiling JSON must contain 'dominoes'")
    doms = [
        Domino.of((int(w[0]), int(w[1]), int(w[2])), (int(b[0]), int(b[1]), int(b[2])))
        for w, b in obj["dominoes"]
    ]
    if region is None:
        cells = [c for d in doms for c in d.cells]
        if len(set(cells)) != len(cells):
            dup = next(c for c in cells if cells.count(c) > 1)
            raise TilingError("overlap", dup, f"cube {dup} covered twice")
        region = Region(cells)
    return validate(region, doms)


# ---------------------------------------------------------------------------
# ASCII floor codec
#
# Floors are printed left to right in increasing axis coordinate and share a
# common in-plane bounding rectangle.  Within a floor, columns grow with the
# first in-plane direction and rows are printed top-down with the second
# in-plane direction decreasing.  Cell characters:
#
#   E W N S   half of an in-floor domino, pointing toward its partner
#             (E = partner one step along the first in-plane direction)
#   >         half of a cross-floor domino whose partner is in the next floor
#   <         partner in the previous floor
#   .         cell not in the region
#
# A one-line header fixes the axis and the lattice origin so that the round
# trip is exact for any placement of the region.

_IN_FLOOR = {(1, 0): "E", (-1, 0): "W", (0, 1): "N", (0, -1): "S"}
_FLOOR_SEP = "  "


def tiling_to_ascii(t: Tiling, axis: Vec = geo.EZ) -> str:
    if axis not in geo.AXES:
        raise ValueError(f"axis must be a positive unit direction: {axis!r}")
    a1, a2 = geo.plane_axes(axis)
    lo, hi = t.region.bounds()
    ai, i1, i2 = geo.axis_index(axis), geo.axis_index(a1), geo.axis_index(a2)
    depth = hi[ai] - lo[ai]
    width = hi[i1] - lo[i1]
    height = hi[i2] - lo[i2]

    grids = [[["."] * width for _ in range(height)] for _ in range(depth)]

    def put(cube: Vec, ch: str) -> None:
        k = cube[ai] - lo[ai]
        c = cube[i1] - lo[i1]
        r = height - 1 - (cube[i2] - lo[i2])
        grids[k][r][c] = ch

    for d in t.dominoes:
        step = d.direction
        if step[ai] == 0:
            put(d.white, _IN_FLOOR[(step[i1], step[i2])])
            put(d.black, _IN_FLOOR[(-step[i1], -step[i2])])
        elif step[ai] > 0:
            put(d.white, ">")
            put(d.black, "<")
        else:
            put(d.white, "<")
            put(d.black, ">")

    header = f"axis={geo.axis_name(axis)} origin={lo[0]},{lo[1]},{lo[2]}"
    rows = [
        _FLOOR_SEP.join("".join(grids[k][r]) for k in range(depth))
        for r in range(height)
    ]
    return "\n".join([header] + rows) + "\n"


def tiling_from_ascii(text: str) -> Tiling:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines or not lines[0].startswith("axis="):
        raise TilingError("gap", None, "missing 'axis=... origin=...' header")
    head = dict(part.split("=", 1) for part in lines[0].split())
    axis = geo.axis_from_name(head["axis"])
    origin = tuple(int(v) for v in head["origin"].split(","))
    rows = lines[1:]
    height = len(rows)
    floors = [row.split(_FLOOR_SEP) for row in rows]
    depth = len(floors[0])
    if any(len(f) != depth for f in floors):
        raise TilingError("gap", None, "ragged floor layout")
    width = len(floors[0][0])

    a1, a2 = geo.plane_axes(axis)
    ai, i1, i2 = geo.axis_index(axis), geo.axis_index(a1), geo.axis_index(a2)

    def cube_at(k: int, r: int, c: int) -> Vec:
        v = [0, 0, 0]
        v[ai] = origin[ai] + k
        v[i1] = origin[i1] + c
        v[i2] = origin[i2] + (height - 1 - r)
        return (v[0], v[1], v[2])

    cells: dict[Vec, str] = {}
    for r, row in enumerate(floors):
        for k, grid in enumerate(row):
            if len(grid) != width:
                raise TilingError("gap", None, f"ragged floor row: {grid!r}")
            for c, ch in enumerate(grid):
                if ch == ".":
                    continue
                if ch not in "EWNS<>":
                    raise TilingError("gap", None, f"unknown cell character {ch!r}")
                cells[cube_at(k, r, c)] = ch

    partner_step = {
        "E": a1,
        "W": geo.neg(a1),
        "N": a2,
        "S": geo.neg(a2),
        ">": axis,
        "<": geo.neg(axis),
    }
    expected_back = {"E": "W", "W": "E", "N": "S", "S": "N", ">": "<", "<": ">"}
    dominoes = []
    for cube, ch in cells.items():
        other = geo.add(cube, partner_step[ch])
        if cells.get(other) != expected_back[ch]:
            raise TilingError("gap", cube, f"cell at {cube} has no matching partner")
        if cube < other:
            dominoes.append(Domino.pair(cube, other))
    return validate(Region(cells), dominoes)
