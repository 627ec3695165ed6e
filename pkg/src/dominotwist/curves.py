"""Closed curves from superposing two tilings, and planar winding numbers.

Overlaying a tiling ``t0`` with the reversal of another tiling ``t1`` of the
same region turns every cube center into a degree-2 vertex: one dimer of
``t0`` leaves it, one reversed dimer of ``t1`` enters it.  Following these
segments decomposes the superposition into disjoint closed curves.  A curve
of length 2 is trivial (a domino shared by both tilings, traversed there and
back); all other curves are simple cycles that alternate between the two
tilings.

Curves are stored as cyclic segment sequences in doubled integer
coordinates and canonicalized by rotating the lexicographically smallest
vertex to the front, which makes equality and hashing well-defined.

``winding`` computes the winding number of a curve's orthogonal projection
around a half-integer point of the plane by exact integer ray casting, with
segment endpoints that merely touch the ray's level counting one half.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from dominotwist import geometry as geo
from dominotwist.errors import DegenerateInputError, InvariantViolationError
from dominotwist.geometry import Vec, plane_axes
from dominotwist.tiling import Segment, Tiling, dimer_of


@dataclass(frozen=True)
class Curve:
    """A closed lattice curve: each segment's end is the next one's start."""

    segments: tuple[Segment, ...]

    @staticmethod
    def of(segments: Iterable[Segment]) -> "Curve":
        """Canonical form: rotate the smallest vertex to the front."""
        chain = tuple(segments)
        if not chain:
            raise ValueError("a curve needs at least one segment")
        for i, s in enumerate(chain):
            if s.end != chain[(i + 1) % len(chain)].start:
                raise ValueError(f"segments do not chain at position {i}")
        pivot = min(range(len(chain)), key=lambda i: chain[i].start)
        return Curve(chain[pivot:] + chain[:pivot])

    @property
    def vertices(self) -> tuple[Vec, ...]:
        """The visited cube centers, doubled, in traversal order."""
        return tuple(s.start for s in self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def trivial(self) -> bool:
        return len(self.segments) == 2

    def reverse(self) -> "Curve":
        return Curve.of(tuple(s.reverse() for s in reversed(self.segments)))


@dataclass(frozen=True)
class CurveSet:
    """The curve decomposition of a superposition of two tilings."""

    curves: tuple[Curve, ...]
    all_segments: tuple[Segment, ...]


def gamma(t0: Tiling, t1: Tiling) -> CurveSet:
    """Decompose the superposition of ``t0`` and reversed ``t1`` into curves.

    From each unvisited white center: follow its ``t0`` dimer forward, then
    the ``t1`` dimer of the cube it reached backward, and so on until the
    walk closes up.
    """
    if t0.region != t1.region:
        raise ValueError("tilings must share a region")
    by0 = {d.white: d for d in t0.dominoes}
    by1 = {d.black: d for d in t1.dominoes}
    visited: set[Vec] = set()
    curves = []
    for cube in t0.region.sorted_cubes():
        if cube in visited:
            continue
        white = cube if geo.color(cube) == -1 else by1[cube].white
        if white in visited:
            continue
        chain: list[Segment] = []
        current = white
        while True:
            forward = by0[current]
            visited.add(forward.white)
            visited.add(forward.black)
            chain.append(dimer_of(forward))
            backward = by1[forward.black]
            chain.append(dimer_of(backward).reverse())
            visited.add(backward.white)
            current = backward.white
            if current == white:
                break
        curves.append(Curve.of(chain))
    segments = sorted(
        [dimer_of(d) for d in t0.dominoes]
        + [dimer_of(d).reverse() for d in t1.dominoes]
    )
    return CurveSet(tuple(sorted(curves, key=lambda c: c.vertices)), tuple(segments))


def nontrivial(cs: CurveSet) -> tuple[Curve, ...]:
    """The curves that are not a dimer traversed there and back."""
    return tuple(c for c in cs.curves if not c.trivial)


def _as_doubled(value) -> int:
    doubled = Fraction(value) * 2
    if doubled.denominator != 1 or doubled.numerator % 2 == 0:
        raise ValueError(f"coordinate {value} is not a half-integer")
    return doubled.numerator


def winding(curve: Curve, axis: Vec, point: tuple) -> int:
    """Winding number of the projection of ``curve`` along ``axis`` around a
    half-integer point of the plane.

    The point is given in the plane coordinates of :func:`plane_axes`.  Ray
    casting along the first plane axis: a projected segment strictly beyond
    the point counts with the sign of its vertical direction, a full crossing
    where its span strictly contains the point's level and a half crossing
    where an endpoint merely touches it.
    """
    if axis not in geo.AXES:
        raise ValueError(f"axis must be a positive unit direction: {axis!r}")
    a1, a2 = plane_axes(axis)
    px, py = (_as_doubled(point[0]), _as_doubled(point[1]))
    halves = 0
    for s in curve.segments:
        x0, y0 = geo.dot(s.start, a1), geo.dot(s.start, a2)
        x1, y1 = geo.dot(s.end, a1), geo.dot(s.end, a2)
        if (px, py) in ((x0, y0), (x1, y1)):
            raise DegenerateInputError("point lies on the projected curve")
        if y0 == y1 == py and min(x0, x1) <= px <= max(x0, x1):
            raise DegenerateInputError("point lies on the projected curve")
        if x0 == x1 == px and min(y0, y1) <= py <= max(y0, y1):
            raise DegenerateInputError("point lies on the projected curve")
        if x0 == x1 and x0 > px and min(y0, y1) <= py <= max(y0, y1):
            sign = (y1 - y0) // 2
            halves += sign * (2 if min(y0, y1) < py < max(y0, y1) else 1)
    if halves % 2:
        raise InvariantViolationError("odd crossing count for a closed curve")
    return halves // 2


def curve_to_json(curve: Curve) -> dict:
    return {"scale": 2, "vertices": [list(v) for v in curve.vertices]}


def curve_from_json(obj: dict) -> Curve:
    if obj.get("scale") != 2:
        raise ValueError("curve JSON must declare scale 2")
    vertices = [tuple(v) for v in obj["vertices"]]
    if not vertices:
        raise ValueError("curve JSON needs at least one vertex")
    for v in vertices:
        if len(v) != 3 or any(not isinstance(c, int) or c % 2 == 0 for c in v):
            raise ValueError(f"vertex {v} is not a doubled cube center")
    segments = []
    for i, v in enumerate(vertices):
        w = vertices[(i + 1) % len(vertices)]
        step = geo.sub(w, v)
        if sorted(map(abs, step)) != [0, 0, 2]:
            raise ValueError(f"vertices {v} and {w} are not unit-step neighbors")
        segments.append(Segment(v, w))
    return Curve.of(segments)
