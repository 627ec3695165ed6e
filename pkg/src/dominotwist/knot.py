"""Slanted projections, crossing signs, linking and writhing numbers.

Projecting the lattice along a direction tilted slightly off an axis turns
coincident segments into honest transversal crossings.  With slant
parameters ``a`` and ``b`` smaller than the reciprocal of the configuration's
axis extent, no two projected unit segments can be collinear or touch
degenerately, so every crossing is a clean intersection of two
non-parallel segments and carries a well-defined sign.

All computations are exact: projected points have rational coordinates,
intersections solve a 2x2 rational system, and the default slant magnitude
is 1/(N+1) where N is the number of layers the configuration spans along
the projection axis.

The headline result here is ``twist_via_writhe``: on an even-depth
pseudocylinder, the twist of a tiling equals the sum over its nontrivial
superposition curves (against the all-parallel base tiling) of the mean of
two directional writhing numbers, plus twice the pairwise linking numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from dominotwist import geometry as geo
from dominotwist.errors import (
    InvariantViolationError,
    NotDisjointError,
    UnsupportedRegionError,
)
from dominotwist.curves import Curve, gamma, nontrivial
from dominotwist.geometry import Basis, Vec, det3, dot
from dominotwist.tiling import Segment, Tiling, base_tiling, dimer_of, to_dimers
from dominotwist.twist import Quarter


@dataclass(frozen=True)
class SlantProjection:
    """Projection along ``b3 + a*b1 + b*b2`` onto the (b1, b2) plane."""

    basis: Basis
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        for value in (self.a, self.b):
            if not 0 < abs(value) < 1:
                raise ValueError(f"slant parameter out of range: {value}")

    def project(self, point2: Vec) -> tuple[Fraction, Fraction]:
        """Image of a doubled lattice point, in doubled plane coordinates."""
        x3 = dot(point2, self.basis.b3)
        return (
            dot(point2, self.basis.b1) - self.a * x3,
            dot(point2, self.basis.b2) - self.b * x3,
        )


@dataclass(frozen=True)
class Crossing:
    """Two segments whose slanted projections meet at interior parameters."""

    seg0: Segment
    seg1: Segment
    s0: Fraction
    s1: Fraction
    sign: int


def layer_span(points2, b3: Vec) -> int:
    """Number of lattice layers along ``b3`` spanned by doubled points."""
    levels = [dot(p, b3) for p in points2]
    return (max(levels) - min(levels)) // 2 + 1


def admissible_slant(layers: int) -> Fraction:
    """The default slant magnitude for a configuration this many layers deep."""
    return Fraction(1, layers + 1)


def _segment_points(*segments: Segment):
    for s in segments:
        yield s.start
        yield s.end


def _check_slant(p: SlantProjection, segments) -> None:
    for s in segments:
        if s.direction not in geo.UNIT_VECTORS:
            raise ValueError(f"not a unit lattice segment: {s!r}")
    layers = layer_span(list(_segment_points(*segments)), p.basis.b3)
    bound = Fraction(1, layers)
    if not (abs(p.a) < bound and abs(p.b) < bound):
        raise ValueError(
            f"slant ({p.a}, {p.b}) too steep for a configuration "
            f"spanning {layers} layers"
        )


def _cross2(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _meet(p: SlantProjection, l0: Segment, l1: Segment):
    """Parameters (s0, s1) in [0, 1] where the projections meet, or None.

    Only called for segments with non-parallel directions, whose projections
    are then also non-parallel.
    """
    p0, q0 = p.project(l0.start), p.project(l0.end)
    p1, q1 = p.project(l1.start), p.project(l1.end)
    d0 = (q0[0] - p0[0], q0[1] - p0[1])
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    r = (p1[0] - p0[0], p1[1] - p0[1])
    denom = _cross2(d0, d1)
    if denom == 0:
        raise InvariantViolationError("parallel projections of non-parallel segments")
    s0 = _cross2(r, d1) / denom
    s1 = _cross2(r, d0) / denom
    if 0 <= s0 <= 1 and 0 <= s1 <= 1:
        return s0, s1
    return None


def slanted_tau(p: SlantProjection, l0: Segment, l1: Segment) -> int:
    """Effect of ``l0`` on ``l1`` as seen through the slanted projection.

    ``det(v(l1), v(l0), b3)`` when the projected segments meet and ``l0``
    starts strictly lower along ``b3``; zero otherwise.
    """
    _check_slant(p, (l0, l1))
    d = det3(l1.direction, l0.direction, p.basis.b3)
    if d == 0:
        return 0
    if dot(l0.start, p.basis.b3) >= dot(l1.start, p.basis.b3):
        return 0
    if _meet(p, l0, l1) is None:
        return 0
    return d


def tau_via_slants(u: Vec, l0: Segment, l1: Segment, *, layers: int | None = None) -> Quarter:
    """The orthogonal effect recovered as the average over the four slant
    sign choices (+-e, +-e) with e = 1/(layers+1)."""
    if not geo.is_unit(u):
        raise ValueError(f"not a unit direction: {u!r}")
    basis = Basis.around(u)
    if layers is None:
        layers = layer_span(list(_segment_points(l0, l1)), basis.b3)
    eps = admissible_slant(layers)
    total = 0
    for i, j in itertools.product((1, -1), repeat=2):
        total += slanted_tau(SlantProjection(basis, i * eps, j * eps), l0, l1)
    return Quarter(total)


def segment_tau(u: Vec, l0: Segment, l1: Segment) -> Quarter:
    """Effect of segment ``l0`` on ``l1`` under the orthogonal projection
    along ``u``: quarter determinant when the closed projections meet and
    ``l0`` starts strictly lower along ``u``."""
    if not geo.is_unit(u):
        raise ValueError(f"not a unit direction: {u!r}")
    d = det3(l1.direction, l0.direction, u)
    if d == 0:
        return Quarter(0)
    if dot(l0.start, u) >= dot(l1.start, u):
        return Quarter(0)
    # Nonzero determinant means the segments run along the two plane axes:
    # their projections cross iff each one's fixed coordinate falls within
    # the other's range.
    a1, a2 = geo.plane_axes(u if u in geo.AXES else geo.neg(u))
    x0 = (dot(l0.start, a1), dot(l0.end, a1))
    y0 = (dot(l0.start, a2), dot(l0.end, a2))
    x1 = (dot(l1.start, a1), dot(l1.end, a1))
    y1 = (dot(l1.start, a2), dot(l1.end, a2))
    x_meet = max(min(x0), min(x1)) <= min(max(x0), max(x1))
    y_meet = max(min(y0), min(y1)) <= min(max(y0), max(y1))
    return Quarter(d) if x_meet and y_meet else Quarter(0)


def segment_pretwist(u: Vec, segments, others=None) -> Quarter:
    """Sum of segment effects along ``u``: over ordered pairs within one
    collection, or from ``segments`` to ``others`` when two are given."""
    total = Quarter(0)
    first = tuple(segments)
    if others is None:
        for l0 in first:
            for l1 in first:
                total += segment_tau(u, l0, l1)
    else:
        for l0 in first:
            for l1 in tuple(others):
                total += segment_tau(u, l0, l1)
    return Quarter(total * 4)


def _crossing(p: SlantProjection, l0: Segment, l1: Segment) -> Crossing | None:
    """The transversal crossing of two non-parallel segments, if any."""
    met = _meet(p, l0, l1)
    if met is None:
        return None
    s0, s1 = met
    point0 = tuple(a + s0 * (b - a) for a, b in zip(l0.start, l0.end))
    point1 = tuple(a + s1 * (b - a) for a, b in zip(l1.start, l1.end))
    diff = tuple(x1 - x0 for x0, x1 in zip(point0, point1))
    c = dot(diff, p.basis.b3)
    kernel = tuple(
        e3 + p.a * e1 + p.b * e2
        for e1, e2, e3 in zip(p.basis.b1, p.basis.b2, p.basis.b3)
    )
    if any(d != c * k for d, k in zip(diff, kernel)):
        raise InvariantViolationError("projected meeting point off the slant line")
    if c == 0:
        raise NotDisjointError("segments share a point in space")
    lower, upper = (l0, l1) if c > 0 else (l1, l0)
    sign = det3(upper.direction, lower.direction, p.basis.b3)
    if sign == 0:
        raise InvariantViolationError("transversal crossing of parallel segments")
    return Crossing(l0, l1, s0, s1, sign)


def crossings(p: SlantProjection, g0: Curve, g1: Curve) -> tuple[Crossing, ...]:
    """All crossings between the slanted projections of two disjoint curves."""
    _check_slant(p, tuple(g0.segments) + tuple(g1.segments))
    found = []
    for l0 in g0.segments:
        for l1 in g1.segments:
            if det3(l1.direction, l0.direction, p.basis.b3) == 0:
                continue
            c = _crossing(p, l0, l1)
            if c is not None:
                found.append(c)
    return tuple(found)


def self_crossings(p: SlantProjection, g: Curve) -> tuple[Crossing, ...]:
    """Crossings between non-adjacent segments of one curve's projection."""
    _check_slant(p, g.segments)
    m = len(g.segments)
    found = []
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            l0, l1 = g.segments[i], g.segments[j]
            if det3(l1.direction, l0.direction, p.basis.b3) == 0:
                continue
            c = _crossing(p, l0, l1)
            if c is not None:
                found.append(c)
    return tuple(found)


def linking_number(g0: Curve, g1: Curve, basis: Basis, *, layers: int | None = None) -> int:
    """Half the sum of crossing signs between two vertex-disjoint curves."""
    if set(g0.vertices) & set(g1.vertices):
        raise NotDisjointError("curves share a vertex")
    if layers is None:
        layers = layer_span(g0.vertices + g1.vertices, basis.b3)
    eps = admissible_slant(layers)
    total = sum(c.sign for c in crossings(SlantProjection(basis, eps, eps), g0, g1))
    if total % 2:
        raise InvariantViolationError("odd total crossing sign between closed curves")
    return total // 2


def directional_writhe(g: Curve, basis: Basis, a, b) -> int:
    """Sum of self-crossing signs of the curve under the (a, b) slant."""
    return sum(c.sign for c in self_crossings(SlantProjection(basis, a, b), g))


def wr_pm(g: Curve, basis: Basis, *, layers: int | None = None) -> tuple[int, int]:
    """The two directional writhing numbers, at slants (+e, +e) and (+e, -e)."""
    if layers is None:
        layers = layer_span(g.vertices, basis.b3)
    eps = admissible_slant(layers)
    return (
        directional_writhe(g, basis, eps, eps),
        directional_writhe(g, basis, eps, -eps),
    )


def eta(basis: Basis, g: Curve, k: int) -> int:
    """Corner correction at vertex ``k``: +1 for turns (b2, b3) and
    (-b3, -b2); -1 for (-b2, -b3) and (b3, b2); 0 otherwise."""
    m = len(g.segments)
    pair = (g.segments[k % m].direction, g.segments[(k + 1) % m].direction)
    b2, b3 = basis.b2, basis.b3
    if pair in ((b2, b3), (geo.neg(b3), geo.neg(b2))):
        return 1
    if pair in ((geo.neg(b2), geo.neg(b3)), (b3, b2)):
        return -1
    return 0


def _even_depth_structure(region: geo.Region) -> geo.CylinderStructure:
    cls = geo.classify(region)
    if cls.kind not in ("box", "cylinder", "pseudocylinder"):
        raise UnsupportedRegionError("region is not an extrusion of a planar base")
    for s in cls.structures:
        if s.depth % 2 == 0:
            return s
    raise UnsupportedRegionError("region has no even-depth extrusion axis")


def twist_via_writhe(t: Tiling) -> int:
    """The twist computed from writhing and linking numbers of the curves
    that the tiling traces against the all-parallel base tiling."""
    structure = _even_depth_structure(t.region)
    w = structure.axis
    basis = Basis.around(w)
    curves = nontrivial(gamma(t, base_tiling(t.region, w)))
    total = 0
    for g in curves:
        plus, minus = wr_pm(g, basis, layers=structure.depth)
        if (plus + minus) % 2:
            raise InvariantViolationError(
                f"writhing numbers {plus}, {minus} with odd sum"
            )
        total += (plus + minus) // 2
    for g0, g1 in itertools.combinations(curves, 2):
        total += 2 * linking_number(g0, g1, basis, layers=structure.depth)
    return total


def crossings_to_json(found) -> list:
    """Diagnostic dump of crossings."""
    return [
        {
            "seg0": [list(c.seg0.start), list(c.seg0.end)],
            "seg1": [list(c.seg1.start), list(c.seg1.end)],
            "s0": str(c.s0),
            "s1": str(c.s1),
            "sign": c.sign,
        }
        for c in found
    ]


def segments_of(t: Tiling) -> tuple[Segment, ...]:
    """The tiling's dimers as segments, in canonical order."""
    return tuple(sorted(to_dimers(t)))


def superposition_segments(t: Tiling, t_other: Tiling) -> tuple[Segment, ...]:
    """Segments of ``t`` together with the reversed segments of ``t_other``."""
    return tuple(
        sorted(
            [dimer_of(d) for d in t.dominoes]
            + [dimer_of(d).reverse() for d in t_other.dominoes]
        )
    )
