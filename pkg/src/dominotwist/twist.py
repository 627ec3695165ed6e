"""Shade effects, pretwists, and the twist invariant of cylinder tilings.

A domino casts an open shade in each of the six lattice directions: the
interior of everything strictly behind it, seen along the direction.  When a
second domino meets the shade of a first one along ``u``, the ordered pair
picks up an effect of ``det(v(d1), v(d0), u) / 4``, which is ``1/4`` or
``-1/4`` when the two dominoes and ``u`` are pairwise non-parallel and ``0``
otherwise.  Summing the effects over all ordered pairs of a tiling gives the
``u``-pretwist, an exact multiple of ``1/4``.

For a tiling of a cylinder (a simply connected planar base extruded along an
axis; boxes qualify three times over) the six pretwists collapse to a single
integer, the twist.  :func:`twist` computes all three positive-axis pretwists
and checks the collapse at runtime instead of trusting it.  For a simply
connected region that is not a cylinder, :func:`relative_twist` compares two
tilings by embedding the region in a box and completing both with one shared
complement tiling; the difference is independent of the chosen box and
complement.

All arithmetic is exact: effects accumulate as integer counts of quarters and
only the final value is exposed as a :class:`Quarter`.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from dominotwist.errors import (
    InvariantViolationError,
    NotEmbeddableError,
    UnsupportedRegionError,
)
from dominotwist.geometry import (
    AXES,
    Region,
    Vec,
    axis_index,
    classify,
    det3,
)
from dominotwist.tiling import Domino, Tiling

_SWEEP_THRESHOLD = 48


class Quarter(Fraction):
    """An exact multiple of 1/4, the granularity of all shade effects."""

    __slots__ = ()

    def __new__(cls, quarters: int = 0) -> "Quarter":
        return super().__new__(cls, quarters, 4)

    @property
    def quarters(self) -> int:
        """The value scaled by 4, always an integer."""
        return int(self * 4)

    def __repr__(self) -> str:
        return f"Quarter({self.quarters})"


def quarter_to_json(value: Fraction) -> int | str:
    """Serialize an exact quarter-integer as an int or a reduced fraction."""
    if value.denominator == 1:
        return int(value)
    return str(value)


def quarter_from_json(data: int | str) -> Quarter:
    value = Fraction(data)
    if value.denominator not in (1, 2, 4):
        raise ValueError(f"not a multiple of 1/4: {data!r}")
    return Quarter(int(value * 4))


@dataclass(frozen=True)
class Shade:
    """The open shade of a set of cubes, discretized as whole cubes.

    ``cells`` holds every cube of ``within`` that lies strictly beyond some
    source cube along ``direction`` in the same lattice column.  That matches
    which cubes of ``within`` meet the continuous open shade.
    """

    source: frozenset[Vec]
    direction: Vec
    cells: frozenset[Vec]

    @staticmethod
    def of(source: Iterable[Vec], direction: Vec, within: Iterable[Vec]) -> "Shade":
        src = frozenset(source)
        k = axis_index(direction)
        sign = direction[k]
        columns: dict[tuple[int, int], int] = {}
        for cube in src:
            key = (cube[(k + 1) % 3], cube[(k + 2) % 3])
            layer = cube[k] * sign
            if key not in columns or layer < columns[key]:
                columns[key] = layer
        cells = frozenset(
            cube
            for cube in within
            if cube not in src
            and cube[k] * sign > columns.get((cube[(k + 1) % 3], cube[(k + 2) % 3]), cube[k] * sign)
        )
        return Shade(src, direction, cells)


def _tau_quarters(u: Vec, d0: Domino, d1: Domino) -> int:
    """Effect of d0 on d1 along u, counted in quarters."""
    k = axis_index(u)
    w0, b0 = d0
    w1, b1 = d1
    for i in range(3):
        if i == k:
            continue
        lo0 = w0[i] if w0[i] < b0[i] else b0[i]
        hi0 = (w0[i] if w0[i] > b0[i] else b0[i]) + 1
        lo1 = w1[i] if w1[i] < b1[i] else b1[i]
        hi1 = (w1[i] if w1[i] > b1[i] else b1[i]) + 1
        if hi1 <= lo0 or lo1 >= hi0:
            return 0
    if u[k] > 0:
        if max(w1[k], b1[k]) <= max(w0[k], b0[k]):
            return 0
    else:
        if min(w1[k], b1[k]) >= min(w0[k], b0[k]):
            return 0
    return det3(d1.direction, d0.direction, u)


def tau(u: Vec, d0: Domino, d1: Domino) -> Quarter:
    """Effect of ``d0`` on ``d1`` along ``u``.

    Equals ``det(v(d1), v(d0), u) / 4`` when ``d1`` meets the open
    ``u``-shade of ``d0`` and ``0`` otherwise; nonzero only when the two
    dominoes and ``u`` are pairwise non-parallel.
    """
    return Quarter(_tau_quarters(u, d0, d1))


def _pairs_quarters(dominoes: Sequence[Domino], u: Vec) -> int:
    total = 0
    for d0 in dominoes:
        for d1 in dominoes:
            total += _tau_quarters(u, d0, d1)
    return total


def _pairs_quarters_chunk(dominoes: Sequence[Domino], u: Vec, lo: int, hi: int) -> int:
    total = 0
    for i in range(lo, hi):
        d0 = dominoes[i]
        for d1 in dominoes:
            total += _tau_quarters(u, d0, d1)
    return total


def _pairs_quarters_threaded(dominoes: Sequence[Domino], u: Vec, threads: int) -> int:
    bounds = [(len(dominoes) * i) // threads for i in range(threads + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        chunks = [
            pool.submit(_pairs_quarters_chunk, dominoes, u, lo, hi)
            for lo, hi in zip(bounds, bounds[1:])
        ]
        return sum(chunk.result() for chunk in chunks)


def _sweep_quarters(dominoes: Sequence[Domino], u: Vec) -> int:
    """Pair sum by sweeping layers along the axis of ``u``.

    Only dominoes perpendicular to ``u`` interact.  Each interacting ordered
    pair shares exactly one footprint square in the projection along ``u``,
    so bucketing by square and accumulating direction sums layer by layer
    visits every pair once.
    """
    k = axis_index(u)
    sign = u[k]
    i, j = (k + 1) % 3, (k + 2) % 3
    buckets: dict[tuple[int, int], list[tuple[int, Vec]]] = {}
    for d in dominoes:
        direction = d.direction
        if direction[k] != 0:
            continue
        layer = d.white[k] * sign
        for cell in d:
            buckets.setdefault((cell[i], cell[j]), []).append((layer, direction))
    total = 0
    for entries in buckets.values():
        entries.sort(key=lambda entry: entry[0])
        sx = sy = sz = 0
        index = 0
        while index < len(entries):
            layer = entries[index][0]
            group_end = index
            while group_end < len(entries) and entries[group_end][0] == layer:
                total += det3(entries[group_end][1], (sx, sy, sz), u)
                group_end += 1
            while index < group_end:
                dx, dy, dz = entries[index][1]
                sx += dx
                sy += dy
                sz += dz
                index += 1
    return total


def pretwist(t: Tiling, u: Vec, *, method: str = "auto", threads: int = 1) -> Quarter:
    """Sum of the effects of all ordered domino pairs of ``t`` along ``u``.

    ``method`` selects the quadratic pair sum (``"pairs"``), the layer sweep
    (``"sweep"``), or a size-based choice (``"auto"``).  Both methods give
    identical exact results.  ``threads`` partitions the pair sum across
    workers with a deterministic accumulation order; it only affects the
    pairs method.
    """
    dominoes = t.dominoes
    if method == "auto":
        method = "sweep" if len(dominoes) > _SWEEP_THRESHOLD else "pairs"
    if method == "sweep":
        return Quarter(_sweep_quarters(dominoes, u))
    if method != "pairs":
        raise ValueError(f"unknown pretwist method: {method!r}")
    if threads > 1 and len(dominoes) >= 2 * threads:
        return Quarter(_pairs_quarters_threaded(dominoes, u, threads))
    return Quarter(_pairs_quarters(dominoes, u))


def pretwists(t: Tiling, *, threads: int = 1) -> dict[str, Quarter]:
    """The three positive-axis pretwists, keyed ``"x"``, ``"y"``, ``"z"``."""
    return {
        name: pretwist(t, u, threads=threads)
        for name, u in zip("xyz", AXES)
    }


def twist(t: Tiling, *, threads: int = 1) -> int:
    """The common integer value of the three pretwists of a cylinder tiling.

    Computes all three pretwists and checks at runtime that they agree and
    are integers rather than trusting the theory; a disagreement signals an
    implementation bug, not bad input.
    """
    shape = classify(t.region)
    if shape.kind not in ("box", "cylinder"):
        raise UnsupportedRegionError(
            f"twist is defined for cylinder tilings, region classifies as {shape.kind!r}"
        )
    values = pretwists(t, threads=threads)
    distinct = set(values.values())
    if len(distinct) != 1:
        detail = " ".join(f"{name}:{value}" for name, value in values.items())
        raise InvariantViolationError(f"pretwists disagree on a cylinder: {detail}")
    value = distinct.pop()
    if value.denominator != 1:
        raise InvariantViolationError(f"cylinder pretwist is not an integer: {value}")
    return int(value)


def _padded_boxes(region: Region, max_pad: int) -> Iterable[Region]:
    lo, hi = region.bounds()
    pads = sorted(
        itertools.product(range(max_pad + 1), repeat=6),
        key=lambda pad: (sum(pad), pad),
    )
    for xl, yl, zl, xh, yh, zh in pads:
        new_lo = (lo[0] - xl, lo[1] - yl, lo[2] - zl)
        new_hi = (hi[0] + xh, hi[1] + yh, hi[2] + zh)
        yield Region.of(
            itertools.product(
                range(new_lo[0], new_hi[0]),
                range(new_lo[1], new_hi[1]),
                range(new_lo[2], new_hi[2]),
            )
        )


def relative_twist(region: Region, t0: Tiling, t1: Tiling, *, max_pad: int = 4) -> int:
    """Twist difference of two tilings of one simply connected region.

    Embeds the region in a box, tiles the complement by backtracking, and
    returns ``twist(t0 + complement) - twist(t1 + complement)``.  The value
    does not depend on which box or complement tiling is found.  Boxes are
    tried from the bounding box outward, growing each face by up to
    ``max_pad``; if no complement is tileable the region is reported as not
    embeddable within the budget.
    """
    if t0.region != region or t1.region != region:
        raise ValueError("relative_twist needs two tilings of the given region")
    from dominotwist.construct import is_tileable

    region_cubes = region.cubes
    for box in _padded_boxes(region, max_pad):
        if not region_cubes <= box.cubes:
            continue
        complement_cubes = box.cubes - region_cubes
        if not complement_cubes:
            return twist(t0) - twist(t1)
        if len(complement_cubes) % 2:
            continue
        complement = Region.of(complement_cubes)
        if not complement.is_balanced():
            continue
        tileable, witness = is_tileable(complement)
        if not tileable:
            continue
        assert witness is not None
        return twist(t0.union(witness)) - twist(t1.union(witness))
    raise NotEmbeddableError(
        f"no tileable complement within a face padding of {max_pad}"
    )


def shaded_dominoes(t: Tiling, u: Vec, source: Iterable[Vec]) -> list[Domino]:
    """The dominoes of ``t`` meeting the open ``u``-shade of ``source``."""
    shade = Shade.of(source, u, t.region.cubes)
    return [d for d in t.dominoes if d.white in shade.cells or d.black in shade.cells]
