"""Shared helpers for the test suite: fixture loading, independent oracles,
seeded random regions, and lattice transforms.

The oracles here deliberately reimplement behavior from scratch (brute-force
window scans, naive matching recursion) so that library results are checked
against code that shares no logic with the implementation.
"""

import itertools
import json
import random
from pathlib import Path

from dominotwist import geometry as geo
from dominotwist import tiling as tl

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name):
    """Return the raw JSON object of a frozen fixture."""
    with open(FIXTURES / (name + ".json"), encoding="utf-8") as fh:
        return json.load(fh)


def fixture_tiling(name):
    """Return (region, tiling) from a frozen fixture."""
    obj = load_fixture(name)
    region = geo.region_from_json(obj["region"])
    tiling = tl.tiling_from_json(obj["tiling"], region)
    return region, tiling


# ---------------------------------------------------------------------------
# Exhaustive tiling caches
# ---------------------------------------------------------------------------

_TILING_CACHE = {}


def all_tilings(region):
    """Every tiling of the region, memoized across tests."""
    from dominotwist import explore

    key = region.cubes
    if key not in _TILING_CACHE:
        _TILING_CACHE[key] = tuple(explore.enumerate(region))
    return _TILING_CACHE[key]


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def count_matchings(region):
    """Count tilings by naive recursion over the first uncovered cube.

    Independent of both explore.enumerate and explore.count_box.
    """
    cubes = sorted(region.cubes)
    position = {c: i for i, c in enumerate(cubes)}
    free = (1 << len(cubes)) - 1

    def neighbors(c):
        out = []
        for axis in geo.AXES:
            for q in (geo.add(c, axis), geo.sub(c, axis)):
                if q in position:
                    out.append(position[q])
        return out

    adjacency = [neighbors(c) for c in cubes]

    def rec(mask):
        if mask == 0:
            return 1
        first = (mask & -mask).bit_length() - 1
        total = 0
        for j in adjacency[first]:
            if mask >> j & 1 and j != first:
                total += rec(mask & ~(1 << first) & ~(1 << j))
        return total

    return rec(free)


def oracle_flips(t):
    """All flips of ``t`` as {frozenset(removed dominoes)}, by slab scan."""
    region = t.region
    owner = {}
    for d in t.dominoes:
        for c in d.cells:
            owner[c] = d
    found = set()
    for anchor in region.cubes:
        for normal in range(3):
            axes = [geo.AXES[i] for i in range(3) if i != normal]
            cells = [
                anchor,
                geo.add(anchor, axes[0]),
                geo.add(anchor, axes[1]),
                geo.add(geo.add(anchor, axes[0]), axes[1]),
            ]
            if not all(c in region.cubes for c in cells):
                continue
            inside = {owner[c] for c in cells}
            if len(inside) == 2 and all(
                c in cells for d in inside for c in d.cells
            ):
                found.add(frozenset(inside))
    return found


def oracle_trits(t):
    """All trits of ``t`` as {frozenset(removed dominoes)}, by window scan."""
    region = t.region
    owner = {}
    for d in t.dominoes:
        for c in d.cells:
            owner[c] = d
    found = set()
    for anchor in region.cubes:
        window = {
            geo.add(anchor, off)
            for off in itertools.product((0, 1), repeat=3)
        }
        inside = {
            d
            for d in {owner[c] for c in window & region.cubes}
            if set(d.cells) <= window
        }
        if len(inside) != 3:
            continue
        directions = {geo.axis_index(d.direction) for d in inside}
        if len(directions) == 3:
            found.add(frozenset(inside))
    return found


# ---------------------------------------------------------------------------
# Random shapes
# ---------------------------------------------------------------------------


def random_polyomino(rng, n):
    """A random edge-connected polyomino with n squares (fixed orientation)."""
    cells = {(0, 0)}
    while len(cells) < n:
        base = rng.choice(sorted(cells))
        step = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
        cells.add((base[0] + step[0], base[1] + step[1]))
    return frozenset(cells)


def random_balanced_base(rng, max_squares=10):
    """A random balanced, simply connected planar base with an even number
    of squares (at most ``max_squares``)."""
    while True:
        n = rng.randrange(2, max_squares + 1, 2)
        cells = random_polyomino(rng, n)
        if len(cells) != n or not geo.simply_connected(cells):
            continue
        base = geo.PlanarRegion.of(geo.EZ, 0, cells)
        if base.is_balanced():
            return base


def random_tiling(region, rng):
    """A random tiling found by backtracking with shuffled partner order."""
    cubes = set(region.cubes)
    chosen = []

    def partners(c):
        out = []
        for axis in geo.AXES:
            for q in (geo.add(c, axis), geo.sub(c, axis)):
                if q in cubes:
                    out.append(q)
        return out

    def solve():
        if not cubes:
            return True
        best = min(cubes, key=lambda c: (len(partners(c)), c))
        opts = partners(best)
        if not opts:
            return False
        rng.shuffle(opts)
        for q in opts:
            cubes.discard(best)
            cubes.discard(q)
            chosen.append(tl.Domino.pair(best, q))
            if solve():
                return True
            chosen.pop()
            cubes.add(best)
            cubes.add(q)
        return False

    if not solve():
        raise ValueError("region is not tileable")
    return tl.validate(region, chosen)


# ---------------------------------------------------------------------------
# Lattice transforms
# ---------------------------------------------------------------------------


def translate_tiling(t, offset):
    region = geo.Region(geo.add(c, offset) for c in t.region.cubes)
    return tl.validate(
        region,
        [
            tl.Domino.pair(geo.add(d.white, offset), geo.add(d.black, offset))
            for d in t.dominoes
        ],
    )


def reflect_cube(c, axis_idx):
    out = list(c)
    out[axis_idx] = -1 - out[axis_idx]
    return tuple(out)


def reflect_tiling(t, axis_idx):
    """Mirror across the plane {x_axis = 0} (cube (k) -> (-1-k))."""
    region = geo.Region(reflect_cube(c, axis_idx) for c in t.region.cubes)
    return tl.validate(
        region,
        [
            tl.Domino.pair(
                reflect_cube(d.white, axis_idx), reflect_cube(d.black, axis_idx)
            )
            for d in t.dominoes
        ],
    )


def rotate_cube_xy(c):
    """Quarter turn in the xy plane: (x, y, z) -> (-1-y, x, z)."""
    x, y, z = c
    return (-1 - y, x, z)


def rotate_tiling_xy(t):
    region = geo.Region(rotate_cube_xy(c) for c in t.region.cubes)
    return tl.validate(
        region,
        [
            tl.Domino.pair(rotate_cube_xy(d.white), rotate_cube_xy(d.black))
            for d in t.dominoes
        ],
    )


def seeded(seed):
    return random.Random(seed)
