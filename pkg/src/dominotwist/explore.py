"""Exhaustive exploration: enumeration, box counting, and move graphs.

``enumerate`` streams every tiling of a region exactly once by deterministic
backtracking and feeds all exhaustive checks.  ``count_box`` counts box
tilings by a broken-profile dynamic program over cells, carrying a window of
one cross-section as a bitmask, so it reaches sizes far beyond enumeration.
``flip_components`` builds the flip move graph under an explicit tiling
budget and reports components, their common twist values, and the trit edges
between them.  All counts are exact integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from dominotwist.errors import InvariantViolationError, ResourceLimitError
from dominotwist.geometry import AXES, Region, Vec, add
from dominotwist.moves import apply_flip, apply_trit, flips, trits
from dominotwist.tiling import Domino, Tiling
from dominotwist.twist import twist

DEFAULT_BUDGET = 200_000
_MAX_FACE_CELLS = 32


def enumerate(region: Region) -> Iterator[Tiling]:
    """Stream every tiling of the region exactly once, deterministically.

    Backtracking over the first uncovered cube in lexicographic order; its
    partner can only lie one positive step away along an axis, tried in axis
    order.
    """
    cubes = region.sorted_cubes()
    if len(cubes) % 2:
        return
    cube_set = region.cubes
    covered: set[Vec] = set()
    chosen: list[Domino] = []

    def fill(start: int) -> Iterator[Tiling]:
        index = start
        while index < len(cubes) and cubes[index] in covered:
            index += 1
        if index == len(cubes):
            yield Tiling(region, chosen)
            return
        cube = cubes[index]
        covered.add(cube)
        for step in AXES:
            partner = add(cube, step)
            if partner in cube_set and partner not in covered:
                covered.add(partner)
                chosen.append(Domino.pair(cube, partner))
                yield from fill(index + 1)
                chosen.pop()
                covered.remove(partner)
        covered.remove(cube)

    yield from fill(0)


def _profile_order(L: int, M: int, N: int) -> tuple[int, int, int]:
    """Axis indices (outer, middle, inner) for the cell sweep: transfer along
    the longest axis, preferring even lengths on ties, so the carried face is
    as small as possible."""
    dims = (L, M, N)
    outer = max(range(3), key=lambda k: (dims[k], dims[k] % 2 == 0, -k))
    middle, inner = (k for k in range(3) if k != outer)
    return outer, middle, inner


def count_box(L: int, M: int, N: int) -> int:
    """The exact number of domino tilings of an L x M x N box."""
    if L < 0 or M < 0 or N < 0:
        raise ValueError("box dimensions must be nonnegative")
    volume = L * M * N
    if volume % 2:
        return 0
    if volume == 0:
        return 1
    dims = (L, M, N)
    outer, middle, inner = _profile_order(L, M, N)
    depth, rows, cols = dims[outer], dims[middle], dims[inner]
    face = rows * cols
    if face > _MAX_FACE_CELLS:
        raise ResourceLimitError(
            f"cross-section of {face} cells exceeds the {_MAX_FACE_CELLS}-cell limit"
        )
    # Sweep cells in (layer, row, col) order.  Bit j of a state says that the
    # j-th cell ahead (current cell included at bit 0) is already covered by
    # an earlier domino.
    states = {0: 1}
    for layer, row, col in itertools.product(range(depth), range(rows), range(cols)):
        can_col = col + 1 < cols
        can_row = row + 1 < rows
        can_layer = layer + 1 < depth
        row_bit = 1 << cols
        layer_bit = 1 << (face - 1)
        nxt: dict[int, int] = {}

        def put(state: int, ways: int) -> None:
            nxt[state] = nxt.get(state, 0) + ways

        for state, ways in states.items():
            if state & 1:
                put(state >> 1, ways)
                continue
            if can_col and not state & 2:
                put((state | 2) >> 1, ways)
            if can_row and not state & row_bit:
                put((state | row_bit) >> 1, ways)
            if can_layer:
                put((state >> 1) | layer_bit, ways)
        states = nxt
    return states.get(0, 0)


@dataclass(frozen=True)
class Component:
    """One flip connected component."""

    size: int
    twist: int
    representative: Tiling


@dataclass(frozen=True)
class ComponentReport:
    """Flip components of a region's tilings, with trit edges between them."""

    tiling_count: int
    components: tuple[Component, ...]
    twist_histogram: dict[int, int]
    trit_edges: int
    complete: bool = True


@dataclass
class _UnionFind:
    parent: list[int] = field(default_factory=list)

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        self.parent[self.find(i)] = self.find(j)


def _explore(region: Region, limit: int) -> tuple[list[Tiling], dict[str, int], bool]:
    seen: dict[str, int] = {}
    kept: list[Tiling] = []
    complete = True
    for t in enumerate(region):
        if len(kept) >= limit:
            complete = False
            break
        seen[t.digest()] = len(kept)
        kept.append(t)
    return kept, seen, complete


def flip_components(region: Region, limit: int = DEFAULT_BUDGET) -> ComponentReport:
    """Group all tilings of the region into flip connected components.

    Every flip edge must preserve the twist and every trit edge must change
    it by exactly the trit's sign; both are asserted while exploring.  If the
    region has more tilings than ``limit``, the partial report is attached to
    the raised resource-limit error with ``complete=False``.
    """
    kept, index_of, complete = _explore(region, limit)
    twists = [twist(t) for t in kept]
    uf = _UnionFind()
    for _ in kept:
        uf.make()
    trit_pairs: set[tuple[int, int]] = set()
    for i in range(len(kept)):
        t = kept[i]
        for flip in flips(t):
            j = index_of.get(apply_flip(t, flip).digest())
            if j is None:
                continue
            if twists[i] != twists[j]:
                raise InvariantViolationError(
                    f"flip changed twist: {twists[i]} -> {twists[j]}"
                )
            uf.union(i, j)
        for trit in trits(t):
            j = index_of.get(apply_trit(t, trit).digest())
            if j is None:
                continue
            if twists[j] - twists[i] != trit.sign:
                raise InvariantViolationError(
                    f"trit of sign {trit.sign} changed twist by {twists[j] - twists[i]}"
                )
            trit_pairs.add((min(i, j), max(i, j)))
    members: dict[int, list[int]] = {}
    for i in range(len(kept)):
        members.setdefault(uf.find(i), []).append(i)
    components = tuple(
        sorted(
            (
                Component(len(group), twists[group[0]], kept[group[0]])
                for group in members.values()
            ),
            key=lambda c: (-c.size, c.twist, c.representative.digest()),
        )
    )
    histogram: dict[int, int] = {}
    for value in twists:
        histogram[value] = histogram.get(value, 0) + 1
    report = ComponentReport(
        tiling_count=len(kept),
        components=components,
        twist_histogram=dict(sorted(histogram.items())),
        trit_edges=len(trit_pairs),
        complete=complete,
    )
    if not complete:
        raise ResourceLimitError(
            f"more than {limit} tilings; partial report attached", partial=report
        )
    return report


def twist_distribution(region: Region, limit: int = DEFAULT_BUDGET) -> dict[int, int]:
    """Exact histogram of the twist over all tilings of a cylinder region."""
    histogram: dict[int, int] = {}
    count = 0
    for t in enumerate(region):
        if count >= limit:
            raise ResourceLimitError(
                f"more than {limit} tilings; partial histogram attached",
                partial=dict(sorted(histogram.items())),
            )
        value = twist(t)
        histogram[value] = histogram.get(value, 0) + 1
        count += 1
    return dict(sorted(histogram.items()))


def report_to_json(report: ComponentReport) -> dict:
    return {
        "tilings": str(report.tiling_count),
        "components": [
            {"size": str(c.size), "twist": c.twist} for c in report.components
        ],
        "twist_histogram": {
            str(value): str(count) for value, count in report.twist_histogram.items()
        },
        "trit_edges": report.trit_edges,
        "complete": report.complete,
    }
