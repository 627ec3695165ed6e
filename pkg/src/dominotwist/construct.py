"""Building tilings with integer axis pretwist from spanning trees.

A balanced planar base with connected interior and 2n squares can always be
extruded to depth 2n-1 and tiled: pick a spanning tree of the base's grid
graph, then repeatedly strip one white and one black leaf, laying the tree
path between them across two consecutive layers and filling everything else
with axis-parallel dominoes.  The resulting tiling has an integer pretwist
along the extrusion axis.

The construction is deterministic: the spanning tree grows breadth-first
from the lexicographically smallest square, and the smallest white and black
leaves are stripped each round.  Every round also re-checks that the
remaining tree is balanced with leaves of both colors and that the chosen
path has even length; the finished domino set is validated as a tiling and
its axis pretwist is checked to be an integer.

``is_tileable`` answers tileability of arbitrary regions by backtracking,
always filling a most-constrained cube first, and returns a witness tiling
when one exists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from dominotwist.errors import InvalidRegionError, InvariantViolationError
from dominotwist.geometry import (
    AXES,
    PlanarRegion,
    Region,
    Square,
    Vec,
    add,
    color,
    interior_connected,
    make_cylinder,
    neg,
    sub,
)
from dominotwist.tiling import Domino, Tiling, validate
from dominotwist.twist import Quarter, pretwist


@dataclass(frozen=True)
class BicoloredGraph:
    """A graph of cubes (or squares seen as cubes) colored like the lattice."""

    vertices: tuple[Vec, ...]
    colors: dict[Vec, int]
    adjacency: dict[Vec, tuple[Vec, ...]]

    def is_balanced(self) -> bool:
        return sum(self.colors.values()) == 0


def associated_graph(region: Region) -> BicoloredGraph:
    """The face-adjacency graph of a region's cubes, bicolored."""
    vertices = tuple(region.sorted_cubes())
    cubes = region.cubes
    adjacency = {}
    for v in vertices:
        neighbors = []
        for step in AXES:
            for q in (add(v, step), sub(v, step)):
                if q in cubes:
                    neighbors.append(q)
        adjacency[v] = tuple(sorted(neighbors))
    return BicoloredGraph(vertices, {v: color(v) for v in vertices}, adjacency)


@dataclass(frozen=True)
class IterationRecord:
    """One leaf-stripping round: the chosen leaves, the tree path between
    them, and the dominoes laid down."""

    white_leaf: Square
    black_leaf: Square
    path: tuple[Square, ...]
    vertical: tuple[Domino, ...]
    path_dominoes: tuple[Domino, ...]


@dataclass(frozen=True)
class MatchingTrace:
    """The full record of one construction run."""

    tree_edges: frozenset[tuple[Square, Square]]
    iterations: tuple[IterationRecord, ...]
    axis_pretwist: Quarter


def _spanning_tree(squares: frozenset[Square]) -> dict[Square, set[Square]]:
    """Breadth-first spanning tree from the lexicographically smallest square."""
    root = min(squares)
    tree: dict[Square, set[Square]] = {s: set() for s in squares}
    seen = {root}
    queue = deque([root])
    while queue:
        s = queue.popleft()
        i, j = s
        for q in sorted(((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1))):
            if q in squares and q not in seen:
                seen.add(q)
                tree[s].add(q)
                tree[q].add(s)
                queue.append(q)
    if len(seen) != len(squares):
        raise InvalidRegionError("base is not connected")
    return tree


def _tree_path(tree: dict[Square, set[Square]], active: set[Square],
               source: Square, target: Square) -> tuple[Square, ...]:
    """The unique path between two vertices of the active subtree."""
    parent: dict[Square, Square | None] = {source: None}
    queue = deque([source])
    while queue:
        s = queue.popleft()
        if s == target:
            break
        for q in tree[s]:
            if q in active and q not in parent:
                parent[q] = s
                queue.append(q)
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(path)


def algorithm1_trace(base: PlanarRegion, w: Vec) -> tuple[Tiling, MatchingTrace]:
    """Deterministic tree construction with its full iteration record."""
    if w != base.axis and w != neg(base.axis):
        raise InvalidRegionError("extrusion direction must be normal to the base")
    square_colors = base.square_colors()
    if sum(square_colors.values()) != 0:
        raise InvalidRegionError("base is not balanced")
    if not interior_connected(base.squares):
        raise InvalidRegionError("base does not have connected interior")
    n = len(base.squares) // 2
    depth = 2 * n - 1
    region = make_cylinder(base, w, depth)
    sign = 1 if w == base.axis else -1

    def cube(square: Square, layer: int) -> Vec:
        offset = layer if sign == 1 else -1 - layer
        return base.cube_at(square, offset)

    tree = _spanning_tree(base.squares)
    active = set(base.squares)
    removed: list[Square] = []
    dominoes: list[Domino] = []
    records: list[IterationRecord] = []
    for k in range(n):
        degrees = {s: sum(1 for q in tree[s] if q in active) for s in active}
        leaves = sorted(s for s, d in degrees.items() if d <= 1)
        white_leaves = [s for s in leaves if square_colors[s] == -1]
        black_leaves = [s for s in leaves if square_colors[s] == 1]
        if sum(square_colors[s] for s in active) != 0:
            raise InvariantViolationError("active subtree lost its balance")
        if not white_leaves or not black_leaves:
            raise InvariantViolationError("balanced tree with single-colored leaves")
        v_w, v_b = white_leaves[0], black_leaves[0]
        path = _tree_path(tree, active, v_w, v_b)
        if len(path) % 2:
            raise InvariantViolationError("odd leaf-to-leaf path in a bicolored tree")
        path_set = set(path)
        vertical = []
        for s in removed:
            vertical.append(Domino.pair(cube(s, 2 * k - 1), cube(s, 2 * k)))
        for s in sorted(active - path_set):
            vertical.append(Domino.pair(cube(s, 2 * k), cube(s, 2 * k + 1)))
        laid = []
        for i in range(0, len(path), 2):
            laid.append(Domino.pair(cube(path[i], 2 * k), cube(path[i + 1], 2 * k)))
        for i in range(1, len(path) - 2, 2):
            laid.append(
                Domino.pair(cube(path[i], 2 * k + 1), cube(path[i + 1], 2 * k + 1))
            )
        dominoes.extend(vertical)
        dominoes.extend(laid)
        records.append(
            IterationRecord(v_w, v_b, path, tuple(vertical), tuple(laid))
        )
        active.discard(v_w)
        active.discard(v_b)
        removed.extend((v_w, v_b))
    tiling = validate(region, dominoes)
    value = pretwist(tiling, w)
    if value.denominator != 1:
        raise InvariantViolationError(f"construction pretwist not an integer: {value}")
    tree_edges = frozenset(
        (min(s, q), max(s, q)) for s in tree for q in tree[s]
    )
    return tiling, MatchingTrace(tree_edges, tuple(records), value)


def algorithm1(base: PlanarRegion, w: Vec) -> Tiling:
    """A tiling of the base extruded to depth 2n-1 with integer pretwist
    along the extrusion direction (n = squares of each color)."""
    return algorithm1_trace(base, w)[0]


def is_tileable(region: Region) -> tuple[bool, Tiling | None]:
    """Whether the region admits a tiling, with a witness when it does.

    Backtracking that always fills a cube with the fewest open partners
    first; cheap parity and color-balance rejections come before any search.
    """
    cubes = region.cubes
    if len(cubes) % 2:
        return False, None
    if not region.is_balanced():
        return False, None
    if not cubes:
        return True, Tiling(region, [])
    ordered = region.sorted_cubes()
    covered: set[Vec] = set()
    chosen: list[Domino] = []

    def open_partners(c: Vec) -> list[Vec]:
        result = []
        for step in AXES:
            for q in (add(c, step), sub(c, step)):
                if q in cubes and q not in covered:
                    result.append(q)
        return result

    def search() -> bool:
        best: Vec | None = None
        best_options: list[Vec] = []
        for c in ordered:
            if c in covered:
                continue
            options = open_partners(c)
            if not options:
                return False
            if best is None or len(options) < len(best_options):
                best, best_options = c, options
                if len(options) == 1:
                    break
        if best is None:
            return True
        covered.add(best)
        for q in sorted(best_options):
            covered.add(q)
            chosen.append(Domino.pair(best, q))
            if search():
                return True
            chosen.pop()
            covered.remove(q)
        covered.remove(best)
        return False

    if search():
        return True, validate(region, chosen)
    return False, None
