"""Flips and trits, the local moves connecting tilings.

A flip removes two parallel dominoes filling a 2x2x1 slab and places them
back the other way; it never changes the twist.  A trit acts inside a 2x2x2
window that contains exactly three dominoes of the tiling, pairwise
non-parallel; those six cells always leave two opposite corners of the
window uncovered and admit exactly one other matching.  A trit carries a
sign: applying a positive trit raises the twist by one, a negative trit
lowers it.

The sign is intrinsic: it is the sign of the change in the summed axis
effects of the three dominoes alone, which is invariant under lattice
rotations and translations and negated by reflections.

Moves are identified by their window: ``anchor`` is the minimal corner of
the slab or window, ``variant`` is the slab's normal axis for a flip and the
index of the uncovered corner diagonal for a trit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from dominotwist.errors import InvalidMoveError
from dominotwist.geometry import AXES, Vec, add, axis_index
from dominotwist.tiling import Domino, Tiling
from dominotwist.twist import tau

# One representative per corner diagonal of the unit cube: the trit variant
# is the index of the uncovered corner offset that appears in this tuple.
_DIAGONAL_REPS: tuple[Vec, ...] = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True, order=True)
class Flip:
    """A flip move: ``anchor`` + unit steps along the two axes other than
    ``variant`` span the 2x2x1 slab."""

    anchor: Vec
    variant: int

    kind = "flip"
    sign = 1


@dataclass(frozen=True, order=True)
class Trit:
    """A trit move in the 2x2x2 window at ``anchor``; ``variant`` indexes
    the window's uncovered corner diagonal via ``_DIAGONAL_REPS``."""

    anchor: Vec
    variant: int
    sign: int

    kind = "trit"


Move = Union[Flip, Trit]


def _slab_cells(anchor: Vec, normal: int) -> tuple[Vec, ...]:
    i, j = (k for k in range(3) if k != normal)
    cells = []
    for a, b in ((0, 0), (1, 0), (0, 1), (1, 1)):
        cell = list(anchor)
        cell[i] += a
        cell[j] += b
        cells.append(tuple(cell))
    return tuple(cells)


def _window_cells(anchor: Vec) -> tuple[Vec, ...]:
    return tuple(
        (anchor[0] + a, anchor[1] + b, anchor[2] + c)
        for a, b, c in itertools.product((0, 1), repeat=3)
    )


def flips(t: Tiling) -> list[Flip]:
    """All flips available in ``t``, ordered by (anchor, variant)."""
    by_cube = t._by_cube()
    found = set()
    for d in t.dominoes:
        along = axis_index(d.direction)
        for b in range(3):
            if b == along:
                continue
            step = AXES[b]
            p0, p1 = add(d.white, step), add(d.black, step)
            partner = by_cube.get(p0)
            if partner is None or partner is not by_cube.get(p1):
                continue
            if set(partner.cells) != {p0, p1}:
                continue
            normal = 3 - along - b
            anchor = tuple(min(d.white[k], d.black[k]) for k in range(3))
            found.add(Flip(anchor, normal))
    return sorted(found)


def apply_flip(t: Tiling, flip: Flip) -> Tiling:
    """The tiling with the slab of ``flip`` re-paired the other way."""
    cells = _slab_cells(flip.anchor, flip.variant)
    by_cube = t._by_cube()
    inside = {by_cube[c] for c in cells if c in by_cube}
    if len(inside) != 2 or any(cell not in by_cube for cell in cells):
        raise InvalidMoveError(f"no flip at {flip.anchor} with normal {flip.variant}")
    removed = sorted(inside)
    covered = {cell for d in removed for cell in d.cells}
    if covered != set(cells):
        raise InvalidMoveError(f"slab at {flip.anchor} is not covered by two dominoes")
    along = axis_index(removed[0].direction)
    other = 3 - flip.variant - along
    step = AXES[other]
    low = [c for c in cells if c[other] == flip.anchor[other]]
    placed = [Domino.pair(c, add(c, step)) for c in low]
    return t.replace(removed, placed)


def _matchings(cells: tuple[Vec, ...]) -> list[frozenset[Domino]]:
    """All perfect matchings of a small cell set by face adjacency."""

    def extend(remaining: frozenset[Vec]) -> list[frozenset[Domino]]:
        if not remaining:
            return [frozenset()]
        first = min(remaining)
        results = []
        for step in AXES:
            nxt = add(first, step)
            if nxt in remaining:
                for rest in extend(remaining - {first, nxt}):
                    results.append(rest | {Domino.pair(first, nxt)})
        return results

    return extend(frozenset(cells))


def _axis_effects(group: frozenset[Domino]) -> Fraction:
    return sum(
        (tau(u, d0, d1) for u in AXES for d0 in group for d1 in group),
        Fraction(0),
    )


def trit_sign(removed: frozenset[Domino], placed: frozenset[Domino]) -> int:
    """Sign of a trit from its removed and placed domino triples.

    The summed axis effects over just these triples change by exactly 3/2 in
    one direction or the other; the sign of that change is the trit sign.
    """
    delta = _axis_effects(placed) - _axis_effects(removed)
    if abs(delta) * 2 != 3:
        raise InvalidMoveError(f"not a trit: effect change {delta}")
    return 1 if delta > 0 else -1


def _window_trit(t: Tiling, anchor: Vec) -> tuple[Trit, frozenset[Domino], frozenset[Domino]] | None:
    cells = _window_cells(anchor)
    by_cube = t._by_cube()
    inside = set()
    for cell in cells:
        d = by_cube.get(cell)
        if d is not None and all(c in cells for c in d.cells):
            inside.add(d)
    if len(inside) != 3:
        return None
    directions = {axis_index(d.direction) for d in inside}
    if len(directions) != 3:
        return None
    covered = {cell for d in inside for cell in d.cells}
    free = sorted(set(cells) - covered)
    offsets = [tuple(c - a for c, a in zip(cell, anchor)) for cell in free]
    assert len(offsets) == 2 and add(offsets[0], offsets[1]) == (1, 1, 1)
    rep = offsets[0] if offsets[0] in _DIAGONAL_REPS else offsets[1]
    variant = _DIAGONAL_REPS.index(rep)
    removed = frozenset(inside)
    others = [m for m in _matchings(tuple(covered)) if m != removed]
    assert len(others) == 1, "a trit window admits exactly one other matching"
    placed = others[0]
    return Trit(anchor, variant, trit_sign(removed, placed)), removed, placed


def trits(t: Tiling) -> list[Trit]:
    """All trits available in ``t``, ordered by (anchor, variant)."""
    lo, hi = t.region.bounds()
    found = []
    for anchor in itertools.product(
        range(lo[0] - 1, hi[0] - 1),
        range(lo[1] - 1, hi[1] - 1),
        range(lo[2] - 1, hi[2] - 1),
    ):
        hit = _window_trit(t, anchor)
        if hit is not None:
            found.append(hit[0])
    return sorted(found, key=lambda tr: (tr.anchor, tr.variant))


def apply_trit(t: Tiling, trit: Trit) -> Tiling:
    """The tiling with the window of ``trit`` re-matched the other way."""
    hit = _window_trit(t, trit.anchor)
    if hit is None:
        raise InvalidMoveError(f"no trit at {trit.anchor}")
    move, removed, placed = hit
    if move.variant != trit.variant or move.sign != trit.sign:
        raise InvalidMoveError(
            f"trit at {trit.anchor} has variant {move.variant} and sign {move.sign}"
        )
    return t.replace(sorted(removed), sorted(placed))


def moves(t: Tiling) -> list[Move]:
    """All flips and trits of ``t``, flips first."""
    return list(flips(t)) + list(trits(t))


def move_cells(move: Move) -> tuple[Vec, ...]:
    """The cells a move acts on: the flip's slab or the trit's window."""
    if move.kind == "flip":
        return _slab_cells(move.anchor, move.variant)
    return _window_cells(move.anchor)


def move_to_json(move: Move) -> dict:
    return {
        "kind": move.kind,
        "anchor": list(move.anchor),
        "variant": move.variant,
        "sign": move.sign,
    }


def move_from_json(obj: dict) -> Move:
    anchor = tuple(obj["anchor"])
    if len(anchor) != 3 or not all(isinstance(c, int) for c in anchor):
        raise ValueError(f"bad move anchor: {obj['anchor']!r}")
    variant = obj["variant"]
    kind = obj["kind"]
    if kind == "flip":
        if not 0 <= variant < 3:
            raise ValueError(f"bad flip variant: {variant!r}")
        return Flip(anchor, variant)
    if kind == "trit":
        if not 0 <= variant < 4:
            raise ValueError(f"bad trit variant: {variant!r}")
        sign = obj["sign"]
        if sign not in (1, -1):
            raise ValueError(f"bad trit sign: {sign!r}")
        return Trit(anchor, variant, sign)
    raise ValueError(f"unknown move kind: {kind!r}")
