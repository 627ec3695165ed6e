"""Lattice geometry: colors, bases, regions, classification, balance."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import support
from dominotwist import geometry as geo
from dominotwist.errors import InvalidRegionError


def test_color_convention():
    assert geo.color((0, 0, 0)) == -1
    assert geo.color((1, 0, 0)) == 1
    assert geo.color((1, 1, 0)) == -1
    assert geo.color((1, 1, 1)) == 1


@given(st.tuples(*[st.integers(-20, 20)] * 3), st.tuples(*[st.integers(-9, 9)] * 3))
def test_color_translation_parity(cube, offset):
    moved = geo.color(geo.add(cube, offset))
    if sum(offset) % 2 == 0:
        assert moved == geo.color(cube)
    else:
        assert moved == -geo.color(cube)


@given(st.tuples(*[st.integers(-20, 20)] * 3), st.integers(0, 2))
def test_color_flips_under_mirror(cube, axis_idx):
    assert geo.color(support.reflect_cube(cube, axis_idx)) == -geo.color(cube)


def test_vector_helpers():
    assert geo.cross(geo.EX, geo.EY) == geo.EZ
    assert geo.det3(geo.EX, geo.EY, geo.EZ) == 1
    assert geo.det3(geo.EY, geo.EX, geo.EZ) == -1
    assert geo.axis_index((0, 0, -1)) == 2
    assert geo.axis_name(geo.EY) == "y"
    assert geo.axis_from_name("x") == geo.EX
    with pytest.raises(ValueError):
        geo.axis_index((1, 1, 0))


def test_all_bases_are_the_24_rotations():
    bases = geo.all_bases()
    assert len(bases) == len(set(bases)) == 24
    for b in bases:
        assert geo.det3(*b) == 1


@pytest.mark.parametrize("u", geo.AXES + tuple(map(geo.neg, geo.AXES)))
def test_basis_around_every_direction(u):
    basis = geo.Basis.around(u)
    assert basis.b3 == u
    assert geo.det3(*basis) == 1


@pytest.mark.parametrize("u", geo.AXES)
def test_plane_axes_right_handed(u):
    a1, a2 = geo.plane_axes(u)
    assert geo.det3(a1, a2, u) == 1


def test_planar_region_basics():
    base = geo.PlanarRegion.of(geo.EX, 5, [(0, 0), (0, 1)])
    assert base.cube_at((0, 1), 2) == (7, 0, 1)
    assert base.is_balanced()
    with pytest.raises(InvalidRegionError):
        geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (0, 0)])


def test_simple_connectivity_predicates():
    path = frozenset({(0, 0), (1, 0), (1, 1)})
    ring = frozenset((i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1))
    split = frozenset({(0, 0), (2, 0)})
    assert geo.simply_connected(path)
    assert geo.interior_connected(ring) and not geo.simply_connected(ring)
    assert not geo.interior_connected(split)


def test_region_rejects_duplicates():
    with pytest.raises(InvalidRegionError):
        geo.Region.of([(0, 0, 0), (0, 0, 0)])


def test_box_region_and_classification():
    box = geo.make_box(2, 3, 4)
    assert len(box) == 24
    assert box.bounds() == ((0, 0, 0), (2, 3, 4))
    cls = geo.classify(box)
    assert cls.kind == "box"
    assert set(cls.axes) == set(geo.AXES)
    for axis, depth in zip(geo.AXES, (2, 3, 4)):
        structure = cls.structure(axis)
        assert structure.depth == depth
        assert structure.simply_connected
    assert cls.structure(geo.neg(geo.EZ)).depth == 4


def test_cylinder_classification():
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (1, 0), (1, 1), (2, 1)])
    region = geo.make_cylinder(base, geo.EZ, 3)
    cls = geo.classify(region)
    assert cls.kind == "cylinder"
    assert cls.structure(geo.EZ).depth == 3
    assert cls.structure(geo.EZ).base.squares == base.squares


def test_pseudocylinder_classification():
    ring = geo.PlanarRegion.of(
        geo.EZ, 0, [(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    )
    region = geo.make_cylinder(ring, geo.EZ, 2)
    cls = geo.classify(region)
    assert cls.kind == "pseudocylinder"
    assert not cls.structure(geo.EZ).simply_connected


def test_staircase_region_is_no_extrusion():
    region, _ = support.fixture_tiling("twodimers")
    assert geo.classify(region).kind == "other"


def test_cylinder_along_negated_axis_stacks_below():
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (1, 0)])
    region = geo.make_cylinder(base, geo.neg(geo.EZ), 2)
    assert region.cubes == {(0, 0, -1), (0, 0, -2), (1, 0, -1), (1, 0, -2)}


def test_cylinder_argument_errors():
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        geo.make_cylinder(base, geo.EX, 2)
    with pytest.raises(ValueError):
        geo.make_cylinder(base, geo.EZ, 0)


def test_fully_balanced_on_box_and_empty():
    box = geo.make_box(3, 3, 2)
    for u in geo.AXES + tuple(map(geo.neg, geo.AXES)):
        assert geo.is_fully_balanced(box, u)
    assert geo.is_fully_balanced(geo.Region([]), geo.EZ)


def test_fully_balanced_counterexample_slab_with_bump():
    region = geo.Region.of(
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]
    )
    assert not geo.is_fully_balanced(region, geo.EZ)


def test_fully_balanced_symmetric_in_direction():
    region = geo.Region.of(
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]
    )
    for u in geo.AXES:
        assert geo.is_fully_balanced(region, u) == geo.is_fully_balanced(
            region, geo.neg(u)
        )


def test_random_pseudocylinders_are_fully_balanced():
    rng = support.seeded(20260814)
    directions = geo.AXES + tuple(map(geo.neg, geo.AXES))
    for _ in range(100):
        cells = support.random_polyomino(rng, rng.randint(2, 12))
        base = geo.PlanarRegion.of(rng.choice(geo.AXES), rng.randint(-2, 2), cells)
        region = geo.make_cylinder(base, base.axis, rng.randint(1, 4))
        for u in directions:
            assert geo.is_fully_balanced(region, u)


def test_region_json_round_trip():
    region = geo.make_box(2, 2, 3)
    assert geo.region_from_json(geo.region_to_json(region)) == region


def test_region_json_shorthands():
    assert geo.region_from_json({"box": [2, 3, 4]}) == geo.make_box(2, 3, 4)
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (1, 0)])
    obj = {
        "cylinder": {
            "base": [[0, 0], [1, 0]],
            "plane": {"axis": "z", "level": 0},
            "depth": 2,
        }
    }
    assert geo.region_from_json(obj) == geo.make_cylinder(base, geo.EZ, 2)


def test_region_json_rejects_duplicates():
    with pytest.raises(InvalidRegionError):
        geo.region_from_json({"cubes": [[0, 0, 0], [0, 0, 0]]})


def test_planar_region_json_round_trip():
    base = geo.PlanarRegion.of(geo.EY, -1, [(0, 0), (0, 1), (1, 1)])
    assert geo.planar_region_from_json(geo.planar_region_to_json(base)) == base


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_box_bounds_and_parity(L, M, N):
    box = geo.make_box(L, M, N)
    black, white = box.color_counts()
    assert black + white == L * M * N
    assert abs(black - white) == (L * M * N) % 2
