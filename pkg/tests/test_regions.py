"""Complement regions: Euler bookkeeping, circuits, sides, caps."""

import pytest

from reltri.combmap import MapStructureError
from reltri.regions import (
    RegionComplex, complement_is_connected_planar, strands_separate,
)

from maps import (
    A0, ARC_A, B0, BD0, BD1,
    annulus, bare_annulus, overlapping_cores, spanning_arc, torus,
)


def test_torus_full_complement():
    m = torus()
    rc = RegionComplex(m, [A0, B0])
    regions = rc.surface_regions()
    assert len(regions) == 1
    sq = regions[0]
    assert sq.is_disk
    assert (sq.chi, sq.genus, sq.num_circuits) == (1, 0, 1)
    assert sq.corner_count(m, 0) == 4
    labs = [s.label for s in sq.sides(m, 0)]
    assert sorted(str(l) for l in labs) == ["a0", "a0", "b0", "b0"]


def test_torus_complement_of_one_curve():
    m = torus()
    rc = RegionComplex(m, [A0])
    regions = rc.surface_regions()
    assert len(regions) == 1
    r = regions[0]
    assert (r.chi, r.genus, r.num_circuits) == (0, 0, 2)
    assert not r.is_disk
    for ci in range(2):
        assert r.circuit_labels(m, ci) == (A0,)


def test_torus_complement_of_nothing():
    rc = RegionComplex(torus(), [])
    regions = rc.surface_regions()
    assert len(regions) == 1
    assert regions[0].genus == 1
    assert regions[0].num_circuits == 0


def test_annulus_regions_and_caps():
    m = annulus()
    rc = RegionComplex(m, [BD0, BD1, A0])
    surface = rc.surface_regions()
    assert len(surface) == 2
    for r in surface:
        assert (r.genus, r.num_circuits) == (0, 2)
        assert r.chi == 0
        assert len(r.channels_inside) == 1
    caps = [r for r in rc.regions if r.is_cap]
    assert len(caps) == 2
    # the tube region at bd0 joins the faces of darts 0 and 5
    r0 = rc.region_of_dart(0)
    assert r0.faces == frozenset({m.face_index(0), m.face_index(5)})
    assert rc.region_of_dart(5) is r0
    assert rc.region_of_face(m.face_index(0)) is r0


def test_region_of_deleted_dart_rejected():
    m = torus()
    rc = RegionComplex(m, [A0])
    with pytest.raises(MapStructureError):
        rc.region_of_dart(1)


def test_spanning_arc_square():
    m = spanning_arc()
    rc = RegionComplex(m, list(m.strand_labels()))
    surface = rc.surface_regions()
    assert len(surface) == 1
    sq = surface[0]
    assert sq.is_disk
    sides = sq.sides(m, 0)
    assert len(sides) == 4
    arc_sides = [s for s in sides if s.label == ARC_A]
    bd_sides = [s for s in sides if s.label.is_boundary]
    assert len(arc_sides) == 2 and len(bd_sides) == 2
    # each boundary run passes its circle's basepoint
    for s in bd_sides:
        interior = sq.run_interior_vertices(0, s.start, s.length)
        assert interior & m.basepoints


def test_overlapping_cores_bigons():
    m = overlapping_cores()
    rc = RegionComplex(m, list(m.strand_labels()))
    bigons = []
    for r in rc.surface_regions():
        if r.is_disk and not r.channels_inside:
            sides = r.sides(m, 0)
            if len(sides) == 2:
                bigons.append({str(s.label) for s in sides})
    assert bigons == [{"a0", "b0"}, {"a0", "b0"}]


def test_complement_connected_planar():
    assert complement_is_connected_planar(torus(), [A0, B0])
    assert complement_is_connected_planar(torus(), [A0])
    assert not complement_is_connected_planar(torus(), [])
    assert not complement_is_connected_planar(annulus(), [BD0, BD1, A0])


def test_strands_separate_shapes():
    assert strands_separate(torus(), [A0]) == ((0, 2),)
    assert strands_separate(annulus(), [BD0, BD1, A0]) == ((0, 2), (0, 2))
    assert strands_separate(torus(), []) == ((1, 0),)
    assert strands_separate(bare_annulus(), [BD0, BD1]) == ((0, 2),)
