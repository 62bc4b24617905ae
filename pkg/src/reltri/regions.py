"""Complement regions of a strand subsystem inside a map.

Given a map and a set of kept strand labels, the complement of the kept
strands decomposes the surface into regions.  Each region is a union of
faces of the full map, merged across edges of deleted strands and across
channels.  The region's boundary circuits are traced with the kept darts
only: the successor of a kept dart is found by scanning its face orbit and
hopping across deleted edges.

Euler characteristic bookkeeping: a region built from F faces, absorbing
E deleted edges, V fully-deleted vertices and t channels, is a compact
surface with chi = F - E + V - 2t, hence genus (2 - chi - c)/2 where c is
its number of boundary circuits.  A disk region is genus 0 with one
circuit; a bigon is a disk region whose circuit has exactly two corners
(a corner is a passage between distinct strands).

Regions consisting of a single cap face are flagged; cap regions lie
outside the surface and are skipped by every geometric search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combmap import CombMap, MapStructureError


@dataclass(frozen=True)
class Side:
    """One maximal same-strand run of a region circuit."""

    label: object
    darts: tuple
    start: int
    length: int


@dataclass(frozen=True)
class Region:
    index: int
    faces: frozenset
    circuits: tuple        # each circuit: tuple of (dart, passed-vertices)
    chi: int
    genus: int
    interior_vertices: frozenset
    channels_inside: tuple
    is_cap: bool

    @property
    def num_circuits(self):
        return len(self.circuits)

    @property
    def is_disk(self):
        return not self.is_cap and self.genus == 0 and self.num_circuits == 1

    def circuit_labels(self, m: CombMap, ci):
        return tuple(m.label(d) for d, _ in self.circuits[ci])

    def sides(self, m: CombMap, ci):
        """Maximal same-label runs of circuit ci, cyclically."""
        circ = self.circuits[ci]
        labs = [m.label(d) for d, _ in circ]
        n = len(circ)
        if n == 0:
            return []
        if all(l == labs[0] for l in labs):
            return [Side(labs[0], tuple(d for d, _ in circ), 0, n)]
        start = 0
        while labs[start - 1] == labs[start]:
            start += 1
        sides = []
        i = start
        while True:
            j = i
            run = []
            while True:
                run.append(circ[j % n][0])
                j += 1
                if labs[j % n] != labs[i % n]:
                    break
            sides.append(Side(labs[i % n], tuple(run), i % n, len(run)))
            i = j
            if i % n == start:
                break
        return sides

    def corner_count(self, m: CombMap, ci):
        sides = self.sides(m, ci)
        return 0 if len(sides) == 1 else len(sides)

    def run_interior_vertices(self, ci, start, length):
        """Vertices passed strictly inside a run of circuit ci."""
        circ = self.circuits[ci]
        n = len(circ)
        out = set()
        for k in range(length - 1):
            out.update(circ[(start + k) % n][1])
        return out


class RegionComplex:
    """Regions of the complement of the kept strands."""

    def __init__(self, m: CombMap, kept):
        self.map = m
        self.kept = frozenset(kept)
        for lab in m.boundary_labels():
            if lab not in self.kept:
                raise MapStructureError(
                    "region complexes require boundary strands kept")
        faces = m.faces()
        deleted = self._deleted = \
            frozenset(d for d in m.darts if m.label(d) not in self.kept)

        parent = list(range(len(faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for d in deleted:
            union(m.face_index(d), m.face_index(m.partner(d)))
        for da, db in m.channels:
            union(m.face_index(da), m.face_index(db))

        groups = {}
        for fi in range(len(faces)):
            groups.setdefault(find(fi), []).append(fi)

        caps = m.caps()
        self._region_of_face = {}
        region_faces = []
        for root in sorted(groups, key=lambda r: min(groups[r])):
            idx = len(region_faces)
            region_faces.append(frozenset(groups[root]))
            for fi in groups[root]:
                self._region_of_face[fi] = idx

        circuits_by_region = [[] for _ in region_faces]
        seen = set()
        for d0 in m.darts:
            if d0 in deleted or d0 in seen:
                continue
            circ = []
            d = d0
            while True:
                seen.add(d)
                x = m.face_next(d)
                passed = [m.vertex_of(x)]
                while x in deleted:
                    x = m.face_next(m.partner(x))
                    passed.append(m.vertex_of(x))
                circ.append((d, tuple(passed)))
                d = x
                if d == d0:
                    break
            ri = self._region_of_face[m.face_index(d0)]
            circuits_by_region[ri].append(tuple(circ))

        edge_del = {}
        vert_del = {}
        for d in deleted:
            p = m.partner(d)
            if d < p:
                ri = self._region_of_face[m.face_index(d)]
                edge_del[ri] = edge_del.get(ri, 0) + 1
        for v in m.vertices:
            ds = m.rot(v)
            if all(d in deleted for d in ds):
                ri = self._region_of_face[m.face_index(ds[0])]
                vert_del.setdefault(ri, set()).add(v)
        chan_in = {}
        for ch in m.channels:
            ri = self._region_of_face[m.face_index(ch[0])]
            chan_in.setdefault(ri, []).append(ch)

        regions = []
        for idx, rf in enumerate(region_faces):
            circuits = tuple(sorted(circuits_by_region[idx],
                                    key=lambda c: c[0][0]))
            chs = tuple(chan_in.get(idx, []))
            ivs = frozenset(vert_del.get(idx, set()))
            chi = len(rf) - edge_del.get(idx, 0) + len(ivs) - 2 * len(chs)
            c = len(circuits)
            if (2 - chi - c) % 2:
                raise MapStructureError(
                    "region %d has odd genus defect (chi=%d, circuits=%d)"
                    % (idx, chi, c))
            genus = (2 - chi - c) // 2
            if genus < 0:
                raise MapStructureError("region %d has negative genus" % idx)
            is_cap = len(rf) == 1 and next(iter(rf)) in caps
            regions.append(Region(idx, rf, circuits, chi, genus, ivs,
                                  chs, is_cap))
        self.regions = tuple(regions)

    def region_of_face(self, fi) -> Region:
        return self.regions[self._region_of_face[fi]]

    def region_of_dart(self, dart) -> Region:
        """The region containing the face this kept dart borders."""
        if dart in self._deleted:
            raise MapStructureError("dart %d is not kept" % dart)
        return self.region_of_face(self.map.face_index(dart))

    def surface_regions(self):
        return tuple(r for r in self.regions if not r.is_cap)


def complement_is_connected_planar(m: CombMap, kept):
    """True iff cutting along the kept non-boundary strands leaves one
    planar piece (the cut-system condition on the complement)."""
    rc = RegionComplex(m, kept)
    surf = rc.surface_regions()
    return len(surf) == 1 and surf[0].genus == 0


def strands_separate(m: CombMap, kept):
    """Number of complement pieces and their genera for the kept system."""
    rc = RegionComplex(m, kept)
    return tuple(sorted((r.genus, r.num_circuits) for r in
                        rc.surface_regions()))
