"""Combinatorial maps: labeled graphs embedded in oriented surfaces.

A map is stored as a rotation system: every half-edge (dart) sits in the
counterclockwise rotation of exactly one vertex and is paired with exactly
one partner dart forming an edge.  Faces are orbits of the permutation
``next(d) = rot_next(partner(d))``; with counterclockwise rotations the
face traced from a dart lies on the right of that dart, so ``face_index(d)``
names the region a traveller along d sees on their right-hand side.  The
corner between rotation-consecutive darts ``(d, rot_next(d))`` belongs to
the face of ``rot_next(d)``.  Because rotations fix a counterclockwise
order at every vertex, every map built this way is embedded in an oriented
surface, so the
orientability requirement is discharged by construction.

Edges carry strand labels.  Strands of kind "curve" are embedded closed
curves, strands of kind "arc" are embedded paths with endpoints on boundary
cycles, and strands of the boundary family trace the boundary circles of
the surface.  Each boundary circle is capped by one all-boundary face (the
cap); removing the caps leaves the compact surface with boundary that the
map describes.

Disconnected pictures (a floating boundary circle created by puncturing, a
parallel curve pair with nothing between it and the rest of the diagram)
cannot be drawn as one cellular map.  For these the map carries *channels*:
unordered pairs of darts naming two faces joined by an untouched tube.  A
channel between two faces of different components assembles them into one
surface; a channel within one face (or between faces of one component) is a
hidden handle.  Every channel lowers the closed-up Euler characteristic by
two.  The assembled surface must be connected.

Degree rules for vertices:

* degree 4: a transverse crossing of two distinct non-boundary strands,
  alternating in the rotation;
* degree 3: an arc endpoint on a boundary cycle (one arc dart, two darts of
  one boundary strand);
* degree 2: both darts of one strand -- a basepoint or plain vertex on a
  boundary cycle, or a marker on a curve.  A crossing-free closed strand is
  kept as a single loop edge at one marker vertex.

``normalize`` suppresses redundant degree-2 vertices so that canonical
serializations never contain them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


CURVE_FAMILIES = ("a", "b", "c")
ARC_FAMILIES = ("Aa", "Ab", "Ac")
BOUNDARY_FAMILY = "bd"
FAMILIES = CURVE_FAMILIES + ARC_FAMILIES + (BOUNDARY_FAMILY,)

_FAMILY_ORDER = {fam: i for i, fam in enumerate(FAMILIES)}


class MapError(Exception):
    """Base class for map construction and format errors."""


class MapStructureError(MapError):
    """The data does not describe a valid labeled map."""


class MapFormatError(MapError):
    """The textual description is malformed."""


@total_ordering
@dataclass(frozen=True)
class StrandLabel:
    """Identity of one strand: a family symbol plus an index."""

    family: str
    index: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise MapStructureError("unknown strand family %r" % (self.family,))
        if self.index < 0:
            raise MapStructureError("negative strand index %d" % self.index)

    @property
    def kind(self) -> str:
        if self.family in CURVE_FAMILIES:
            return "curve"
        if self.family in ARC_FAMILIES:
            return "arc"
        return "boundary"

    @property
    def is_boundary(self) -> bool:
        return self.family == BOUNDARY_FAMILY

    def sort_key(self):
        return (_FAMILY_ORDER[self.family], self.index)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "%s%d" % (self.family, self.index)

    @staticmethod
    def parse(token: str) -> "StrandLabel":
        for fam in sorted(FAMILIES, key=len, reverse=True):
            if token.startswith(fam) and token[len(fam):].isdigit():
                return StrandLabel(fam, int(token[len(fam):]))
        raise MapFormatError("cannot parse strand label %r" % token)


@dataclass(frozen=True)
class SurfaceClass:
    """Topological type of the compact oriented surface under a map."""

    genus: int
    boundary_count: int
    euler: int
    connected: bool = True

    def __post_init__(self):
        if self.euler != 2 - 2 * self.genus - self.boundary_count:
            raise MapStructureError(
                "inconsistent surface class: euler %d, genus %d, boundary %d"
                % (self.euler, self.genus, self.boundary_count))

    def __str__(self):
        return "genus=%d boundary=%d euler=%d" % (
            self.genus, self.boundary_count, self.euler)


class CombMap:
    """An immutable validated combinatorial map.

    Parameters
    ----------
    rot: mapping vertex id -> sequence of darts in counterclockwise order.
    partner: mapping dart -> dart, a fixed-point-free involution.
    labels: mapping dart -> StrandLabel, equal on the two darts of an edge.
    orient: mapping StrandLabel -> seed dart fixing a traversal direction,
        one for each non-boundary strand.
    basepoints: iterable of vertex ids, one per boundary cycle.
    channels: iterable of dart pairs naming tube-joined faces.
    """

    def __init__(self, rot, partner, labels, orient=None, basepoints=(),
                 channels=(), validate=True):
        self._rot = {v: tuple(ds) for v, ds in rot.items()}
        self._partner = dict(partner)
        self._label = dict(labels)
        self._orient = dict(orient or {})
        self.basepoints = frozenset(basepoints)
        self.channels = tuple(sorted(tuple(sorted(ch)) for ch in channels))

        self._vertex_of = {}
        for v, ds in self._rot.items():
            for d in ds:
                if d in self._vertex_of:
                    raise MapStructureError("dart %d appears twice" % d)
                self._vertex_of[d] = v
        self._rot_next = {}
        self._rot_prev = {}
        for ds in self._rot.values():
            n = len(ds)
            for i, d in enumerate(ds):
                self._rot_next[d] = ds[(i + 1) % n]
                self._rot_prev[d] = ds[(i - 1) % n]

        self._faces = None
        self._face_index = None
        self._caps = None
        self._walks = {}
        self._forward = {}
        self._strand_darts = None
        if validate:
            self._validate()

    # ------------------------------------------------------------------
    # basic accessors

    @property
    def darts(self):
        return tuple(sorted(self._vertex_of))

    @property
    def vertices(self):
        return tuple(sorted(self._rot))

    def rot(self, v):
        return self._rot[v]

    def degree(self, v):
        return len(self._rot[v])

    def partner(self, d):
        return self._partner[d]

    def label(self, d) -> StrandLabel:
        return self._label[d]

    def vertex_of(self, d):
        return self._vertex_of[d]

    def rot_next(self, d):
        return self._rot_next[d]

    def rot_prev(self, d):
        return self._rot_prev[d]

    def face_next(self, d):
        return self._rot_next[self._partner[d]]

    def orient_seed(self, label):
        return self._orient[label]

    @property
    def orient(self):
        return dict(self._orient)

    def edge_count(self):
        return len(self._partner) // 2

    def edges(self):
        return tuple(sorted((d, p) for d, p in self._partner.items()
                            if d < p))

    # ------------------------------------------------------------------
    # strands

    def strand_labels(self):
        return tuple(sorted(set(self._label.values())))

    def curve_labels(self):
        return tuple(s for s in self.strand_labels() if s.kind == "curve")

    def arc_labels(self):
        return tuple(s for s in self.strand_labels() if s.kind == "arc")

    def boundary_labels(self):
        return tuple(s for s in self.strand_labels() if s.is_boundary)

    def strand_darts(self, label):
        if self._strand_darts is None:
            acc = {}
            for d, lab in self._label.items():
                acc.setdefault(lab, []).append(d)
            self._strand_darts = {lab: tuple(sorted(ds))
                                  for lab, ds in acc.items()}
        return self._strand_darts[label]

    def _continuation(self, arrived):
        """The dart continuing the strand of ``arrived`` past its vertex."""
        v = self._vertex_of[arrived]
        lab = self._label[arrived]
        out = [d for d in self._rot[v] if d != arrived and self._label[d] == lab]
        if not out:
            return None
        if len(out) > 1:
            raise MapStructureError(
                "strand %s is not embedded at vertex %d" % (lab, v))
        return out[0]

    def strand_walk(self, label):
        """Darts of the strand in traversal order.

        Closed strands start at the orientation seed (boundary strands at
        the dart leaving the basepoint); arcs run endpoint to endpoint
        starting from the seed dart.
        """
        if label in self._walks:
            return self._walks[label]
        darts = self.strand_darts(label)
        if label.kind == "arc":
            seed = self._orient[label]
            start = seed
            back = self._continuation(start)
            while back is not None:
                prev = self._partner[back]
                start = prev
                back = self._continuation(start)
                if start == seed:
                    raise MapStructureError("arc %s closes up" % (label,))
            walk = [start]
            while True:
                nxt = self._continuation(self._partner[walk[-1]])
                if nxt is None:
                    break
                walk.append(nxt)
        else:
            if label.is_boundary:
                bp = [v for v in self.basepoints
                      if any(self._label[d] == label for d in self._rot[v])]
                seed = min(self._rot[bp[0]]) if bp else min(darts)
            else:
                seed = self._orient.get(label, min(darts))
            walk = [seed]
            while True:
                nxt = self._continuation(self._partner[walk[-1]])
                if nxt is None:
                    raise MapStructureError("strand %s is not closed" % (label,))
                if nxt == seed:
                    break
                walk.append(nxt)
        if 2 * len(walk) != len(darts):
            raise MapStructureError(
                "strand %s does not form a single walk" % (label,))
        self._walks[label] = tuple(walk)
        return self._walks[label]

    def forward_darts(self, label):
        """The darts pointing along the strand's traversal direction."""
        if label not in self._forward:
            self._forward[label] = frozenset(self.strand_walk(label))
        return self._forward[label]

    def is_forward(self, d):
        return d in self.forward_darts(self._label[d])

    def arc_endpoints(self, label):
        walk = self.strand_walk(label)
        return (self._vertex_of[walk[0]],
                self._vertex_of[self._partner[walk[-1]]])

    def basepoint_of(self, bdlabel):
        for v in self.basepoints:
            if any(self._label[d] == bdlabel for d in self._rot[v]):
                return v
        raise MapStructureError("no basepoint on %s" % (bdlabel,))

    def crossings(self, s1, s2):
        """Vertices where strands s1 and s2 cross, in sorted order."""
        out = []
        for v, ds in self._rot.items():
            if len(ds) != 4:
                continue
            labs = {self._label[d] for d in ds}
            if labs == {s1, s2}:
                out.append(v)
        return sorted(out)

    def crossing_sign(self, v, s1, s2):
        """Sign of the crossing at v: +1 when s2's outgoing dart follows
        s1's outgoing dart immediately counterclockwise."""
        out1 = [d for d in self._rot[v]
                if self._label[d] == s1 and self.is_forward(d)]
        out2 = [d for d in self._rot[v]
                if self._label[d] == s2 and self.is_forward(d)]
        if len(out1) != 1 or len(out2) != 1:
            raise MapStructureError("vertex %d is not an (s1,s2) crossing" % v)
        if self._rot_next[out1[0]] == out2[0]:
            return 1
        if self._rot_prev[out1[0]] == out2[0]:
            return -1
        raise MapStructureError("vertex %d is not alternating" % v)

    # ------------------------------------------------------------------
    # faces, caps, components

    def faces(self):
        if self._faces is None:
            seen = set()
            faces = []
            index = {}
            for d0 in self.darts:
                if d0 in seen:
                    continue
                cyc = []
                d = d0
                while True:
                    cyc.append(d)
                    seen.add(d)
                    d = self.face_next(d)
                    if d == d0:
                        break
                    if d in seen:
                        raise MapStructureError(
                            "face tracing collided at dart %d" % d)
                for c in cyc:
                    index[c] = len(faces)
                faces.append(tuple(cyc))
            self._faces = tuple(faces)
            self._face_index = index
        return self._faces

    def face_index(self, d):
        self.faces()
        return self._face_index[d]

    def face_darts(self, d):
        """The full dart cycle of the face on the right of d."""
        return self.faces()[self.face_index(d)]

    def caps(self):
        """Face indices of the caps, one per boundary strand."""
        if self._caps is not None:
            return self._caps
        faces = self.faces()
        candidates = {}
        for i, f in enumerate(faces):
            labs = {self._label[d] for d in f}
            if len(labs) == 1 and next(iter(labs)).is_boundary:
                lab = next(iter(labs))
                edge_ids = [min(d, self._partner[d]) for d in f]
                if len(set(edge_ids)) == len(edge_ids) and \
                        len(f) == len(self.strand_darts(lab)) // 2:
                    candidates.setdefault(lab, []).append(i)
        anchored = set()
        for da, db in self.channels:
            anchored.add(self.face_index(da))
            anchored.add(self.face_index(db))
        caps = {}
        for lab in self.boundary_labels():
            cands = [i for i in candidates.get(lab, []) if i not in anchored]
            if not cands:
                raise MapStructureError(
                    "boundary strand %s has no cap face" % (lab,))
            if len(cands) > 1:
                cands.sort(key=lambda i: min(faces[i]), reverse=True)
            caps[lab] = cands[0]
        if len(set(caps.values())) != len(caps):
            raise MapStructureError("two boundary strands share a cap face")
        self._caps = frozenset(caps.values())
        return self._caps

    def components(self):
        """Connected components of the underlying graph, as dart sets."""
        parent = {d: d for d in self._vertex_of}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for ds in self._rot.values():
            for d in ds[1:]:
                union(ds[0], d)
        for d, p in self._partner.items():
            union(d, p)
        comps = {}
        for d in self._vertex_of:
            comps.setdefault(find(d), set()).add(d)
        return tuple(frozenset(c) for c in
                     sorted(comps.values(), key=min))

    def surface_class(self) -> SurfaceClass:
        faces = self.faces()
        comps = self.components()
        comp_of_dart = {}
        for i, c in enumerate(comps):
            for d in c:
                comp_of_dart[d] = i
        euler_closed = 0
        for i, c in enumerate(comps):
            vs = {self._vertex_of[d] for d in c}
            es = len({frozenset((d, self._partner[d])) for d in c})
            fs = sum(1 for f in faces if comp_of_dart[f[0]] == i)
            chi = len(vs) - es + fs
            if chi % 2 or chi > 2:
                raise MapStructureError(
                    "component %d has impossible euler characteristic %d"
                    % (i, chi))
            euler_closed += chi
        euler_closed -= 2 * len(self.channels)
        links = {i: {i} for i in range(len(comps))}

        def merge(i, j):
            tgt = links[i] | links[j]
            for k in tgt:
                links[k] = tgt

        for da, db in self.channels:
            merge(comp_of_dart[da], comp_of_dart[db])
        if comps and len(links[0]) != len(comps):
            raise MapStructureError("assembled surface is disconnected")
        if (2 - euler_closed) % 2:
            raise MapStructureError("assembled surface is not orientable")
        genus = (2 - euler_closed) // 2
        if genus < 0:
            raise MapStructureError("negative assembled genus")
        b = len(self.boundary_labels())
        return SurfaceClass(genus, b, euler_closed - b)

    # ------------------------------------------------------------------
    # validation

    def _validate(self):
        if not self._vertex_of:
            raise MapStructureError("empty map")
        for d, p in self._partner.items():
            if p == d:
                raise MapStructureError("dart %d paired with itself" % d)
            if self._partner.get(p) != d:
                raise MapStructureError("edge pairing is not an involution")
            if d not in self._vertex_of or p not in self._vertex_of:
                raise MapStructureError("dart %d not placed at a vertex" % d)
            if self._label.get(d) != self._label.get(p):
                raise MapStructureError(
                    "darts %d~%d carry different labels" % (d, p))
        for d in self._vertex_of:
            if d not in self._partner:
                raise MapStructureError("dart %d has no edge partner" % d)
            if d not in self._label:
                raise MapStructureError("dart %d has no label" % d)

        for v, ds in self._rot.items():
            deg = len(ds)
            labs = [self._label[d] for d in ds]
            if deg == 2:
                if labs[0] != labs[1]:
                    raise MapStructureError(
                        "degree-2 vertex %d joins two strands" % v)
            elif deg == 3:
                kinds = sorted(l.kind for l in labs)
                if kinds != ["arc", "boundary", "boundary"]:
                    raise MapStructureError(
                        "degree-3 vertex %d is not an arc endpoint" % v)
                bd = [l for l in labs if l.is_boundary]
                if bd[0] != bd[1]:
                    raise MapStructureError(
                        "arc endpoint %d sits on two boundary strands" % v)
            elif deg == 4:
                if any(l.is_boundary for l in labs):
                    raise MapStructureError(
                        "boundary strand crosses at vertex %d" % v)
                if labs[0] != labs[2] or labs[1] != labs[3] \
                        or labs[0] == labs[1]:
                    raise MapStructureError(
                        "vertex %d is not an alternating transverse crossing"
                        % v)
            else:
                raise MapStructureError(
                    "vertex %d has degree %d" % (v, deg))

        for v in self.basepoints:
            if v not in self._rot:
                raise MapStructureError("basepoint %d is not a vertex" % v)
            ds = self._rot[v]
            if len(ds) != 2 or not self._label[ds[0]].is_boundary:
                raise MapStructureError(
                    "basepoint %d is not a plain boundary vertex" % v)

        for lab in self.strand_labels():
            walk = self.strand_walk(lab)
            if lab.kind == "arc":
                for end in (self._vertex_of[walk[0]],
                            self._vertex_of[self._partner[walk[-1]]]):
                    if len(self._rot[end]) != 3:
                        raise MapStructureError(
                            "arc %s does not end on a boundary cycle" % (lab,))
            if lab.is_boundary:
                bps = [v for v in self.basepoints
                       if any(self._label[d] == lab for d in self._rot[v])]
                if len(bps) != 1:
                    raise MapStructureError(
                        "boundary strand %s has %d basepoints"
                        % (lab, len(bps)))
            elif lab not in self._orient:
                raise MapStructureError("strand %s has no orientation seed"
                                        % (lab,))
            elif self._label[self._orient[lab]] != lab:
                raise MapStructureError(
                    "orientation seed of %s lies on another strand" % (lab,))

        present = set(self.strand_labels())
        for lab in self._orient:
            if lab not in present:
                raise MapStructureError(
                    "orientation seed for absent strand %s" % (lab,))
        for da, db in self.channels:
            if da not in self._vertex_of or db not in self._vertex_of:
                raise MapStructureError("channel names a missing dart")
        self.caps()
        self.surface_class()

    # ------------------------------------------------------------------
    # rebuilding helpers

    def relabel(self, dart_map, vertex_map=None):
        """A new map with darts (and optionally vertices) renamed."""
        if vertex_map is None:
            vertex_map = {v: v for v in self._rot}
        rot = {vertex_map[v]: tuple(dart_map[d] for d in ds)
               for v, ds in self._rot.items()}
        partner = {dart_map[d]: dart_map[p] for d, p in self._partner.items()}
        labels = {dart_map[d]: lab for d, lab in self._label.items()}
        orient = {lab: dart_map[d] for lab, d in self._orient.items()}
        basepoints = {vertex_map[v] for v in self.basepoints}
        channels = tuple((dart_map[a], dart_map[b]) for a, b in self.channels)
        return CombMap(rot, partner, labels, orient, basepoints, channels)

    def normalize(self):
        """Suppress redundant degree-2 vertices.

        Keeps basepoints, keeps one loop marker on crossing-free closed
        strands, removes every other degree-2 vertex.
        """
        rot = {v: list(ds) for v, ds in self._rot.items()}
        partner = dict(self._partner)
        labels = dict(self._label)
        orient = dict(self._orient)
        channels = [list(ch) for ch in self.channels]

        def rot_next_now(d):
            ds = rot[next(v for v in rot if d in rot[v])]
            return ds[(ds.index(d) + 1) % len(ds)]

        def suppressible(v):
            if v not in rot or len(rot[v]) != 2 or v in self.basepoints:
                return False
            x, y = rot[v]
            return partner[x] != y

        changed = True
        while changed:
            changed = False
            for v in sorted(rot):
                if not suppressible(v):
                    continue
                x, y = rot[v]
                xb, yb = partner[x], partner[y]
                for ch in channels:
                    for i, anchor in enumerate(ch):
                        if anchor in (x, y):
                            ch[i] = rot_next_now(partner[anchor])
                partner[xb] = yb
                partner[yb] = xb
                for lab, seed in list(orient.items()):
                    if seed == x:
                        orient[lab] = yb
                    elif seed == y:
                        orient[lab] = xb
                del rot[v], partner[x], partner[y], labels[x], labels[y]
                changed = True
                break
        return CombMap(rot, {d: p for d, p in partner.items()},
                       labels, orient, self.basepoints, channels)

    def __repr__(self):
        cls = self.surface_class()
        return "<CombMap %d vertices %d edges %s>" % (
            len(self._rot), self.edge_count(), cls)
