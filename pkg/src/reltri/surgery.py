"""Surgery on maps: drawing, deleting and isotoping strands.

``MapBuilder`` is the mutable companion of ``CombMap``.  ``RouteWalker``
draws one strand into a builder as a sequence of stops: it starts on a
boundary edge or at a slit vertex, pierces existing edges, dives through
channels, and ends on the boundary or closes up.  Every stop names darts
of the *current* builder state; ``cross(t)`` enters the edge of dart ``t``
from ``face_index(t)`` and the crossing it makes is positive with respect
to t's direction.

Deleting strands keeps the underlying surface fixed: the complement
regions absorbing the deleted edges are measured first, and each one is
rewired with ``(circuits - 1) + genus`` channels so the closed-up Euler
characteristic and connectivity are unchanged.

Bigon and half-bigon collapses reroute the moving strand: it is deleted,
then redrawn from its old crossing sequence with the collapsed interval
replaced by a parallel run along the far side of the other strand.  A
reroute whose replacement crosses nothing degenerates to a trivial circle
or to the belt of the residual channel; any other crossing-free
complement leaves the class of the replacement undetermined and raises
instead of guessing.
"""

from __future__ import annotations

from .combmap import CombMap, MapStructureError, StrandLabel
from .regions import RegionComplex


class RouteError(MapStructureError):
    """A drawing step is impossible at the current position."""


class CollapseUndetermined(MapStructureError):
    """The isotoped strand's position cannot be pinned down by this
    representation (crossing-free reroute in a complicated complement)."""


def fresh_label(m: CombMap, family: str) -> StrandLabel:
    taken = [lab.index for lab in m.strand_labels() if lab.family == family]
    return StrandLabel(family, max(taken) + 1 if taken else 0)


class MapBuilder:
    """Mutable map state for surgery; build with ``finish``."""

    def __init__(self, m: CombMap | None = None):
        self.rot = {}
        self.partner = {}
        self.label = {}
        self.orient = {}
        self.basepoints = set()
        self.channels = []
        self._at = {}
        self._next_dart = 0
        self._next_vertex = 0
        if m is not None:
            self.rot = {v: list(m.rot(v)) for v in m.vertices}
            self.partner = {d: m.partner(d) for d in m.darts}
            self.label = {d: m.label(d) for d in m.darts}
            self.orient = dict(m.orient)
            self.basepoints = set(m.basepoints)
            self.channels = [list(ch) for ch in m.channels]
            for v, ds in self.rot.items():
                for d in ds:
                    self._at[d] = v
            self._next_dart = max(m.darts) + 1
            self._next_vertex = max(m.vertices) + 1

    # ------------------------------------------------------------------

    def new_dart(self):
        d = self._next_dart
        self._next_dart += 1
        return d

    def new_vertex(self):
        v = self._next_vertex
        self._next_vertex += 1
        return v

    def at(self, d):
        return self._at[d]

    def rot_next(self, d):
        ds = self.rot[self._at[d]]
        return ds[(ds.index(d) + 1) % len(ds)]

    def face_orbit(self, d0, ignore=frozenset()):
        """The face orbit through d0, sweeping past unpartnered darts."""
        if d0 in ignore or d0 not in self.partner:
            raise RouteError("dart %d cannot anchor a face" % d0)
        out = []
        d = d0
        while True:
            out.append(d)
            nxt = self.rot_next(self.partner[d])
            while nxt in ignore:
                nxt = self.rot_next(nxt)
            d = nxt
            if d == d0:
                return tuple(out)
            if len(out) > 2 * len(self._at) + 2:
                raise MapStructureError("face tracing does not close")

    def split_edge(self, e):
        """Subdivide the edge of e; returns (w, q, r) with w the new
        vertex, q its dart toward the old head, r toward the old tail."""
        p = self.partner[e]
        w = self.new_vertex()
        q, r = self.new_dart(), self.new_dart()
        lab = self.label[e]
        self.rot[w] = [q, r]
        self._at[q] = self._at[r] = w
        self.partner[e] = r
        self.partner[r] = e
        self.partner[q] = p
        self.partner[p] = q
        self.label[q] = self.label[r] = lab
        return w, q, r

    def remove_darts(self, darts):
        for d in darts:
            v = self._at.pop(d)
            self.rot[v].remove(d)
            if not self.rot[v]:
                del self.rot[v]
            self.partner.pop(d, None)
            self.label.pop(d, None)

    def finish(self, *, normalize=True) -> CombMap:
        m = CombMap({v: tuple(ds) for v, ds in self.rot.items()},
                    dict(self.partner), dict(self.label), dict(self.orient),
                    set(self.basepoints),
                    [tuple(ch) for ch in self.channels], validate=False)
        if normalize:
            return m.normalize()
        return CombMap({v: tuple(ds) for v, ds in self.rot.items()},
                       dict(self.partner), dict(self.label),
                       dict(self.orient), set(self.basepoints),
                       [tuple(ch) for ch in self.channels])

    def snapshot(self) -> CombMap:
        """An unvalidated read-only view for face and cap queries."""
        return CombMap({v: tuple(ds) for v, ds in self.rot.items()},
                       dict(self.partner), dict(self.label),
                       dict(self.orient), set(self.basepoints),
                       [tuple(ch) for ch in self.channels], validate=False)


def _channel_path(b: MapBuilder, anchor, targets, ignored=frozenset()):
    """Breadth-first channel hops from the face of ``anchor`` to a face
    holding one of the target darts; returns (target, channels crossed)."""
    targets = sorted(set(targets))
    start = b.face_orbit(anchor, ignored)
    hit = [t for t in targets if t in start]
    if hit:
        return hit[0], []
    seen = {frozenset(start)}
    queue = [(anchor, [])]
    while queue:
        a, hops = queue.pop(0)
        orbit = b.face_orbit(a, ignored)
        used = set(hops)
        for ch in sorted(tuple(sorted(c)) for c in b.channels):
            if ch in used:
                continue
            da, db = ch
            for near, far in ((da, db), (db, da)):
                if near in orbit and far not in ignored:
                    far_orbit = b.face_orbit(far, ignored)
                    hit = [t for t in targets if t in far_orbit]
                    plan = hops + [ch]
                    if hit:
                        return hit[0], plan
                    key = frozenset(far_orbit)
                    if key not in seen:
                        seen.add(key)
                        queue.append((far, plan))
    raise RouteError("no target dart reachable from the current face")


class RouteWalker:
    """Draws one strand into a builder, one stop at a time."""

    def __init__(self, builder: MapBuilder, label: StrandLabel):
        if label.is_boundary:
            raise RouteError("cannot draw a boundary strand")
        self.b = builder
        self.label = label
        self.pending = None
        self.first_open = None
        self.first_anchor = None
        self.anchor = None
        self.seed = None
        self.done = False
        self.stops = 0
        self._dives = []

    # -- position helpers ------------------------------------------------

    def _ignored(self):
        ig = set()
        if self.pending is not None:
            ig.add(self.pending)
        if self.first_open is not None:
            ig.add(self.first_open)
        return frozenset(ig)

    def position(self):
        """Darts on the face the route currently sits in, or None.

        Callers pick the next crossing or landing dart from this tuple;
        ``reach`` accepts any dart on the same face.
        """
        if self.anchor is None:
            return None
        return self.b.face_orbit(self.anchor, self._ignored())

    def _require_open(self):
        if self.done:
            raise RouteError("route already finished")

    def set_anchor(self, dart):
        """Pin the starting face of a closed route."""
        if self.stops or self.anchor is not None:
            raise RouteError("anchor must be set before the first stop")
        self.anchor = dart

    # -- stops -----------------------------------------------------------

    def start_boundary(self, e):
        self._require_open()
        if self.stops or self.pending is not None:
            raise RouteError("route already started")
        if not self.b.label[e].is_boundary:
            raise RouteError("start_boundary needs a boundary dart")
        w, q, r = self.b.split_edge(e)
        f = self.b.new_dart()
        self.b.rot[w] = [q, r, f]
        self.b._at[f] = w
        self.b.label[f] = self.label
        self.pending = f
        self.seed = f
        self.anchor = e
        self.stops += 1
        return w

    def start_vertex(self, v):
        """Begin at a slit: a vertex holding one dart of this strand."""
        self._require_open()
        if self.stops or self.pending is not None:
            raise RouteError("route already started")
        ds = self.b.rot[v]
        if len(ds) != 1 or self.b.label[ds[0]] != self.label:
            raise RouteError("start_vertex needs a single-dart slit vertex")
        f = self.b.new_dart()
        self.b.rot[v] = [ds[0], f]
        self.b._at[f] = v
        self.b.label[f] = self.label
        self.pending = f
        self.seed = f
        self.anchor = ds[0]
        self.stops += 1
        return v

    def cross(self, t):
        """Pierce the edge of t, entering from face_index(t)."""
        self._require_open()
        b = self.b
        if t not in b.partner:
            raise RouteError("cannot cross unpartnered dart %d" % t)
        lab_t = b.label[t]
        if lab_t.is_boundary:
            raise RouteError("cannot cross the boundary")
        if lab_t == self.label:
            raise RouteError("strand %s would cross itself" % (self.label,))
        pos = self.position()
        if pos is not None and t not in pos:
            raise RouteError("dart %d is not on the current face" % t)
        w, q, r = b.split_edge(t)
        bk, f = b.new_dart(), b.new_dart()
        b.rot[w] = [q, f, r, bk]
        b._at[bk] = b._at[f] = w
        b.label[bk] = b.label[f] = self.label
        if self.pending is None:
            self.first_open = bk
            self.first_anchor = q
            self.seed = f
        else:
            b.partner[self.pending] = bk
            b.partner[bk] = self.pending
        self.pending = f
        self.anchor = r
        self.stops += 1
        self._dives = []
        return w

    def through(self, channel):
        """Dive through a channel whose near mouth is on this face."""
        self._require_open()
        b = self.b
        want = sorted(channel)
        idx = next((i for i, ch in enumerate(b.channels)
                    if sorted(ch) == want), None)
        if idx is None:
            raise RouteError("no such channel %r" % (channel,))
        da, db = b.channels[idx]
        pos = self.position()
        if pos is None:
            raise RouteError("set an anchor before diving through a channel")
        if da in pos:
            far = db
        elif db in pos:
            far = da
        else:
            raise RouteError("channel %r is not on the current face"
                             % (channel,))
        if self.stops:
            # the strand's track occupies the tube; before the first stop
            # a dive is pure navigation and the tube stays
            del b.channels[idx]
            self._dives.append((da, db))
        self.anchor = far
        return far

    def waypoint(self):
        """Drop a marker vertex at the current position (lets the strand
        double back along its own track)."""
        self._require_open()
        if self.pending is None:
            raise RouteError("no strand end to anchor a waypoint")
        if self._dives:
            # a marker does not tie the strand into the far face, so the
            # consumed tube would leave the surface mis-assembled
            raise RouteError("waypoint cannot sit beyond a tube; "
                             "cross or end there instead")
        b = self.b
        v = b.new_vertex()
        bk, f = b.new_dart(), b.new_dart()
        b.rot[v] = [bk, f]
        b._at[bk] = b._at[f] = v
        b.label[bk] = b.label[f] = self.label
        b.partner[self.pending] = bk
        b.partner[bk] = self.pending
        self.pending = f
        self.stops += 1
        return v

    def reach(self, targets):
        """Hop through channels until a target dart shares the face;
        returns that dart.  Breadth-first and deterministic."""
        if self.position() is None:
            raise RouteError("no position to reach from")
        hit, hops = _channel_path(self.b, self.anchor, targets,
                                  self._ignored())
        for ch in hops:
            self.through(ch)
        return hit

    def cross_at(self, v, avoid=()):
        """Cross the strand passing through vertex v, choosing the nearest
        half-edge by face matching (hopping channels when needed)."""
        b = self.b
        avoid = set(avoid) | {self.label}
        cands = []
        for x in b.rot.get(v, ()):
            lab = b.label[x]
            if lab in avoid or lab.is_boundary:
                continue
            cands.append(x)
            cands.append(b.partner[x])
        if not cands:
            raise RouteError("no crossable strand at vertex %d" % v)
        if self.anchor is None:
            raise RouteError("cross_at needs a position; set an anchor")
        return self.cross(self.reach(cands))

    def end_boundary(self, e):
        self._require_open()
        b = self.b
        if self.pending is None:
            raise RouteError("nothing to end")
        if self.first_open is not None:
            raise RouteError("closed route must close, not end")
        if not b.label[e].is_boundary:
            raise RouteError("end_boundary needs a boundary dart")
        pos = self.position()
        if pos is not None and e not in pos:
            e = self.reach([e])
        w, q, r = b.split_edge(e)
        bk = b.new_dart()
        b.rot[w] = [q, r, bk]
        b._at[bk] = w
        b.label[bk] = self.label
        b.partner[self.pending] = bk
        b.partner[bk] = self.pending
        self.pending = None
        self.done = True
        self.stops += 1
        return w

    def end_vertex(self, v):
        self._require_open()
        b = self.b
        if self.pending is None:
            raise RouteError("nothing to end")
        ds = b.rot[v]
        if len(ds) != 1 or b.label[ds[0]] != self.label:
            raise RouteError("end_vertex needs a single-dart slit vertex")
        pos = self.position()
        if pos is not None and ds[0] not in pos:
            self.reach([ds[0]])
        bk = b.new_dart()
        b.rot[v] = [ds[0], bk]
        b._at[bk] = v
        b.label[bk] = self.label
        b.partner[self.pending] = bk
        b.partner[bk] = self.pending
        self.pending = None
        self.done = True
        return v

    def close(self):
        self._require_open()
        if self.first_open is None or self.pending is None:
            raise RouteError("no open loop to close")
        pos = self.position()
        if self.first_anchor not in pos:
            self.reach([self.first_anchor])
        b = self.b
        b.partner[self.pending] = self.first_open
        b.partner[self.first_open] = self.pending
        self.pending = None
        self.first_open = None
        self.done = True

    def register(self, *, reverse=False):
        """Record the orientation seed of the drawn strand."""
        if not self.done:
            raise RouteError("route not finished")
        if self.seed is None:
            raise RouteError("route drew nothing")
        seed = self.b.partner[self.seed] if reverse else self.seed
        self.b.orient[self.label] = seed


# ----------------------------------------------------------------------
# floating loops, belts, trivial circles

def add_loop_in_face(b: MapBuilder, anchor, label):
    """A trivial circle inside the face of ``anchor``: a floating loop
    whose outward side is tube-joined to that face."""
    v = b.new_vertex()
    d1, d2 = b.new_dart(), b.new_dart()
    b.rot[v] = [d1, d2]
    b._at[d1] = b._at[d2] = v
    b.partner[d1] = d2
    b.partner[d2] = d1
    b.label[d1] = b.label[d2] = label
    b.orient[label] = d1
    b.channels.append([anchor, d1])
    return d1


def add_belt(b: MapBuilder, channel, label):
    """The belt circle of a channel: the tube now carries the curve."""
    want = sorted(channel)
    idx = next((i for i, ch in enumerate(b.channels)
                if sorted(ch) == want), None)
    if idx is None:
        raise RouteError("no such channel %r" % (channel,))
    da, db = b.channels.pop(idx)
    v = b.new_vertex()
    d1, d2 = b.new_dart(), b.new_dart()
    b.rot[v] = [d1, d2]
    b._at[d1] = b._at[d2] = v
    b.partner[d1] = d2
    b.partner[d2] = d1
    b.label[d1] = b.label[d2] = label
    b.orient[label] = d1
    b.channels.append([da, d1])
    b.channels.append([d2, db])
    return d1


# ----------------------------------------------------------------------
# deletion

def delete_strands_in_builder(b: MapBuilder, m: CombMap, labels):
    """Remove strands from b (mirroring the validated map m), wiring
    residual channels so the underlying surface is unchanged."""
    labels = set(labels)
    present = set(m.strand_labels())
    for lab in labels:
        if lab.is_boundary:
            raise MapStructureError("cannot delete a boundary strand")
        if lab not in present:
            raise MapStructureError("no strand %s to delete" % (lab,))
    kept = [l for l in present if l not in labels]
    rc = RegionComplex(m, kept)
    for r in rc.surface_regions():
        if r.num_circuits == 0:
            raise MapStructureError(
                "deleting every strand of a component; excise it instead")
    doomed = {d for d in m.darts if m.label(d) in labels}
    touched = {rc.region_of_face(m.face_index(d)).index for d in doomed}

    survivors = []
    for ch in b.channels:
        ri = rc.region_of_face(m.face_index(ch[0])).index
        if ri not in touched:
            survivors.append(ch)
    b.channels = survivors
    b.remove_darts(doomed)
    for lab in labels:
        b.orient.pop(lab, None)
    for ri in sorted(touched):
        r = rc.regions[ri]
        anchors = sorted(min(d for d, _ in circ) for circ in r.circuits)
        for i in range(len(anchors) - 1):
            b.channels.append([anchors[i], anchors[i + 1]])
        for _ in range(r.genus):
            b.channels.append([anchors[0], anchors[0]])
    return rc


def delete_strands(m: CombMap, labels) -> CombMap:
    """The map with the named non-boundary strands removed; the surface
    itself is unchanged (handles the strands spanned become channels)."""
    b = MapBuilder(m)
    delete_strands_in_builder(b, m, labels)
    return b.finish()


# ----------------------------------------------------------------------
# parallel copies

def _arc_flank_bd_dart(m: CombMap, caps, endpoint_vertex, face):
    """The boundary dart at an arc endpoint whose face is ``face``."""
    cands = []
    for x in m.rot(endpoint_vertex):
        if not m.label(x).is_boundary:
            continue
        for t in (x, m.partner(x)):
            if m.face_index(t) == face and m.face_index(t) not in caps:
                cands.append(t)
    if not cands:
        raise RouteError("no boundary dart on the requested flank")
    return min(cands)


def parallel_copy(m: CombMap, strand, side="R", label=None) -> CombMap:
    """A disjoint push-off of a curve or arc.

    ``side`` is "R" or "L" relative to the strand's orientation.  The copy
    crosses exactly what the strand crosses, with the same signs.
    """
    if side not in ("R", "L"):
        raise MapStructureError("side must be 'R' or 'L'")
    if strand.is_boundary:
        raise MapStructureError("cannot copy a boundary strand")
    if label is None:
        label = fresh_label(m, strand.family)
    if label in set(m.strand_labels()):
        raise MapStructureError("label %s already taken" % (label,))
    walk = m.strand_walk(strand)
    b = MapBuilder(m)

    if strand.kind == "curve" and all(
            m.degree(m.vertex_of(d)) == 2 for d in m.strand_darts(strand)):
        # crossing-free circle: float the copy beside it and splice the
        # joining tubes so the copy separates the circle from everything
        # else on the chosen flank
        d = walk[0]
        flank_anchor = d if side == "R" else m.partner(d)
        flank_face = m.face_index(flank_anchor)
        v = b.new_vertex()
        d1, d2 = b.new_dart(), b.new_dart()
        b.rot[v] = [d1, d2]
        b._at[d1] = b._at[d2] = v
        b.partner[d1] = d2
        b.partner[d2] = d1
        b.label[d1] = b.label[d2] = label
        b.orient[label] = d1
        for ch in b.channels:
            for i in (0, 1):
                if m.face_index(ch[i]) == flank_face:
                    ch[i] = d2
        b.channels.append([flank_anchor, d1])
        return b.finish()

    w = RouteWalker(b, label)
    caps = m.caps()
    if strand.kind == "arc":
        c0 = walk[0]
        start_v = m.vertex_of(c0)
        flank = m.face_index(m.rot_next(c0)) if side == "L" \
            else m.face_index(c0)
        w.start_boundary(_arc_flank_bd_dart(m, caps, start_v, flank))
        for i, dart in enumerate(walk[:-1]):
            out = walk[i + 1]
            if m.degree(m.vertex_of(out)) == 2:
                continue
            target = b.partner[b.rot_next(out)] if side == "L" \
                else b.rot[b._at[out]][(b.rot[b._at[out]].index(out) - 1)
                                       % len(b.rot[b._at[out]])]
            w.cross(target)
        last = m.partner(walk[-1])
        end_v = m.vertex_of(last)
        flank = m.face_index(m.rot_next(last)) if side == "R" \
            else m.face_index(last)
        w.end_boundary(_arc_flank_bd_dart(m, caps, end_v, flank))
    else:
        n = len(walk)
        for i in range(n):
            out = walk[(i + 1) % n]
            if m.degree(m.vertex_of(out)) == 2:
                continue
            ds = b.rot[b._at[out]]
            if side == "L":
                target = b.partner[ds[(ds.index(out) + 1) % len(ds)]]
            else:
                target = ds[(ds.index(out) - 1) % len(ds)]
            w.cross(target)
        w.close()
    w.register()
    return b.finish()


# ----------------------------------------------------------------------
# slides

def slide(m: CombMap, mover_dart, over_dart) -> CombMap:
    """Band-sum the mover's strand with a push-off of the over-curve.

    The band mouth opens on the edge of ``mover_dart`` and the push-off
    hugs the flank of ``face_index(over_dart)``, running in over_dart's
    direction (the mouth may reach that flank through channels).  The
    mover and the over-curve must be disjoint, so the result stays
    embedded.
    """
    mover = m.label(mover_dart)
    over = m.label(over_dart)
    if mover.is_boundary:
        raise MapStructureError("cannot slide a boundary strand")
    if over.kind != "curve":
        raise MapStructureError("can only slide over a curve")
    if mover == over:
        raise MapStructureError("cannot slide a strand over itself")
    if m.crossings(mover, over):
        raise MapStructureError(
            "slide of %s over %s would not stay embedded" % (mover, over))

    b = MapBuilder(m)
    over_walk = _walk_from(m, over_dart)
    n = len(over_walk)
    targets = [m.rot_prev(over_walk[(i + 1) % n]) for i in range(n)
               if m.degree(m.vertex_of(over_walk[(i + 1) % n])) == 4]
    if not targets:
        # the over-curve crosses nothing, so it floats at the end of a
        # tube.  Find that tube from the flank the band exits (the face
        # on mover_dart's side) before the edge is cut: afterwards the
        # slit merges both flanks and the search could pick the wrong one.
        _, hops = _channel_path(b, mover_dart, [over_dart])
        if len(hops) != 1:
            raise RouteError(
                "the over-curve floats %d tubes away from the band mouth; "
                "slide it closer first" % len(hops))

    w1, q1, _ = b.split_edge(mover_dart)
    w2, _, r2 = b.split_edge(q1)
    b.remove_darts((q1, r2))

    if not targets:
        # consume the tube and hang it off the far side of a fresh mover
        # segment: the band wraps the circle, which now sits in the
        # segment's pocket
        last = sorted(hops[-1])
        idx = next(i for i, ch in enumerate(b.channels)
                   if sorted(ch) == last)
        del b.channels[idx]
        wp = b.new_vertex()
        x1, y1 = b.new_dart(), b.new_dart()
        x2, y2 = b.new_dart(), b.new_dart()
        b.rot[w1].append(x1)
        b.rot[wp] = [y1, x2]
        b.rot[w2].append(y2)
        for d, v in ((x1, w1), (y1, wp), (x2, wp), (y2, w2)):
            b._at[d] = v
            b.label[d] = mover
        b.partner[x1] = y1
        b.partner[y1] = x1
        b.partner[x2] = y2
        b.partner[y2] = x2
        b.channels.append([y1, over_dart])
        return b.finish()

    walker = RouteWalker(b, mover)
    walker.start_vertex(w1)
    first = True
    try:
        for target in targets:
            walker.cross(walker.reach([target]) if first else target)
            first = False
        walker.end_vertex(w2)
    except RouteError as exc:
        # a band sum can be undrawable outright, e.g. sliding a curve
        # over a parallel copy of itself doubles its class and no
        # embedded circle represents that
        raise RouteError("slide of %s over %s does not embed: %s"
                         % (mover, over, exc)) from exc
    return b.finish()


def _walk_from(m: CombMap, d):
    """The strand's darts in order, starting with d, along d's direction."""
    out = [d]
    while True:
        nxt = m._continuation(m.partner(out[-1]))
        if nxt is None or nxt == d:
            return out
        out.append(nxt)


# ----------------------------------------------------------------------
# bigon and half-bigon collapse

def _ordered_interiors(circ, start, length):
    """Interior vertices of a circuit run, in run order."""
    n = len(circ)
    out = []
    for k in range(length - 1):
        for v in circ[(start + k) % n][1]:
            if not out or out[-1] != v:
                out.append(v)
    return out


def _bd_attach_dart(b: MapBuilder, m: CombMap, vertex, skip=frozenset()):
    """The boundary dart to split for attaching an arc end beside
    ``vertex``, surface side, resolved against the current builder state
    (earlier splits never move a dart off its tail vertex, so the chosen
    dart always names the edge piece adjacent to the vertex)."""
    cands = [x for x in b.rot[vertex]
             if b.label[x].is_boundary and x not in skip]
    if not cands:
        raise RouteError("no boundary edge to attach to at vertex %d"
                         % vertex)
    x0 = min(cands)
    if m.face_index(x0) in m.caps():
        return b.partner[x0]
    return x0


def _arc_far_endpoint(m: CombMap, side_t, t):
    """The endpoint of the other arc at the half-bigon's boundary corner."""
    ends = set(m.arc_endpoints(t))
    corners = {m.vertex_of(side_t.darts[0]),
               m.vertex_of(m.partner(side_t.darts[-1]))}
    hit = ends & corners
    if len(hit) != 1:
        raise MapStructureError("half-bigon corner is not a single endpoint")
    return hit.pop()


def _crossing_heads(m: CombMap, darts):
    """Redraw targets along a traversal: the continuation past each
    dart's head, kept only where the head is a crossing (a marker vertex
    carries none)."""
    return [m.face_next(d) for d in darts
            if m.degree(m.vertex_of(m.partner(d))) == 4]


def _bounds_disk_against_run(m: CombMap, region, mover, a_darts, far_cell):
    """Whether a rerouted curve that crosses nothing bounds a disk.

    The reroute hugs the far flank of the collapsed side and then follows
    the mover's kept stretch A.  Cut the deletion region along A: the
    reroute is trivial exactly when A separates the region and the piece
    holding the far flank is a disk."""
    parent = {f: f for f in region.faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    glue_edges = [d for d in m.darts
                  if m.label(d) == mover and d < m.partner(d)
                  and d not in a_darts
                  and m.face_index(d) in region.faces]
    for d in glue_edges:
        union(m.face_index(d), m.face_index(m.partner(d)))
    for ch in region.channels_inside:
        union(m.face_index(ch[0]), m.face_index(ch[1]))

    a = min(a_darts)
    if find(m.face_index(a)) == find(m.face_index(m.partner(a))):
        return False
    root = find(far_cell)
    faces = sum(1 for f in region.faces if find(f) == root)
    edges = sum(1 for d in glue_edges if find(m.face_index(d)) == root)
    verts = 0
    for v in region.interior_vertices:
        ds = m.rot(v)
        if all(d in a_darts for d in ds):
            continue
        if find(m.face_index(ds[0])) == root:
            verts += 1
    tubes = sum(1 for ch in region.channels_inside
                if find(m.face_index(ch[0])) == root)
    return faces - edges + verts - 2 * tubes == 1


def _collapse(m: CombMap, region, mover) -> CombMap:
    """Collapse a bigon or half-bigon region by rerouting the mover along
    the far side of the other strand.

    The region circuit runs with the region on the darts' face side, so
    the other strand's run is always traversed opposite to the mover's:
    the detour visits its interior crossings in reversed circuit order,
    whichever corner the replacement starts from.
    """
    if region.num_circuits != 1:
        raise MapStructureError("collapse region must have one circuit")
    circ = region.circuits[0]
    sides = region.sides(m, 0)
    mover_sides = [s for s in sides if s.label == mover]
    if len(mover_sides) != 1:
        raise CollapseUndetermined("region is not a single-run bigon for %s"
                                   % (mover,))
    side_u = mover_sides[0]
    others = [s for s in sides if not s.label.is_boundary
              and s.label != mover]
    if len(others) != 1:
        raise MapStructureError("region has no single opposite strand")
    side_t = others[0]
    t = side_t.label
    bd_sides = [s for s in sides if s.label.is_boundary]
    run_bd = set()
    for s in bd_sides:
        for d in s.darts:
            run_bd.add(d)
            run_bd.add(m.partner(d))

    detour = [v for v in reversed(_ordered_interiors(circ, side_t.start,
                                                     side_t.length))
              if m.degree(v) == 4]
    run = list(side_u.darts)

    walk = m.strand_walk(mover)
    if set(run) <= set(walk):
        trav = list(walk)
        reverse_seed = False
    else:
        trav = [m.partner(d) for d in reversed(walk)]
        if not set(run) <= set(trav):
            raise CollapseUndetermined("bigon side is not a strand run")
        reverse_seed = True

    old_uxt = len(m.crossings(mover, t))
    b = MapBuilder(m)
    rc_del = delete_strands_in_builder(b, m, [mover])
    n = len(trav)
    r = len(run)

    if mover.kind == "curve":
        i0 = trav.index(run[0])
        trav = trav[i0:] + trav[:i0]
        if trav[:r] != run:
            raise CollapseUndetermined("bigon side is not a strand run")
        outside = _crossing_heads(m, trav[r:-1])
        if not outside and not detour:
            far_anchor = m.partner(side_t.darts[-1])
            far_cell = m.face_index(far_anchor)
            a_darts = set(trav[r:]) | {m.partner(d) for d in trav[r:]}
            region_del = rc_del.region_of_dart(far_anchor)
            if _bounds_disk_against_run(m, region_del, mover, a_darts,
                                        far_cell):
                add_loop_in_face(b, far_anchor, mover)
            elif (region_del.num_circuits, region_del.genus) == (2, 0):
                rid = region_del.index
                cands = [ch for ch in b.channels
                         if rc_del.region_of_face(
                             m.face_index(ch[0])).index == rid]
                if len(cands) != 1:
                    raise CollapseUndetermined(
                        "crossing-free reroute with %d candidate channels"
                        % len(cands))
                add_belt(b, list(cands[0]), mover)
            else:
                raise CollapseUndetermined(
                    "crossing-free reroute in a complement with %d "
                    "circuits and genus %d"
                    % (region_del.num_circuits, region_del.genus))
            result = b.finish()
        else:
            walker = RouteWalker(b, mover)
            if not outside:
                walker.set_anchor(m.partner(side_t.darts[-1]))
            first = True
            for tgt in outside:
                walker.cross(tgt if first else walker.reach([tgt]))
                first = False
            for v in detour:
                walker.cross_at(v, avoid={t})
            walker.close()
            walker.register(reverse=reverse_seed)
            result = b.finish()
        expected = old_uxt - 2
    else:
        i0 = trav.index(run[0])
        if trav[i0:i0 + r] != run:
            raise CollapseUndetermined("bigon side is not a strand run")
        i1 = i0 + r - 1
        walker = RouteWalker(b, mover)
        if not bd_sides:
            # the run is interior to the arc: both endpoints stay put
            if i0 < 1 or i1 > n - 2:
                raise MapStructureError("interior bigon touching an arc end")
            walker.start_boundary(
                _bd_attach_dart(b, m, m.vertex_of(trav[0])))
            for tgt in _crossing_heads(m, trav[:i0 - 1]):
                walker.cross(walker.reach([tgt]))
            for v in detour:
                walker.cross_at(v, avoid={t})
            for tgt in _crossing_heads(m, trav[i1 + 1:-1]):
                walker.cross(walker.reach([tgt]))
            walker.end_boundary(
                _bd_attach_dart(b, m, m.vertex_of(m.partner(trav[-1]))))
            expected = old_uxt - 2
        else:
            e_t = _arc_far_endpoint(m, side_t, t)
            if i1 == n - 1:
                # run at the trailing end: slide that endpoint past e_t
                walker.start_boundary(
                    _bd_attach_dart(b, m, m.vertex_of(trav[0])))
                for tgt in _crossing_heads(m, trav[:max(i0 - 1, 0)]):
                    walker.cross(walker.reach([tgt]))
                for v in detour:
                    walker.cross_at(v, avoid={t})
                walker.end_boundary(_bd_attach_dart(b, m, e_t, run_bd))
            elif i0 == 0:
                walker.start_boundary(_bd_attach_dart(b, m, e_t, run_bd))
                for v in detour:
                    walker.cross_at(v, avoid={t})
                for tgt in _crossing_heads(m, trav[i1 + 1:-1]):
                    walker.cross(walker.reach([tgt]))
                walker.end_boundary(
                    _bd_attach_dart(b, m, m.vertex_of(m.partner(trav[-1]))))
            else:
                raise MapStructureError("half-bigon run is not at an arc end")
            expected = old_uxt - 1
        walker.register(reverse=reverse_seed)
        result = b.finish()

    if len(result.crossings(mover, t)) != expected:
        raise MapStructureError(
            "collapse of %s against %s left the wrong crossing count"
            % (mover, t))
    return result


# ----------------------------------------------------------------------
# reduction loops

def _qualifying_regions(m: CombMap, kept, families=None):
    """Collapsible bigons / half-bigons among the kept strands.

    With every strand kept, strand sides are single edges automatically
    (a face orbit always turns at a crossing), so this finds exactly the
    empty bigons and empty boundary triangles.  With only a pair kept,
    sides may span many edges and third-party crossings churn."""
    rc = RegionComplex(m, kept)
    out = []
    for region in rc.regions:
        if region.is_cap or not region.is_disk or region.channels_inside:
            continue
        sides = region.sides(m, 0)
        strands = [s for s in sides if not s.label.is_boundary]
        bds = [s for s in sides if s.label.is_boundary]
        if len(sides) == 2 and len(strands) == 2:
            s1, s2 = strands
            if s1.label == s2.label:
                continue
            if families is not None and not (
                    s1.label.family in families
                    and s2.label.family in families):
                continue
            out.append((region, "bigon", strands))
        elif len(sides) == 3 and len(strands) == 2 and len(bds) == 1:
            s1, s2 = strands
            if s1.label == s2.label:
                continue
            if s1.label.kind != "arc" or s2.label.kind != "arc":
                continue
            if families is not None and not (
                    s1.label.family in families
                    and s2.label.family in families):
                continue
            interior = region.run_interior_vertices(
                0, bds[0].start, bds[0].length)
            if interior & m.basepoints:
                continue
            out.append((region, "half", strands))
    return out


def _pick_mover(m: CombMap, strands):
    s1, s2 = (s.label for s in strands)
    k1, k2 = len(m.strand_darts(s1)), len(m.strand_darts(s2))
    if k1 != k2:
        return s1 if k1 < k2 else s2
    return max(s1, s2)


def pair_reduce(m: CombMap, s1, s2, max_rounds=200) -> CombMap:
    """Isotope s1 and s2 into minimal position with respect to each other
    (other strands are ignored; their crossing counts may change)."""
    if s1 == s2:
        return m
    kept = set(m.boundary_labels()) | {s1, s2}
    for _ in range(max_rounds):
        found = _qualifying_regions(m, kept)
        if not found:
            return m
        found.sort(key=lambda item: min(d for d, _ in item[0].circuits[0]))
        region, _, strands = found[0]
        first = _pick_mover(m, strands)
        other = next(s.label for s in strands if s.label != first)
        try:
            m = _collapse(m, region, first)
        except CollapseUndetermined:
            m = _collapse(m, region, other)
    raise MapStructureError("pair reduction did not terminate")


def reduce_bigons(m: CombMap, families=None, max_rounds=400) -> CombMap:
    """Collapse empty bigon faces (and empty half-bigon triangles at the
    boundary) between distinct strands of the given families until none
    remain.  The result is isotopic to the input."""
    if families is not None:
        families = set(families)
    kept = set(m.strand_labels())
    skipped = set()
    for _ in range(max_rounds):
        found = [(region, kind, strands)
                 for region, kind, strands in
                 _qualifying_regions(m, kept, families)
                 if frozenset(s.label for s in strands) not in skipped]
        if not found:
            return m
        found.sort(key=lambda item: min(d for d, _ in item[0].circuits[0]))
        region, _, strands = found[0]
        first = _pick_mover(m, strands)
        other = next(s.label for s in strands if s.label != first)
        try:
            try:
                m = _collapse(m, region, first)
            except CollapseUndetermined:
                m = _collapse(m, region, other)
        except CollapseUndetermined:
            skipped.add(frozenset(s.label for s in strands))
        else:
            skipped.clear()
        kept = set(m.strand_labels())
    raise MapStructureError("bigon reduction did not terminate")


def intersection_numbers(m: CombMap, s1, s2):
    """(geometric, algebraic) intersection numbers of two strands."""
    reduced = pair_reduce(m, s1, s2)
    verts = reduced.crossings(s1, s2)
    geometric = len(verts)
    algebraic = sum(reduced.crossing_sign(v, s1, s2) for v in verts)
    return geometric, algebraic


# ----------------------------------------------------------------------
# isotopy and essentialness tests

def isotopic_curves(m: CombMap, x, y) -> bool:
    """Whether two curve strands are isotopic (an embedded annulus lies
    between them after reduction)."""
    if x == y:
        return True
    if x.kind != "curve" or y.kind != "curve":
        raise MapStructureError("isotopic_curves needs two curves")
    reduced = pair_reduce(m, x, y)
    if reduced.crossings(x, y):
        return False
    kept = set(reduced.boundary_labels()) | {x, y}
    rc = RegionComplex(reduced, kept)
    for region in rc.surface_regions():
        if region.genus or region.num_circuits != 2:
            continue
        labs = [{reduced.label(d) for d, _ in circ}
                for circ in region.circuits]
        if (labs[0] == {x} and labs[1] == {y}) \
                or (labs[0] == {y} and labs[1] == {x}):
            return True
    return False


def isotopic_arcs(m: CombMap, a, b, context=()) -> bool:
    """Whether two arc strands are isotopic without sweeping endpoints
    across basepoints (a square region between them, both boundary sides
    free of basepoints).

    Strands outside {a, b} are normally transparent: the isotopy may pass
    through them.  Labels in ``context`` are kept as obstructions instead,
    so a square must avoid them; use this when the isotopy has to respect
    a whole system of strands at once.  Bigon collapses could drag a or b
    across an obstruction, so with a context the check is purely syntactic
    (no reduction first) and errs on the side of False.
    """
    if a == b:
        return True
    if a.kind != "arc" or b.kind != "arc":
        raise MapStructureError("isotopic_arcs needs two arcs")
    reduced = m if context else pair_reduce(m, a, b)
    if reduced.crossings(a, b):
        return False
    kept = set(reduced.boundary_labels()) | {a, b} | set(context)
    rc = RegionComplex(reduced, kept)
    for region in rc.surface_regions():
        if not region.is_disk:
            continue
        sides = region.sides(reduced, 0)
        if len(sides) != 4:
            continue
        strand_sides = [s for s in sides if not s.label.is_boundary]
        if {s.label for s in strand_sides} != {a, b}:
            continue
        bd_ok = True
        for s in sides:
            if s.label.is_boundary:
                interior = region.run_interior_vertices(0, s.start, s.length)
                if interior & reduced.basepoints:
                    bd_ok = False
        if bd_ok:
            return True
    return False


def is_essential_curve(m: CombMap, x) -> bool:
    """A curve is essential when it neither bounds a disk nor is parallel
    to a boundary circle (basepoints ignored)."""
    kept = set(m.boundary_labels()) | {x}
    rc = RegionComplex(m, kept)
    for region in rc.surface_regions():
        if region.genus:
            continue
        labsets = [{m.label(d) for d, _ in circ} for circ in region.circuits]
        if region.num_circuits == 1 and labsets[0] == {x}:
            return False
        if region.num_circuits == 2 and {x} in labsets and \
                any(all(l.is_boundary for l in s) for s in labsets
                    if s != {x}):
            return False
    return True


def is_essential_arc(m: CombMap, a) -> bool:
    """An arc is essential when it does not cut a disk off the boundary
    (basepoints ignored)."""
    kept = set(m.boundary_labels()) | {a}
    rc = RegionComplex(m, kept)
    for region in rc.surface_regions():
        if not region.is_disk:
            continue
        sides = region.sides(m, 0)
        strand_sides = [s for s in sides if not s.label.is_boundary]
        if len(strand_sides) == 1 and strand_sides[0].label == a \
                and len(sides) <= 2:
            return False
    return True
