"""Open-book monodromy as an arc-image system.

The monodromy of an open book with page Σ is stored extensionally: a
system of disjoint arcs cutting the page to a disk, together with the
image arcs drawn on the same page, matched up pairwise.  Endpoints of an
arc and its image share a boundary segment, where each boundary circle
is one segment because its basepoint may never be swept across.

``h1_rel_action`` turns the picture into a square integer matrix M over
the basis of first relative homology given by the initial arcs, and
``boundary_h1`` reads off the first homology of the closed-up boundary
3-manifold as the cokernel of (I - M).  The translation rests on the
identity H₁ = coker(D) for the difference map D sending an arc class to
the absolute cycle obtained by closing up (arc minus image) along the
boundary away from the basepoints; D's matrix N is computed by signed
crossing counts against the initial arcs, and M is defined as I - N so
that (I - M) = N.  The identity is validated against an independent
mapping-torus chain-complex oracle in the test suite before use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combmap import CombMap, MapFormatError, MapStructureError, StrandLabel
from .homology import AbelianGroup, cokernel
from .regions import RegionComplex
from .rtdio import dumps_map, iter_content_lines, loads_map
from .surgery import isotopic_arcs


class MonodromyError(MapStructureError):
    """An arc-image system violates its shape constraints."""


def _arc_dart_at(m: CombMap, v):
    """The single arc dart at an endpoint vertex."""
    for d in m.rot(v):
        if m.label(d).kind == "arc":
            return d
    raise MonodromyError("vertex %d carries no arc" % v)


def _boundary_label_at(m: CombMap, v):
    for d in m.rot(v):
        if m.label(d).is_boundary:
            return m.label(d)
    raise MonodromyError("vertex %d is not on the boundary" % v)


def _cuts_to_disk(m: CombMap, arcs) -> bool:
    kept = set(m.boundary_labels()) | set(arcs)
    rc = RegionComplex(m, kept)
    regions = rc.surface_regions()
    return len(regions) == 1 and regions[0].is_disk


@dataclass(frozen=True)
class ArcImageSystem:
    """A page with a cut system of arcs and their monodromy images.

    ``pairs`` lists (initial, image) strand labels; the two systems live
    on the same page map and each cuts it to a disk.  Initial and image
    arcs are oriented compatibly: walk starts match walk starts.
    """

    page: CombMap
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(
            (a, b) for a, b in self.pairs))
        self._validate()

    @property
    def initial(self):
        return tuple(a for a, _ in self.pairs)

    @property
    def image(self):
        return tuple(b for _, b in self.pairs)

    def _validate(self):
        m = self.page
        initial, image = self.initial, self.image
        named = list(initial) + list(image)
        if len(set(named)) != len(named):
            raise MonodromyError("arc labels repeat across the system")
        present = set(m.arc_labels())
        if set(named) != present:
            raise MonodromyError(
                "page arcs %s do not match the declared system"
                % (sorted(present, key=lambda l: l.sort_key()),))
        for side, arcs in (("initial", initial), ("image", image)):
            for i, x in enumerate(arcs):
                for y in arcs[i + 1:]:
                    if m.crossings(x, y):
                        raise MonodromyError(
                            "%s arcs %s and %s cross" % (side, x, y))
            if not _cuts_to_disk(m, arcs):
                raise MonodromyError(
                    "%s arc system does not cut the page to a disk" % side)
        for a, abar in self.pairs:
            for (va, vb), end in zip(zip(m.arc_endpoints(a),
                                         m.arc_endpoints(abar)),
                                     ("start", "end")):
                if _boundary_label_at(m, va) != _boundary_label_at(m, vb):
                    raise MonodromyError(
                        "%s of %s and %s sit on different boundary circles"
                        % (end, a, abar))


def _between_on_boundary(m: CombMap, src, dst):
    """Vertices strictly between src and dst along their boundary circle,
    avoiding the basepoint, as (vertex, travels_forward) pairs."""
    lab = _boundary_label_at(m, src)
    if _boundary_label_at(m, dst) != lab:
        raise MonodromyError("connector endpoints on different circles")
    walk = m.strand_walk(lab)
    verts = [m.vertex_of(d) for d in walk]
    i, j = verts.index(src), verts.index(dst)
    if i < j:
        return [(verts[k], True) for k in range(i + 1, j)]
    return [(verts[k], False) for k in range(j + 1, i)]


def _passing_sign(m: CombMap, caps, w, travels_forward):
    """Sign of the crossing made by a strand running along the boundary
    past the arc endpoint w, pushed just inside the surface.

    The running strand's outgoing direction is the boundary dart at w
    pointing with (or against) the boundary walk; the crossing sign
    against the outward arc direction is +1 exactly when the cap lies on
    the right of that outgoing dart.
    """
    bd_darts = [d for d in m.rot(w) if m.label(d).is_boundary]
    out = [d for d in bd_darts if m.is_forward(d) == travels_forward]
    if len(out) != 1:
        raise MonodromyError("vertex %d has no boundary direction" % w)
    return 1 if m.face_index(out[0]) in caps else -1


def h1_rel_action(s: ArcImageSystem):
    """Matrix M of the monodromy on first relative page homology, sized
    by the cut system, with rows indexed by image arcs.

    (I - M) is the matrix of the closed-up difference map; its cokernel
    is the first homology of the boundary 3-manifold.
    """
    m = s.page
    n = len(s.pairs)
    caps = m.caps()
    index = {a: j for j, (a, _) in enumerate(s.pairs)}
    rows = [[0] * n for _ in range(n)]
    for i, (a, abar) in enumerate(s.pairs):
        for aj, j in index.items():
            for v in m.crossings(abar, aj):
                rows[i][j] -= m.crossing_sign(v, abar, aj)
        a_start, a_end = m.arc_endpoints(a)
        b_start, b_end = m.arc_endpoints(abar)
        for src, dst in ((a_end, b_end), (b_start, a_start)):
            for w, forward in _between_on_boundary(m, src, dst):
                if len(m.rot(w)) != 3:
                    continue
                dart = _arc_dart_at(m, w)
                j = index.get(m.label(dart))
                if j is None:
                    continue
                outward = 1 if m.is_forward(dart) else -1
                rows[i][j] += _passing_sign(m, caps, w, forward) * outward
    return tuple(tuple((1 if r == c else 0) - rows[r][c] for c in range(n))
                 for r in range(n))


def boundary_h1(mtx) -> AbelianGroup:
    """First homology of the boundary 3-manifold: coker(I - M)."""
    n = len(mtx)
    for row in mtx:
        if len(row) != n:
            raise MonodromyError("monodromy matrix is not square")
    diff = [[(1 if r == c else 0) - mtx[r][c] for c in range(n)]
            for r in range(n)]
    return cokernel(diff, rows=n)


def page_h1(m: CombMap) -> AbelianGroup:
    """First homology of the page surface."""
    cls = m.surface_class()
    if cls.boundary_count:
        return AbelianGroup(2 * cls.genus + cls.boundary_count - 1)
    return AbelianGroup(2 * cls.genus)


@dataclass(frozen=True)
class OpenBookReport:
    """What the boundary open book reveals about the 3-manifold."""

    boundary: AbelianGroup
    trivial_monodromy: bool
    has_fixed_arc: bool
    min_generators: int

    def __str__(self):
        flags = []
        if self.trivial_monodromy:
            flags.append("trivial")
        if self.has_fixed_arc:
            flags.append("fixed-arc")
        return "h1=%s gens=%d%s" % (
            self.boundary, self.min_generators,
            " " + " ".join(flags) if flags else "")


def analyze_open_book(s: ArcImageSystem) -> OpenBookReport:
    """Boundary homology plus the fixed-arc facts.

    The fixed-arc flag holds when some image arc is isotopic to its
    initial arc without sweeping a basepoint; one such pair already
    forces a 2-sphere cross circle summand in the boundary.  The trivial
    flag needs more than that for every pair: each isotopy square must
    stay clear of the rest of the system, so the squares can be applied
    one at a time and the monodromy trivialized jointly.  Two arcs may be
    parallel through the others yet braided around them, which changes
    the monodromy; such a system gets a False here.
    """
    labels = set(s.initial) | set(s.image)
    pairwise, joint = [], []
    for a, abar in s.pairs:
        pairwise.append(isotopic_arcs(s.page, a, abar))
        joint.append(isotopic_arcs(s.page, a, abar,
                                   context=labels - {a, abar}))
    h1 = boundary_h1(h1_rel_action(s))
    trivial = all(joint)
    return OpenBookReport(
        boundary=h1,
        trivial_monodromy=trivial,
        has_fixed_arc=any(pairwise) or trivial,
        min_generators=h1.min_generators)


# ----------------------------------------------------------------------
# serialization

def dumps_arc_system(s: ArcImageSystem, params=None) -> str:
    """The page in RTD form followed by a ``%monodromy 1`` block."""
    lines = ["%monodromy 1"]
    for a, abar in s.pairs:
        lines.append("pair %s %s" % (a, abar))
    return dumps_map(s.page, params) + "\n".join(lines) + "\n"


def loads_arc_system(text: str) -> ArcImageSystem:
    head, sep, tail = text.partition("%monodromy 1")
    if not sep:
        raise MapFormatError("missing %monodromy block")
    pairs = []
    for lineno, tokens in iter_content_lines(tail):
        if tokens[0] != "pair" or len(tokens) != 3:
            raise MapFormatError(
                "line %d of monodromy block: expected 'pair A B', got %r"
                % (lineno, " ".join(tokens)))
        pairs.append((StrandLabel.parse(tokens[1]),
                      StrandLabel.parse(tokens[2])))
    return ArcImageSystem(loads_map(head), tuple(pairs))
