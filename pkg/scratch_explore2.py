"""Throwaway exploration for scenarios J, L, M, N before freezing."""

from reltri.combmap import CombMap, StrandLabel
from reltri.canonical import canonical_key
from reltri.surgery import (
    MapBuilder, RouteError, RouteWalker, add_belt, delete_strands,
    intersection_numbers, is_essential_arc, is_essential_curve,
    isotopic_arcs, isotopic_curves, pair_reduce, parallel_copy, slide,
)

bd0 = StrandLabel("bd", 0)
bd1 = StrandLabel("bd", 1)
a0 = StrandLabel("a", 0)
a1 = StrandLabel("a", 1)
b0 = StrandLabel("b", 0)
A0 = StrandLabel("Aa", 0)
B0 = StrandLabel("Ab", 0)


def torus():
    return CombMap({0: (0, 1, 2, 3)}, {0: 2, 2: 0, 1: 3, 3: 1},
                   {0: a0, 2: a0, 1: b0, 3: b0},
                   {a0: 0, b0: 1}, set(), ())


def annulus():
    return CombMap(
        {0: (0, 1), 1: (2, 3), 2: (4, 5)},
        {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4},
        {0: bd0, 1: bd0, 2: bd1, 3: bd1, 4: a0, 5: a0},
        {a0: 4}, {0, 1}, ((0, 5), (4, 2)))


def dump(m, note=""):
    print("--", note, m.surface_class())
    for v in m.vertices:
        mark = "*" if v in m.basepoints else " "
        print("  v%d%s rot %s labels %s" % (
            v, mark, m.rot(v), [str(m.label(d)) for d in m.rot(v)]))
    print("  partner", {d: m.partner(d) for d in m.darts})
    print("  orient", {str(k): v for k, v in m.orient.items()})
    print("  channels", m.channels)


print("=== J: Venn pair with a subdivision vertex ===")
rotJ = {0: (0, 1), 1: (2, 3),
        2: (7, 4, 6, 5), 3: (9, 10, 8, 11), 4: (12, 13)}
partnerJ = {0: 1, 1: 0, 2: 3, 3: 2,
            4: 8, 8: 4, 5: 9, 9: 5, 6: 10, 10: 6,
            11: 12, 12: 11, 13: 7, 7: 13}
labelsJ = {0: bd0, 1: bd0, 2: bd1, 3: bd1,
           4: a0, 5: a0, 8: a0, 9: a0,
           6: b0, 7: b0, 10: b0, 11: b0, 12: b0, 13: b0}
mJ0 = CombMap(rotJ, partnerJ, labelsJ, {a0: 4, b0: 6}, {0, 1},
              ((0, 8), (2, 9)))
print("hand map:", mJ0.surface_class(),
      "crossings", len(mJ0.crossings(a0, b0)))
mJ = pair_reduce(mJ0, a0, b0)
dump(mJ, "reduced")
print("crossings now:", len(mJ.crossings(a0, b0)))

core_b = CombMap({0: (0, 1), 1: (2, 3), 2: (4, 5)},
                 {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4},
                 {0: bd0, 1: bd0, 2: bd1, 3: bd1, 4: b0, 5: b0},
                 {b0: 4}, {0, 1}, ((0, 5), (4, 2)))
for ch in ([4, 2], [0, 5]):
    bexp = MapBuilder(core_b)
    add_belt(bexp, ch, a0)
    exp = bexp.finish()
    print("belt on %s matches: %s" % (
        ch, canonical_key(mJ) == canonical_key(exp)))
print("isotopic_curves:", isotopic_curves(mJ, a0, b0))
print("essential a0 / b0:", is_essential_curve(mJ, a0),
      is_essential_curve(mJ, b0))
print("intersection_numbers(mJ0):", intersection_numbers(mJ0, a0, b0))

print()
print("=== L: sign pins ===")
print("torus a0,b0:", intersection_numbers(torus(), a0, b0))
print("torus sign at v0:", torus().crossing_sign(0, a0, b0))
print("torus reversed order:", intersection_numbers(torus(), b0, a0))
mF = parallel_copy(torus(), a0, label=a1)
print("parallel a1 vs b0:", intersection_numbers(mF, a1, b0))
print("parallel a1 vs a0:", intersection_numbers(mF, a1, a0))

print()
print("=== M: two spanning arcs on the bare annulus ===")
bare = CombMap({0: (0, 1), 1: (2, 3)}, {0: 1, 1: 0, 2: 3, 3: 2},
               {0: bd0, 1: bd0, 2: bd1, 3: bd1}, {}, {0, 1}, ((0, 2),))
b = MapBuilder(bare)
w = RouteWalker(b, A0)
w.start_boundary(0)
hit = w.reach([2, 3])
print("first arc dove to:", hit, "channels now:", b.channels)
w.end_boundary(hit)
w.register()
mM1 = b.finish()
dump(mM1, "one spanning arc")

bd0_darts = [d for d in mM1.darts if mM1.label(d) == bd0]
bd1_darts = [d for d in mM1.darts if mM1.label(d) == bd1]
print("bd0 darts:", bd0_darts, "bd1 darts:", bd1_darts)

for e1 in bd0_darts:
    b2 = MapBuilder(mM1)
    w2 = RouteWalker(b2, B0)
    try:
        w2.start_boundary(e1)
        pos = [d for d in w2._position() if b2.label[d] == A0]
        if not pos:
            print("e1=%d: no A0 dart on face" % e1)
            continue
        t = pos[0]
        w2.cross(t)
        ends = [d for d in w2._position() if b2.label[d] == bd1]
        if not ends:
            print("e1=%d t=%d: no bd1 dart after cross" % (e1, t))
            continue
        for e2 in ends:
            b3 = MapBuilder(mM1)
            w3 = RouteWalker(b3, B0)
            w3.start_boundary(e1)
            w3.cross(t)
            w3.end_boundary(e2)
            w3.register()
            mM2 = b3.finish()
            red = pair_reduce(mM2, A0, B0)
            print("e1=%d t=%d e2=%d -> crossings %d, after reduce %d" % (
                e1, t, e2, len(mM2.crossings(A0, B0)),
                len(red.crossings(A0, B0))))
            if not red.crossings(A0, B0):
                print("   reduced: iso arcs:", isotopic_arcs(red, A0, B0),
                      "essential A0:", is_essential_arc(red, A0),
                      "essential B0:", is_essential_arc(red, B0))
    except RouteError as exc:
        print("e1=%d failed: %s" % (e1, exc))

print()
print("=== N: dive semantics ===")
bN = MapBuilder(annulus())
wN = RouteWalker(bN, b0)
wN.set_anchor(0)
far = wN.through((0, 5))
print("pre-stop dive far mouth:", far, "channels intact:", bN.channels)
wN.cross(5)
second = [d for d in wN._position() if bN.label[d] == a0][0]
wN.cross(second)
wN.close()
wN.register()
mN = bN.finish()
print("straddler via pre-dive:", mN.surface_class(), "channels:", mN.channels)

bI = MapBuilder(annulus())
wI = RouteWalker(bI, b0)
wI.cross(5)
second = [d for d in wI._position() if bI.label[d] == a0][0]
wI.cross(second)
wI.close()
wI.register()
mI0 = bI.finish()
print("matches scenario I straddler:",
      canonical_key(mN) == canonical_key(mI0))

bN2 = MapBuilder(annulus())
wN2 = RouteWalker(bN2, A0)
wN2.start_boundary(0)
wN2.reach([4, 5])
try:
    wN2.waypoint()
    print("waypoint after dive: NO ERROR (unexpected)")
except RouteError as exc:
    print("waypoint after dive raises:", exc)

bN3 = MapBuilder(annulus())
wN3 = RouteWalker(bN3, A0)
wN3.start_boundary(0)
wN3.waypoint()
end = [d for d in wN3._position()
       if bN3.label[d].is_boundary and d != 0]
print("waypoint ok, end candidates:", end)
wN3.end_boundary(end[0])
wN3.register()
mN3 = bN3.finish()


def trivial_arc(base, e, label):
    b = MapBuilder(base)
    w = RouteWalker(b, label)
    w.start_boundary(e)
    end_dart = [d for d in w._position()
                if d != e and b.label[d].is_boundary][0]
    w.end_boundary(end_dart)
    w.register()
    return b.finish()


mplain = trivial_arc(annulus(), 0, A0)
print("waypoint suppressed under normalize:",
      canonical_key(mN3) == canonical_key(mplain))

print()
print("=== H extension: wrapped arc vs fresh trivial arc ===")
mHa = trivial_arc(annulus(), 0, A0)
mHb = slide(mHa, mHa.orient[A0], 5)
dump(mHb, "wrapped arc")
hb_bd0 = [d for d in mHb.darts if mHb.label(d) == bd0]
print("bd0 darts on mHb:", hb_bd0)
for e in hb_bd0:
    try:
        m2 = trivial_arc(mHb, e, B0)
        print("fresh arc at %d: iso to wrapped: %s, iso ess %s" % (
            e, isotopic_arcs(m2, A0, B0), is_essential_arc(m2, B0)))
    except (RouteError, IndexError) as exc:
        print("fresh arc at %d failed: %s" % (e, exc))
