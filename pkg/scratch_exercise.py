"""Hand-check driver for surgery scenarios before freezing tests."""

from reltri.combmap import CombMap, StrandLabel, MapStructureError
from reltri.canonical import canonical_key, map_isomorphic
from reltri.surgery import (
    CollapseUndetermined, MapBuilder, RouteError, RouteWalker,
    add_belt, add_loop_in_face, delete_strands, intersection_numbers,
    is_essential_arc, is_essential_curve, isotopic_arcs, isotopic_curves,
    pair_reduce, parallel_copy, reduce_bigons, slide,
)

bd0 = StrandLabel("bd", 0)
bd1 = StrandLabel("bd", 1)
a0 = StrandLabel("a", 0)
a1 = StrandLabel("a", 1)
b0 = StrandLabel("b", 0)
c0 = StrandLabel("c", 0)
A0 = StrandLabel("Aa", 0)


def disk():
    return CombMap({0: (0, 1)}, {0: 1, 1: 0}, {0: bd0, 1: bd0},
                   {}, {0}, ())


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


def punctured_torus():
    return CombMap(
        {0: (0, 1, 2, 3), 1: (4, 5)},
        {0: 2, 2: 0, 1: 3, 3: 1, 4: 5, 5: 4},
        {0: a0, 2: a0, 1: b0, 3: b0, 4: bd0, 5: bd0},
        {a0: 0, b0: 1}, {1}, ((0, 4),))


def trivial_arc(base, e, label):
    b = MapBuilder(base)
    w = RouteWalker(b, label)
    w.start_boundary(e)
    end_dart = [d for d in w.position()
                if d != e and b.label[d].is_boundary][0]
    w.end_boundary(end_dart)
    w.register()
    return b.finish()


print("== A: trivial arc on the disk ==")
mA = trivial_arc(disk(), 0, A0)
print("surface:", mA.surface_class())
print("essential:", is_essential_arc(mA, A0))
print("arc endpoints:", mA.arc_endpoints(A0))
assert mA.surface_class().genus == 0 and mA.surface_class().boundary_count == 1
assert not is_essential_arc(mA, A0)

print()
print("== B: spanning arc on annulus via dives ==")
b = MapBuilder(annulus())
w = RouteWalker(b, A0)
w.start_boundary(0)
t = w.reach([4, 5])
print("reached core dart:", t)
w.cross(t)
e = w.reach([2])
w.end_boundary(e)
w.register()
mB = b.finish()
print("surface:", mB.surface_class())
print("channels:", mB.channels)
x = mB.crossings(A0, a0)
print("crossings A0/a0:", x, "sign:",
      [mB.crossing_sign(v, A0, a0) for v in x])
print("essential arc:", is_essential_arc(mB, A0))
print("essential core:", is_essential_curve(mB, a0))
assert len(x) == 1
assert mB.channels == ()
assert is_essential_arc(mB, A0)
assert not is_essential_curve(mB, a0)
assert not is_essential_curve(annulus(), a0)

print()
print("== C: delete round trips ==")
back = delete_strands(mB, [A0])
print("delete A0 iso to annulus:",
      canonical_key(back) == canonical_key(annulus()))
assert canonical_key(back) == canonical_key(annulus())

flat = delete_strands(annulus(), [a0])
print("delete core:", flat.surface_class(), "channels:", flat.channels)
expected = CombMap({0: (0, 1), 1: (2, 3)},
                   {0: 1, 1: 0, 2: 3, 3: 2},
                   {0: bd0, 1: bd0, 2: bd1, 3: bd1},
                   {}, {0, 1}, ((0, 2),))
assert canonical_key(flat) == canonical_key(expected)
print("matches hand-built bare annulus")

print()
print("== D: deleting a whole component refuses ==")
try:
    delete_strands(torus(), [a0, b0])
    print("NO RAISE - BUG")
except MapStructureError as exc:
    print("raised:", exc)

print()
print("== E: torus delete b0 keeps the handle ==")
mE = delete_strands(torus(), [b0])
print("surface:", mE.surface_class(), "channels:", mE.channels)
assert mE.surface_class().genus == 1
assert len(mE.channels) == 1
assert is_essential_curve(mE, a0)

print()
print("== F: parallel copies ==")
mF = parallel_copy(torus(), a0, side="R", label=a1)
print("a1/b0 crossings:", mF.crossings(a1, b0),
      "a1/a0 crossings:", mF.crossings(a1, a0))
sgn0 = mF.crossing_sign(mF.crossings(a0, b0)[0], a0, b0)
sgn1 = mF.crossing_sign(mF.crossings(a1, b0)[0], a1, b0)
print("signs a0/b0 vs a1/b0:", sgn0, sgn1)
assert len(mF.crossings(a1, b0)) == 1 and not mF.crossings(a1, a0)
assert sgn0 == sgn1
print("isotopic a0 a1:", isotopic_curves(mF, a0, a1))
assert isotopic_curves(mF, a0, a1)

mFf = parallel_copy(annulus(), a0, side="R", label=a1)
print("float copy channels:", mFf.channels)
print("float copy surface:", mFf.surface_class())
assert mFf.surface_class().genus == 0
assert mFf.surface_class().boundary_count == 2
print("isotopic a0 a1 (floats):", isotopic_curves(mFf, a0, a1))
assert isotopic_curves(mFf, a0, a1)
assert not is_essential_curve(mFf, a1)

print()
print("== G1: illegal and impossible slides refuse ==")
try:
    slide(torus(), 0, 1)
    print("NO RAISE - BUG")
except MapStructureError as exc:
    print("crossing mover/over raised:", exc)
try:
    slide(mF, mF.orient[a1], mF.orient[a0])
    print("NO RAISE - BUG")
except RouteError as exc:
    print("doubled-class slide raised:", exc)

print()
print("== G2: slide a trivial arc over a0 on the punctured torus ==")
pt = punctured_torus()
print("fixture surface:", pt.surface_class())
assert pt.surface_class().genus == 1
assert pt.surface_class().boundary_count == 1
mG0 = trivial_arc(pt, 4, A0)
print("arc before:", is_essential_arc(mG0, A0), "channels:", mG0.channels)
assert not is_essential_arc(mG0, A0)
assert len(mG0.channels) == 1
mG = slide(mG0, mG0.orient[A0], 0)
print("after slide:", mG.surface_class(), "channels:", mG.channels)
print("A0/b0 crossings:", len(mG.crossings(A0, b0)),
      "A0/a0 crossings:", len(mG.crossings(A0, a0)))
print("essential now:", is_essential_arc(mG, A0))
assert mG.surface_class() == mG0.surface_class()
assert mG.channels == ()
assert len(mG.crossings(A0, b0)) == 1
assert not mG.crossings(A0, a0)
assert is_essential_arc(mG, A0)

print()
print("== G3: slide a floating loop over a0 on the punctured torus ==")
bb = MapBuilder(punctured_torus())
add_loop_in_face(bb, 0, c0)
mH0 = bb.finish()
print("loop fixture channels:", mH0.channels)
assert len(mH0.channels) == 2
assert not is_essential_curve(mH0, c0)
mH1 = slide(mH0, mH0.orient[c0], 0)
print("after slide:", mH1.surface_class(), "channels:", mH1.channels)
print("c0/b0 crossings:", len(mH1.crossings(c0, b0)),
      "c0/a0 crossings:", len(mH1.crossings(c0, a0)))
print("essential now:", is_essential_curve(mH1, c0))
print("isotopic to a0:", isotopic_curves(mH1, c0, a0))
assert mH1.surface_class() == mH0.surface_class()
assert len(mH1.channels) == 1
assert len(mH1.crossings(c0, b0)) == 1
assert not mH1.crossings(c0, a0)
assert is_essential_curve(mH1, c0)

print()
print("== H: slide a trivial arc over the floating core (annulus) ==")
mHa = trivial_arc(annulus(), 0, A0)
print("arc before:", is_essential_arc(mHa, A0), mHa.surface_class())
assert not is_essential_arc(mHa, A0)
mHb = slide(mHa, mHa.orient[A0], 5)
print("after slide:", mHb.surface_class(), "channels:", mHb.channels)
print("essential now:", is_essential_arc(mHb, A0))
assert mHb.surface_class() == mHa.surface_class()
assert len(mHb.channels) == 2
assert not is_essential_arc(mHb, A0)
back_ann = delete_strands(mHb, [A0])
print("delete wrapped arc iso to annulus:",
      canonical_key(back_ann) == canonical_key(annulus()))
assert canonical_key(back_ann) == canonical_key(annulus())
B0 = StrandLabel("Ab", 0)
mHc = trivial_arc(mHb, 0, B0)
print("fresh arc vs wrapped arc isotopic:", isotopic_arcs(mHc, A0, B0))
assert not isotopic_arcs(mHc, A0, B0)
assert not is_essential_arc(mHc, B0)
try:
    trivial_arc(mHb, 1, B0)
except MapStructureError as exc:
    print("drawing in the cap refused:", exc)
else:
    raise AssertionError("arc through the cap face was accepted")

print()
print("== I: pair_reduce the straddling circle (trivial loop) ==")
b = MapBuilder(annulus())
w = RouteWalker(b, b0)
w.cross(5)
second = [d for d in w.position() if b.label[d] == a0][0]
print("second cross target:", second)
w.cross(second)
w.close()
w.register()
mI0 = b.finish()
print("straddler:", mI0.surface_class(),
      "crossings:", len(mI0.crossings(a0, b0)))
assert len(mI0.crossings(a0, b0)) == 2
mI = pair_reduce(mI0, a0, b0)
print("after reduce:", mI.surface_class(),
      "crossings:", len(mI.crossings(a0, b0)))
print("b0 essential:", is_essential_curve(mI, b0))
assert not mI.crossings(a0, b0)
assert not is_essential_curve(mI, b0)

bexp = MapBuilder(annulus())
add_loop_in_face(bexp, 5, b0)
mI_expected = bexp.finish()
print("matches annulus+loop:",
      canonical_key(mI) == canonical_key(mI_expected))
assert canonical_key(mI) == canonical_key(mI_expected)

print()
print("== J: core-parallel circle with a finger becomes a belt ==")
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
      "crossings:", len(mJ0.crossings(a0, b0)))
assert mJ0.surface_class() == annulus().surface_class()
assert len(mJ0.crossings(a0, b0)) == 2
mJ = pair_reduce(mJ0, a0, b0)
print("after reduce:", mJ.surface_class(),
      "crossings:", len(mJ.crossings(a0, b0)),
      "channels:", len(mJ.channels))
assert not mJ.crossings(a0, b0)
assert len(mJ.channels) == 3
core_b = CombMap({0: (0, 1), 1: (2, 3), 2: (4, 5)},
                 {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4},
                 {0: bd0, 1: bd0, 2: bd1, 3: bd1, 4: b0, 5: b0},
                 {b0: 4}, {0, 1}, ((0, 5), (4, 2)))
bexp = MapBuilder(core_b)
add_belt(bexp, [4, 2], a0)
mJ_expected = bexp.finish()
print("matches core+belt:", canonical_key(mJ) == canonical_key(mJ_expected))
assert canonical_key(mJ) == canonical_key(mJ_expected)
bflip = MapBuilder(core_b)
add_belt(bflip, [0, 5], a0)
assert canonical_key(mJ) != canonical_key(bflip.finish())
assert isotopic_curves(mJ, a0, b0)
assert not is_essential_curve(mJ, a0)
assert not is_essential_curve(mJ, b0)
assert intersection_numbers(mJ0, a0, b0) == (0, 0)

print()
print("== K: reduce_bigons leaves the reduced map alone ==")
mK = reduce_bigons(mI0)
assert canonical_key(mK) == canonical_key(mI)
assert canonical_key(reduce_bigons(mK)) == canonical_key(mK)
print("idempotent")

print()
print("== L: intersection number pins ==")
print("torus a0/b0:", intersection_numbers(torus(), a0, b0))
assert intersection_numbers(torus(), a0, b0) == (1, 1)
assert intersection_numbers(torus(), b0, a0) == (1, -1)
assert torus().crossing_sign(0, a0, b0) == 1
mL = parallel_copy(torus(), a0, label=a1)
assert intersection_numbers(mL, a1, b0) == (1, 1)
assert intersection_numbers(mL, a1, a0) == (0, 0)
assert intersection_numbers(mI0, a0, b0) == (0, 0)
print("all match")

print()
print("== M: spanning arc pairs on the bare annulus ==")
B0M = StrandLabel("Ab", 0)
bare = CombMap({0: (0, 1), 1: (2, 3)}, {0: 1, 1: 0, 2: 3, 3: 2},
               {0: bd0, 1: bd0, 2: bd1, 3: bd1}, {}, {0, 1}, ((0, 2),))
bM = MapBuilder(bare)
wM = RouteWalker(bM, A0)
wM.start_boundary(0)
hit = wM.reach([2, 3])
assert hit == 2 and not bM.channels
wM.end_boundary(hit)
wM.register()
mM1 = bM.finish()
print("one spanning arc:", mM1.surface_class(), "channels:", mM1.channels)
assert mM1.surface_class() == annulus().surface_class()
assert not mM1.channels
assert is_essential_arc(mM1, A0)


def second_spanning(e1, e2):
    b2 = MapBuilder(mM1)
    w2 = RouteWalker(b2, B0M)
    w2.start_boundary(e1)
    t = [d for d in w2.position() if b2.label[d] == A0][0]
    w2.cross(t)
    w2.end_boundary(e2)
    w2.register()
    return b2.finish()


mM_free = second_spanning(0, 7)
red = pair_reduce(mM_free, A0, B0M)
print("free pair: %d crossings -> %d" % (
    len(mM_free.crossings(A0, B0M)), len(red.crossings(A0, B0M))))
assert len(mM_free.crossings(A0, B0M)) == 1
assert not red.crossings(A0, B0M)
assert red.surface_class() == mM_free.surface_class()
assert is_essential_arc(red, A0) and is_essential_arc(red, B0M)
assert not isotopic_arcs(red, A0, B0M)
assert intersection_numbers(mM_free, A0, B0M) == (0, 0)

mM_iso = second_spanning(0, 2)
red_iso = pair_reduce(mM_iso, A0, B0M)
print("isotopic pair reduces to %d crossings, isotopic: %s" % (
    len(red_iso.crossings(A0, B0M)), isotopic_arcs(red_iso, A0, B0M)))
assert not red_iso.crossings(A0, B0M)
assert isotopic_arcs(red_iso, A0, B0M)

mM_blocked = second_spanning(4, 7)
red_blocked = pair_reduce(mM_blocked, A0, B0M)
print("blocked pair keeps %d crossing" % len(red_blocked.crossings(A0, B0M)))
assert len(red_blocked.crossings(A0, B0M)) == 1
assert intersection_numbers(mM_blocked, A0, B0M) == (1, 1)

print()
print("== N: channel dives ==")
bN = MapBuilder(annulus())
wN = RouteWalker(bN, b0)
wN.set_anchor(0)
far = wN.through((0, 5))
print("pre-stop dive to %d leaves channels %s" % (far, bN.channels))
assert far == 5
assert len(bN.channels) == 2
wN.cross(5)
secondN = [d for d in wN.position() if bN.label[d] == a0][0]
wN.cross(secondN)
wN.close()
wN.register()
mN = bN.finish()
print("pre-dive straddler matches straight one:",
      canonical_key(mN) == canonical_key(mI0))
assert canonical_key(mN) == canonical_key(mI0)

bN2 = MapBuilder(annulus())
wN2 = RouteWalker(bN2, A0)
wN2.start_boundary(0)
wN2.reach([4, 5])
try:
    wN2.waypoint()
except RouteError as exc:
    print("waypoint beyond a tube refused:", exc)
else:
    raise AssertionError("waypoint after a dive was accepted")

bN3 = MapBuilder(annulus())
wN3 = RouteWalker(bN3, A0)
wN3.start_boundary(0)
wN3.waypoint()
endN = [d for d in wN3.position() if bN3.label[d].is_boundary and d != 0][0]
wN3.end_boundary(endN)
wN3.register()
mN3 = bN3.finish()
print("waypoint marker suppressed:",
      canonical_key(mN3) == canonical_key(trivial_arc(annulus(), 0, A0)))
assert canonical_key(mN3) == canonical_key(trivial_arc(annulus(), 0, A0))

print()
print("all scenario checks passed")
