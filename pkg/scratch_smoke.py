from reltri.combmap import CombMap, StrandLabel
from reltri.rtdio import loads_map, dumps_map
from reltri.canonical import canonical_key, map_isomorphic

# disk with one boundary circle
bd0 = StrandLabel("bd", 0)
disk = CombMap({0: (0, 1)}, {0: 1, 1: 0}, {0: bd0, 1: bd0},
               {}, {0}, ())
print("disk:", disk.surface_class(), "faces:", disk.faces(), "caps:", disk.caps())

# one-vertex torus
a0 = StrandLabel("a", 0)
b0 = StrandLabel("b", 0)
torus = CombMap({0: (0, 1, 2, 3)}, {0: 2, 2: 0, 1: 3, 3: 1},
                {0: a0, 2: a0, 1: b0, 3: b0},
                {a0: 0, b0: 1}, set(), ())
print("torus:", torus.surface_class())
print("torus crossing sign:", torus.crossing_sign(0, a0, b0))
print("torus crossings:", torus.crossings(a0, b0))

txt = dumps_map(torus)
print(txt)
m2, _ = loads_map(txt)
assert dumps_map(m2) == txt, "canonical round trip failed"
print("round trip ok")

# random relabel invariance
import random
rng = random.Random(7)
perm = {d: nd for d, nd in zip(torus.darts, rng.sample(range(10, 20), 4))}
t2 = torus.relabel(perm)
assert canonical_key(torus) == canonical_key(t2)
bij = map_isomorphic(torus, t2)
print("relabel iso:", bij)

# annulus: two boundary circles, a core curve... core curve must cross
# something or be a loop marker.
bd1 = StrandLabel("bd", 1)
ann = CombMap(
    {0: (0, 1), 1: (2, 3), 2: (4, 5)},
    {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4},
    {0: bd0, 1: bd0, 2: bd1, 3: bd1, 4: a0, 5: a0},
    {a0: 4}, {0, 1}, ((0, 5), (4, 2)))
print("annulus:", ann.surface_class())
print("annulus faces:", ann.faces(), "caps:", ann.caps())
