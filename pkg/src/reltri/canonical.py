"""Canonical form for labeled maps: encoding, hashing, isomorphism.

A connected map is encoded by breadth-first relabeling: starting from a
dart, darts are discovered through the two deterministic moves
``partner`` then ``rot_next``, and each dart contributes the tuple
(new id of rot_next, new id of partner, label key, basepoint flag).  The
encoding of the component is the lexicographic minimum over all starting
darts.  Since rotations are never reflected, the encoding distinguishes
mirror images; orientation seeds are deliberately excluded (strands are
unoriented objects, seeds only fix sign conventions).

Maps with several components are encoded by sorting component encodings
and then minimizing the channel table over the bounded set of tie-breaking
choices (equal components can be permuted, and a symmetric component
admits several minimal relabelings).  The bound makes assembly encodings
deterministic and canonical for every map this package constructs; for
adversarial assemblies of many mutually isomorphic, highly symmetric
components the tie search is truncated, so equality of keys remains sound
while inequality of keys is, in that corner, conservative.

Label policies: "exact" distinguishes (family, index); "family" matches
strands by family only.
"""

from __future__ import annotations

import itertools
from collections import deque

from .combmap import CombMap, MapStructureError

_RELABEL_CAP = 64
_COMBO_CAP = 4096
_PERM_GROUP_CAP = 5


def _label_key(lab, policy):
    if policy == "exact":
        return lab.sort_key()
    if policy == "family":
        return (lab.sort_key()[0],)
    raise ValueError("unknown label policy %r" % (policy,))


def _encode_from(m: CombMap, start, policy):
    new_id = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for nb in (m.partner(d), m.rot_next(d)):
            if nb not in new_id:
                new_id[nb] = len(order)
                order.append(nb)
                queue.append(nb)
    enc = tuple((new_id[m.rot_next(d)], new_id[m.partner(d)],
                 _label_key(m.label(d), policy),
                 1 if m.vertex_of(d) in m.basepoints else 0)
                for d in order)
    return enc, new_id


def _component_best(m: CombMap, comp_darts, policy):
    """Minimal encoding of one component and the relabelings achieving it."""
    best = None
    relabelings = []
    for start in sorted(comp_darts):
        enc, new_id = _encode_from(m, start, policy)
        if best is None or enc < best:
            best = enc
            relabelings = [new_id]
        elif enc == best and len(relabelings) < _RELABEL_CAP:
            relabelings.append(new_id)
    return best, relabelings


def _face_min_dart(m: CombMap, anchor):
    return m.face_darts(anchor)


def _assembly_choices(groups):
    """Iterate deterministic (order, relabeling) choices, capped."""
    group_iters = []
    for members in groups:
        if len(members) <= _PERM_GROUP_CAP:
            perms = list(itertools.permutations(range(len(members))))
        else:
            perms = [tuple(range(len(members)))]
        group_iters.append(perms)
    count = 0
    for perm_choice in itertools.product(*group_iters):
        yield perm_choice
        count += 1
        if count >= _COMBO_CAP:
            return


def _canonical_assembly(m: CombMap, policy):
    """Canonical key plus one global relabeling realizing it."""
    comps = [sorted(c) for c in m.components()]
    parts = [_component_best(m, cd, policy) for cd in comps]
    order = sorted(range(len(parts)), key=lambda i: parts[i][0])
    encs = [parts[i][0] for i in order]

    groups = []
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and encs[j] == encs[i]:
            j += 1
        groups.append(order[i:j])
        i = j

    sizes = [len(parts[i][0]) for i in order]
    offsets = [0]
    for s in sizes[:-1]:
        offsets.append(offsets[-1] + s)

    if not m.channels:
        global_map = {}
        pos = 0
        for members in groups:
            for idx in members:
                rel = parts[idx][1][0]
                for d, nid in rel.items():
                    global_map[d] = offsets[pos] + nid
                pos += 1
        return (tuple(encs), ()), global_map

    face_orbits = {}
    for da, db in m.channels:
        for anchor in (da, db):
            face_orbits[anchor] = m.face_darts(anchor)

    best_code = None
    best_map = None
    for perm_choice in _assembly_choices(groups):
        arrangement = []
        for members, perm in zip(groups, perm_choice):
            arrangement.extend(members[k] for k in perm)
        rel_options = [parts[idx][1] for idx in arrangement]
        count = 0
        for rel_pick in itertools.product(*rel_options):
            global_map = {}
            for pos, rel in enumerate(rel_pick):
                for d, nid in rel.items():
                    global_map[d] = offsets[pos] + nid
            code = tuple(sorted(
                tuple(sorted((min(global_map[x] for x in face_orbits[da]),
                              min(global_map[x] for x in face_orbits[db]))))
                for da, db in m.channels))
            if best_code is None or code < best_code:
                best_code = code
                best_map = global_map
            count += 1
            if count >= _COMBO_CAP:
                break
        if best_code == ():
            break
    return (tuple(encs), best_code), best_map


def canonical_key(m: CombMap, policy="exact"):
    """A hashable value equal for isomorphic maps (orientation preserving)."""
    key, _ = _canonical_assembly(m, policy)
    return key


def canonical_map(m: CombMap) -> CombMap:
    """Rebuild ``m`` with canonical dart and vertex numbering.

    The input should already be normalized; orientation seeds are reset to
    the least dart of each strand, and channels are re-anchored at the
    least dart of their faces.
    """
    _, gmap = _canonical_assembly(m, "exact")
    new_rot = {}
    vertex_order = sorted(m.vertices, key=lambda v: min(gmap[d] for d in m.rot(v)))
    vmap = {v: i for i, v in enumerate(vertex_order)}
    for v in m.vertices:
        ds = [gmap[d] for d in m.rot(v)]
        k = ds.index(min(ds))
        new_rot[vmap[v]] = tuple(ds[k:] + ds[:k])
    new_partner = {gmap[d]: gmap[m.partner(d)] for d in m.darts}
    new_labels = {gmap[d]: m.label(d) for d in m.darts}
    new_orient = {}
    for lab in m.strand_labels():
        if not lab.is_boundary:
            new_orient[lab] = min(gmap[d] for d in m.strand_darts(lab))
    new_basepoints = {vmap[v] for v in m.basepoints}
    new_channels = []
    for da, db in m.channels:
        fa = min(gmap[x] for x in m.face_darts(da))
        fb = min(gmap[x] for x in m.face_darts(db))
        new_channels.append((fa, fb))
    return CombMap(new_rot, new_partner, new_labels, new_orient,
                   new_basepoints, new_channels)


def map_isomorphic(m1: CombMap, m2: CombMap, respect="exact"):
    """Orientation-preserving labeled isomorphism, or None.

    Both maps are normalized first; the returned dart bijection relates
    the normalized maps (identical to the inputs whenever the inputs carry
    no redundant degree-2 vertices).
    """
    n1 = m1.normalize()
    n2 = m2.normalize()
    key1, g1 = _canonical_assembly(n1, respect)
    key2, g2 = _canonical_assembly(n2, respect)
    if key1 != key2:
        return None
    inv2 = {gid: d for d, gid in g2.items()}
    return {d: inv2[gid] for d, gid in g1.items()}
