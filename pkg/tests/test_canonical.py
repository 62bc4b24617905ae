"""Canonical keys: isomorphism invariance, chirality, label policies."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reltri.combmap import CombMap, StrandLabel
from reltri.canonical import canonical_key, canonical_map, map_isomorphic
from reltri.rtdio import dumps_map

from maps import (
    A0, B0,
    annulus, disk, mirror, punctured_torus, second_spanning, spanning_arc,
    straddler, torus,
)

FIXTURES = {
    "disk": disk,
    "torus": torus,
    "annulus": annulus,
    "punctured_torus": punctured_torus,
    "spanning_arc": spanning_arc,
    "straddler": straddler,
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_relabel_invariance(name):
    m = FIXTURES[name]()
    darts = m.darts
    shift = {d: d + 100 for d in darts}
    rev = {d: nd for d, nd in zip(darts, reversed(darts))}
    for perm in (shift, rev):
        assert canonical_key(m.relabel(perm)) == canonical_key(m)


@settings(max_examples=40, deadline=None)
@given(name=st.sampled_from(sorted(FIXTURES)), data=st.data())
def test_relabel_invariance_random(name, data):
    m = FIXTURES[name]()
    darts = list(m.darts)
    target = data.draw(st.permutations(darts))
    perm = dict(zip(darts, target))
    assert canonical_key(m.relabel(perm)) == canonical_key(m)


def test_distinct_fixtures_have_distinct_keys():
    keys = {name: canonical_key(make()) for name, make in FIXTURES.items()}
    assert len(set(keys.values())) == len(keys)


def test_canonical_map_is_canonical():
    for make in FIXTURES.values():
        m = make().normalize()
        cm = canonical_map(m)
        assert cm.darts == tuple(range(len(m.darts)))
        assert cm.vertices == tuple(range(len(m.vertices)))
        assert canonical_key(cm) == canonical_key(m)
        assert dumps_map(cm) == dumps_map(m)
        for lab in cm.strand_labels():
            if not lab.is_boundary:
                assert cm.orient_seed(lab) == min(cm.strand_darts(lab))


def test_map_isomorphic_bijection_checks_out():
    m = torus()
    r = m.relabel({0: 15, 1: 12, 2: 16, 3: 19})
    bij = map_isomorphic(m, r)
    assert bij is not None
    assert m.relabel(bij).darts == r.darts
    assert dumps_map(m.relabel(bij)) == dumps_map(r)


def test_map_isomorphic_distinguishes():
    assert map_isomorphic(torus(), annulus()) is None
    assert map_isomorphic(disk(), annulus()) is None


def test_channel_anchor_choice_is_immaterial():
    base = punctured_torus()
    moved = CombMap({0: (0, 1, 2, 3), 1: (4, 5)},
                    {0: 2, 2: 0, 1: 3, 3: 1, 4: 5, 5: 4},
                    {d: base.label(d) for d in base.darts},
                    base.orient, {1}, ((1, 4),))
    assert canonical_key(moved) == canonical_key(base)


def test_orientation_seed_is_immaterial():
    m = torus()
    flipped = CombMap({0: (0, 1, 2, 3)}, {0: 2, 2: 0, 1: 3, 3: 1},
                      {d: m.label(d) for d in m.darts},
                      {A0: 2, B0: 3}, set(), ())
    assert canonical_key(flipped) == canonical_key(m)


# ----------------------------------------------------------------------
# chirality

def test_symmetric_fixtures_match_their_mirrors():
    for make in (torus, annulus, spanning_arc):
        m = make()
        assert canonical_key(mirror(m)) == canonical_key(m)


def test_twisted_arcs_are_chiral():
    for e1, e2 in ((0, 7), (4, 7)):
        m = second_spanning(e1, e2)
        assert canonical_key(mirror(m)) != canonical_key(m)
        assert map_isomorphic(m, mirror(m)) is None


def test_mirror_is_involutive():
    m = second_spanning(0, 7)
    assert canonical_key(mirror(mirror(m))) == canonical_key(m)


# ----------------------------------------------------------------------
# label policies

def test_family_policy_ignores_indices():
    a2 = StrandLabel("a", 2)
    shifted = CombMap({0: (0, 1, 2, 3)}, {0: 2, 2: 0, 1: 3, 3: 1},
                      {0: a2, 2: a2, 1: B0, 3: B0},
                      {a2: 0, B0: 1}, set(), ())
    assert canonical_key(shifted) != canonical_key(torus())
    assert canonical_key(shifted, "family") == \
        canonical_key(torus(), "family")
    assert map_isomorphic(shifted, torus()) is None
    assert map_isomorphic(shifted, torus(), "family") is not None


def test_unknown_policy_rejected():
    with pytest.raises(ValueError):
        canonical_key(torus(), "sloppy")
