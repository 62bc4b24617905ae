"""Monodromy action on relative homology and boundary 3-manifold H1.

Every boundary group asserted here is matched against the independent
cellular mapping-torus computation in ``openbook_oracle``; the matrices
themselves are pinned by drawings whose crossing and endpoint profiles
force the answer.
"""

import pytest

from reltri.homology import AbelianGroup
from reltri.monodromy import (
    ArcImageSystem,
    MonodromyError,
    analyze_open_book,
    boundary_h1,
    dumps_arc_system,
    h1_rel_action,
    loads_arc_system,
    page_h1,
)
from reltri.rtdio import MapFormatError
from reltri.surgery import intersection_numbers, parallel_copy

from tests import pages
from tests.maps import ARC_A, bare_annulus, trivial_arc
from tests.openbook_oracle import (
    annulus_page,
    annulus_twist_maps,
    boundary_twist_maps,
    identity_maps,
    one_holed_torus_page,
    open_book_h1,
    three_holed_sphere_page,
)

IMG_A = pages.IMG_A
IMG_A1 = pages.IMG_A1
ARC_A1 = pages.ARC_A1
IDENTITY2 = ((1, 0), (0, 1))


class TestArcImageSystem:
    def test_annulus_identity_builds(self):
        s = pages.annulus_identity()
        assert s.initial == (ARC_A,)
        assert s.image == (IMG_A,)

    def test_rejects_repeated_labels(self):
        page = pages.annulus_identity().page
        with pytest.raises(MonodromyError, match="repeat"):
            ArcImageSystem(page, ((ARC_A, ARC_A),))

    def test_rejects_undeclared_page_arcs(self):
        page = pages.annulus_identity().page
        with pytest.raises(MonodromyError, match="do not match"):
            ArcImageSystem(page, ())

    def test_rejects_crossing_initial_arcs(self):
        page = pages.sphere3_drag().page
        with pytest.raises(MonodromyError, match="cross"):
            ArcImageSystem(page, ((ARC_A, IMG_A), (IMG_A1, ARC_A1)))

    def test_rejects_non_cutting_system(self):
        m = trivial_arc(bare_annulus(), 0, ARC_A)
        page = parallel_copy(m, ARC_A, label=IMG_A)
        with pytest.raises(MonodromyError, match="cut the page to a disk"):
            ArcImageSystem(page, ((ARC_A, IMG_A),))

    def test_rejects_endpoint_circle_mismatch(self):
        page = pages.sphere3_swapped_page()
        with pytest.raises(MonodromyError,
                           match="different boundary circles"):
            ArcImageSystem(page, ((ARC_A, IMG_A), (ARC_A1, IMG_A1)))


class TestH1RelAction:
    def test_annulus_identity(self):
        assert h1_rel_action(pages.annulus_identity()) == ((1,),)

    @pytest.mark.parametrize("power", [1, -1, 2])
    def test_annulus_twist(self, power):
        got = h1_rel_action(pages.annulus_twist(power))
        assert got == ((1 + power,),)

    def test_sphere3_identity(self):
        assert h1_rel_action(pages.sphere3_identity()) == IDENTITY2

    def test_sphere3_cancellation_stays_identity(self):
        # the drawing crosses the first arc once, but sliding the start
        # across that arc's endpoint undoes the crossing, so the passing
        # contribution must cancel the crossing contribution exactly
        assert h1_rel_action(pages.sphere3_cancellation()) == IDENTITY2

    def test_sphere3_drag_sign_matches_crossing(self):
        # pairwise the crossing is removable (the slide passes only the
        # copy's endpoint), but the system forbids that slide, so the
        # action keeps a shear whose sign is the raw crossing sign
        s = pages.sphere3_drag()
        assert intersection_numbers(s.page, IMG_A1, ARC_A) == (0, 0)
        (v,) = s.page.crossings(IMG_A1, ARC_A)
        sign = s.page.crossing_sign(v, IMG_A1, ARC_A)
        assert h1_rel_action(s) == ((1, 0), (sign, 1))

    def test_sphere3_detour_is_unit_shear(self):
        got = h1_rel_action(pages.sphere3_detour())
        assert got[0] == (1, 0)
        assert got[1][1] == 1
        assert abs(got[1][0]) == 1

    def test_torus1_identity(self):
        assert h1_rel_action(pages.torus1_identity()) == IDENTITY2

    def test_page_h1_ranks(self):
        assert page_h1(pages.annulus_identity().page) == AbelianGroup(1)
        assert page_h1(pages.sphere3_identity().page) == AbelianGroup(2)
        assert page_h1(pages.torus1_identity().page) == AbelianGroup(2)


class TestBoundaryH1:
    def test_rejects_non_square(self):
        with pytest.raises(MonodromyError, match="square"):
            boundary_h1(((1, 0),))

    def test_annulus_identity_matches_oracle(self):
        page = annulus_page()
        oracle = open_book_h1(page, *identity_maps(page))
        got = boundary_h1(h1_rel_action(pages.annulus_identity()))
        assert got == oracle == AbelianGroup(1)

    @pytest.mark.parametrize("power", [1, -1, 2])
    def test_annulus_twists_match_oracle(self, power):
        oracle = open_book_h1(annulus_page(), *annulus_twist_maps(power))
        got = boundary_h1(h1_rel_action(pages.annulus_twist(power)))
        assert got == oracle

    def test_sphere3_identity_matches_oracle(self):
        page = three_holed_sphere_page()
        oracle = open_book_h1(page, *identity_maps(page))
        got = boundary_h1(h1_rel_action(pages.sphere3_identity()))
        assert got == oracle == AbelianGroup(2)

    def test_sphere3_cancellation_keeps_full_rank(self):
        got = boundary_h1(h1_rel_action(pages.sphere3_cancellation()))
        assert got == AbelianGroup(2)

    @pytest.mark.parametrize("fixture", [pages.sphere3_drag,
                                         pages.sphere3_detour])
    def test_sphere3_twists_match_oracle(self, fixture):
        page = three_holed_sphere_page()
        oracle = open_book_h1(page, *boundary_twist_maps(page, 2))
        got = boundary_h1(h1_rel_action(fixture()))
        assert got == oracle == AbelianGroup(1)

    def test_torus1_identity_matches_oracle(self):
        page = one_holed_torus_page()
        oracle = open_book_h1(page, *identity_maps(page))
        got = boundary_h1(h1_rel_action(pages.torus1_identity()))
        assert got == oracle == AbelianGroup(2)


class TestAnalyzeOpenBook:
    def test_annulus_identity_report(self):
        report = analyze_open_book(pages.annulus_identity())
        assert report.boundary == AbelianGroup(1)
        assert report.trivial_monodromy
        assert report.has_fixed_arc
        assert report.min_generators == 1
        assert str(report) == "h1=Z gens=1 trivial fixed-arc"

    def test_annulus_twist_report(self):
        report = analyze_open_book(pages.annulus_twist(1))
        assert report.boundary.is_trivial
        assert not report.trivial_monodromy
        assert not report.has_fixed_arc
        assert str(report) == "h1=0 gens=0"

    @pytest.mark.parametrize("fixture", [pages.sphere3_identity,
                                         pages.torus1_identity])
    def test_identity_reports(self, fixture):
        report = analyze_open_book(fixture())
        assert report.boundary == AbelianGroup(2)
        assert report.trivial_monodromy
        assert report.has_fixed_arc
        assert report.min_generators == 2

    def test_cancellation_flags_are_conservative(self):
        # the crossing with the other initial arc hides the parallelism
        # from the square detector, so the trivial flag may only miss in
        # the safe direction: the homology still has full rank
        report = analyze_open_book(pages.sphere3_cancellation())
        assert report.boundary == AbelianGroup(2)
        assert report.has_fixed_arc

    @pytest.mark.parametrize("fixture", [pages.sphere3_drag,
                                         pages.sphere3_detour])
    def test_braided_systems_are_not_trivial(self, fixture):
        # each image is parallel to its initial arc through the others,
        # but the system is braided: a sound trivial flag must stay off,
        # or it would contradict the rank drop in the boundary group
        report = analyze_open_book(fixture())
        assert report.boundary == AbelianGroup(1)
        assert not report.trivial_monodromy
        assert report.has_fixed_arc

    def test_trivial_flag_implies_full_rank(self):
        for build in (pages.annulus_identity,
                      lambda: pages.annulus_twist(2),
                      pages.sphere3_identity, pages.sphere3_cancellation,
                      pages.sphere3_drag, pages.sphere3_detour,
                      pages.torus1_identity):
            s = build()
            report = analyze_open_book(s)
            if report.trivial_monodromy:
                assert report.boundary == AbelianGroup(
                    page_h1(s.page).rank)


class TestSerialization:
    def test_round_trip(self):
        s = pages.sphere3_detour()
        text = dumps_arc_system(s)
        back = loads_arc_system(text)
        assert back.pairs == s.pairs
        assert back.page.canonical_key() == s.page.canonical_key()
        assert h1_rel_action(back) == h1_rel_action(s)

    def test_round_trip_is_stable(self):
        text = dumps_arc_system(pages.annulus_identity())
        assert dumps_arc_system(loads_arc_system(text)) == text

    def test_missing_block(self):
        s = pages.annulus_identity()
        head = dumps_arc_system(s).partition("%monodromy 1")[0]
        with pytest.raises(MapFormatError, match="monodromy"):
            loads_arc_system(head)

    def test_bad_pair_line(self):
        s = pages.annulus_identity()
        text = dumps_arc_system(s).replace("pair Aa0 Ac0", "pair Aa0")
        with pytest.raises(MapFormatError, match="pair"):
            loads_arc_system(text)

    def test_params_pass_through(self):
        text = dumps_arc_system(pages.annulus_identity(),
                                params={"g": 0, "b": 2})
        assert "g=0" in text and "b=2" in text
        assert loads_arc_system(text).pairs == ((ARC_A, IMG_A),)
