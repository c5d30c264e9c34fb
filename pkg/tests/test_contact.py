import pytest

from heegaard2.branched import (
    KIND_REGION,
    PLUS,
    BranchedSurface,
    ContactWitness,
    build_branched,
    delete_sectors,
    trivial_sectors,
)
from heegaard2.contact import (
    ShadowArc,
    contact_bound_check,
    corner_report,
    outermost_arcs,
    outermost_count_check,
)
from heegaard2.diagram import parse_diagram
from heegaard2.errors import CountMismatchError, WaveDetectedError
from heegaard2.groups import Budget, WordOracle, presentation, rebase, region_words
from heegaard2.orders import search_positive_cone, minimal_region

CONE_VIABLE = """vertices 8
u1: 4 3
u2: 6 5 2 7 1 8
v1: 5- 6- 3+ 2-
v2: 4- 8+ 1+ 7+
"""


@pytest.fixture(scope="module")
def deleted_surface(pipeline_corpus):
    if pipeline_corpus:
        d = pipeline_corpus[0][1]
    else:
        d = parse_diagram(CONE_VIABLE)
    pres = presentation(d)
    oracle = WordOracle(pres, Budget(max_coset_rows=2000))
    cone = search_positive_cone(pres, 2, oracle=oracle)
    lab = region_words(d, 0)
    lab = rebase(lab, minimal_region(lab, cone))
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    return d, delete_sectors(b, rep.trivial_ids, oracle), rep


# ---------------------------------------------------------------------------
# an independent corner-count oracle: count crossings that are corners of
# deleted quadrilaterals directly from the diagram


def oracle_total_corners(d, b0):
    deleted = set(b0.deleted_regions)
    total = 0
    cx = d.complex
    for x in range(1, d.vertex_count + 1):
        ui, up = cx.u_at[x]
        vj, vp = cx.v_at[x]
        arcs = [
            ("u", ui, (up - 1) % len(cx.u_curves[ui])),
            ("u", ui, up),
            ("v", vj, (vp - 1) % len(cx.v_curves[vj])),
            ("v", vj, vp),
        ]
        dead = [a for a in arcs if cx.face_of(a + (-1,)) in deleted]
        if len(dead) == 2:
            total += 1
    return total


def test_corner_report_matches_independent_walk(deleted_surface):
    d, b0, rep = deleted_surface
    report = corner_report(b0)
    assert report.m == len(rep.trivial_ids) - 1
    assert report.total_corners == 4 * (report.m + 1)
    assert report.total_corners == oracle_total_corners(d, b0)
    for count in report.per_component.values():
        assert count % 2 == 0 and count >= 2
    if report.m == 0:
        assert len(report.per_component) == 1
        assert report.total_corners == 4


def test_corner_report_requires_deletion():
    b = BranchedSurface()
    with pytest.raises(CountMismatchError):
        corner_report(b)


def test_contact_bound_no_witnesses(deleted_surface):
    d, b0, rep = deleted_surface
    report = contact_bound_check(b0, [])
    assert report.consistent
    assert report.q == 0
    assert report.clean_components


def test_contact_bound_flags_excess():
    b = BranchedSurface()
    b.deleted_regions = (0,)  # m = 0: any witness breaks the bound
    from heegaard2.branched import LocusComponent

    b.locus = (LocusComponent(0, ()),)
    report = contact_bound_check(b, [ContactWitness(0, 5, "synthetic")])
    assert not report.consistent
    assert "exceed" in report.note


def test_outermost_counting_and_footprints():
    assert ShadowArc(0, 3).footprint(6) == (1, 2)
    arcs = [ShadowArc(0, 3), ShadowArc(1, 2)]
    outer = outermost_arcs(arcs, 6)
    assert outer == [ShadowArc(1, 2)]


def test_outermost_check_parallel_alternating():
    # v1 alternates u1/u2 tails; disjoint side-by-side arcs are all
    # outermost and the tails alternate: passes with k = bound possible
    d = parse_diagram(CONE_VIABLE)
    # v1 = 5 6 3 2 -> tails u2 u2 u1 u1; choose one arc per gap with
    # endpoints in different tails
    rep = outermost_count_check(d, "v1", [ShadowArc(1, 2)])
    assert rep.outermost_count == 1
    assert rep.bound >= 1


def test_outermost_check_empty_family():
    d = parse_diagram(CONE_VIABLE)
    rep = outermost_count_check(d, "v1", [])
    assert rep.outermost_count == 0


def test_outermost_same_tail_wave_detected():
    d = parse_diagram(CONE_VIABLE)
    # v1 tails: slots 0,1 on u2; 2,3 on u1.  Arc between slots 0 and 1
    # (both u2 tails, no u1 crossing between) exhibits a wave.
    with pytest.raises(WaveDetectedError):
        outermost_count_check(d, "v1", [ShadowArc(3, 0), ShadowArc(1, 2)])


def test_crossing_family_rejected():
    d = parse_diagram(CONE_VIABLE)
    with pytest.raises(ValueError):
        outermost_count_check(
            d, "v2", [ShadowArc(0, 2), ShadowArc(1, 3)]
        )
