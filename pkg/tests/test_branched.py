import pytest

from heegaard2.branched import (
    KIND_REGION,
    KIND_SPLIT,
    MINUS,
    PLUS,
    BranchedSurface,
    build_branched,
    check_product_complement,
    delete_sectors,
    detect_disk_of_contact,
    detect_twisted_disk,
    replay_events,
    run_splitting,
    site_delta,
    split_step,
    splittable_sites,
    trivial_sectors,
)
from heegaard2.diagram import parse_diagram
from heegaard2.errors import (
    PositivityViolation,
    SourceViolation,
    UndecidedSignError,
)
from heegaard2.groups import Budget, WordOracle, presentation, rebase, region_words
from heegaard2.orders import search_positive_cone, minimal_region
from heegaard2.words import EMPTY, inv, mul, parse_word

CONE_VIABLE = """vertices 8
u1: 4 3
u2: 6 5 2 7 1 8
v1: 5- 6- 3+ 2-
v2: 4- 8+ 1+ 7+
"""


@pytest.fixture(scope="module")
def pipeline_ctx(pipeline_corpus):
    if pipeline_corpus:
        d = pipeline_corpus[0][1]
    else:
        d = parse_diagram(CONE_VIABLE)
    pres = presentation(d)
    oracle = WordOracle(pres, Budget(max_coset_rows=2000))
    cone = search_positive_cone(pres, 2, oracle=oracle)
    lab = region_words(d, 0)
    lab = rebase(lab, minimal_region(lab, cone))
    return d, pres, oracle, cone, lab


def test_build_counts_and_relations(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    assert len(b.live_sectors()) == len(lab.labels) + 4
    assert len(b.cusps) == d.complex.edge_count
    assert len(b.locus) == 4
    b.check_cusp_relations()


def test_u_cusp_relation_form(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    seen_u = seen_v = False
    for c in b.cusps.values():
        fam = c.arc[0]
        wp, wq, wr = b.word(c.p), b.word(c.q), b.word(c.r)
        if fam == "u":
            assert c.side == PLUS
            assert b.sectors[b.find_sector(c.r)].kind == "UDisk"
            # word(Q) = word(P) * generator, up to the recorded defect
            assert wq == mul(wp, wr, c.defect)
            seen_u = True
        else:
            assert c.side == MINUS
            assert b.sectors[b.find_sector(c.r)].kind == "VDisk"
            assert wq == mul(wr, wp, c.defect)
            seen_v = True
    assert seen_u and seen_v


def test_trivial_sector_lemma_checks(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    base_sector = [
        s.id for s in b.live_sectors()
        if s.kind == KIND_REGION and s.word == EMPTY
    ]
    assert base_sector and base_sector[0] in rep.trivial_ids
    for sid in rep.trivial_ids:
        boundary = [
            c for c in b.cusps.values()
            if b.find_sector(c.p) == b.find_sector(sid)
        ]
        assert len(boundary) == 4
        curves = {(c.arc[0], c.arc[1]) for c in boundary}
        assert len(curves) == 4


def test_delete_base_single_component(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    b0.check_cusp_relations()
    if len(rep.trivial_ids) == 1:
        assert len(b0.locus) == 1
        assert check_product_complement(b0).is_product
    total_corners = sum(comp.corner_count for comp in b0.locus)
    assert total_corners == 4 * len(rep.trivial_ids)
    for comp in b0.locus:
        assert comp.corner_count % 2 == 0 and comp.corner_count >= 2
    # deleting removed one cusp per square edge
    assert len(b0.cusps) == len(b.cusps) - 4 * len(rep.trivial_ids)


def test_delete_requires_outwardness(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    # a non-trivial sector generally has an inward cusp somewhere
    bad = None
    for s in b.live_sectors():
        if s.kind == KIND_REGION and s.word != EMPTY:
            bad = s.id
            break
    with pytest.raises(SourceViolation):
        delete_sectors(b, [bad], oracle)


def test_split_site_dual_computation(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    sites = splittable_sites(b0)
    assert sites
    for site in sites:
        d_low, d_up = site_delta(b0, site)
        c1, c2 = b0.cusps[site[0]], b0.cusps[site[1]]
        _, u2w = b0.cusp_lu(c2)
        expected = mul(u2w, c1.defect, inv(c2.defect), inv(u2w))
        assert mul(inv(d_up), d_low) == expected


def test_split_types_synthetic():
    """Hand-built surface with one sector ahead of two cusps."""
    g1, g2, h1 = parse_word("g1"), parse_word("g2"), parse_word("h1")

    def make(lower2_word):
        b = BranchedSurface()
        a = b._add_sector(KIND_REGION, g1)         # lower 1
        bb = b._add_sector(KIND_REGION, h1)        # upper 1
        e = b._add_sector(KIND_REGION, mul(g1, h1))  # ahead
        c = b._add_sector(KIND_REGION, lower2_word)  # lower 2
        dd = b._add_sector(
            KIND_REGION, mul(inv(lower2_word), g1, h1)
        )  # upper 2 so that words match exactly
        b._add_cusp(a, e, bb, PLUS, 0)
        b._add_cusp(c, e, dd, PLUS, 0)
        return b

    cone = search_positive_cone(presentation_free(), 2)

    # type 1: lower2 = g1 g2, delta = g1^-1 g1 g2 = g2 positive
    b = make(parse_word("g1 g2"))
    out, event = split_step(b, (0, 1), cone)
    assert event.split_type == 1
    assert event.delta == g2
    new = [s for s in out.live_sectors() if s.kind == KIND_SPLIT]
    assert len(new) == 1 and new[0].word == g2
    out.check_cusp_relations()

    # type 2: lower2 = g1: delta freely empty
    b = make(g1)
    out, event = split_step(b, (0, 1), cone)
    assert event.split_type == 2
    assert event.delta is None
    assert not [s for s in out.live_sectors() if s.kind == KIND_SPLIT]
    out.check_cusp_relations()

    # type 3: lower2 = g1 g2^-1: delta = g2^-1 negative
    b = make(parse_word("g1 g2^-1"))
    out, event = split_step(b, (0, 1), cone)
    assert event.split_type == 3
    assert event.delta == g2
    out.check_cusp_relations()


def presentation_free():
    from heegaard2.groups import GroupPresentation

    return GroupPresentation(())


def test_split_undecided_sign_defers():
    cone = search_positive_cone(presentation_free(), 1)
    g1 = parse_word("g1")
    long_mixed = parse_word("g1 h1^-1 g2 h2^-1 g1 h1^-1")
    b = BranchedSurface()
    a = b._add_sector(KIND_REGION, g1)
    bb = b._add_sector(KIND_REGION, parse_word("h1"))
    e = b._add_sector(KIND_REGION, mul(g1, parse_word("h1")))
    c = b._add_sector(KIND_REGION, mul(g1, long_mixed))
    dd = b._add_sector(KIND_REGION, mul(inv(long_mixed), parse_word("h1")))
    b._add_cusp(a, e, bb, PLUS, 0)
    b._add_cusp(c, e, dd, PLUS, 0)
    if cone.sign(long_mixed) == "Unknown":
        with pytest.raises(UndecidedSignError):
            split_step(b, (0, 1), cone)


def test_run_splitting_deterministic_and_replays(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    final1, trace1 = run_splitting(b0, cone, steps=60, seed=5, oracle=oracle)
    final2, trace2 = run_splitting(b0, cone, steps=60, seed=5, oracle=oracle)
    assert trace1.final_digest == trace2.final_digest
    assert [e.site for e in trace1.events] == [e.site for e in trace2.events]
    replayed = replay_events(b0, trace1.events, cone, oracle)
    assert replayed.digest() == trace1.final_digest
    # zero-step run: digests equal, no events
    same, trace0 = run_splitting(b0, cone, steps=0, seed=5, oracle=oracle)
    assert trace0.events == []
    assert trace0.initial_digest == trace0.final_digest


def test_split_sector_words_positive(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    final, trace = run_splitting(b0, cone, steps=40, seed=3, oracle=oracle)
    for s in final.live_sectors():
        if s.kind == KIND_SPLIT:
            assert cone.sign(s.word) == "Positive"
    report = detect_twisted_disk(final, cone)
    assert report.passed


def test_twisted_disk_planted_violation():
    cone = search_positive_cone(presentation_free(), 2)
    b = BranchedSurface()
    s0 = b._add_sector(KIND_REGION, EMPTY)  # a trivial word: not allowed
    s1 = b._add_sector(KIND_REGION, parse_word("g1"))
    s2 = b._add_sector(KIND_REGION, parse_word("g1"))
    b._add_cusp(s1, s2, s0, PLUS, 0)
    with pytest.raises(PositivityViolation):
        detect_twisted_disk(b, cone)


def test_disk_of_contact_weight2_planted():
    # pinched double-disk: one locus component, all cusps share a trivial
    # terminator sector whose boundary is exactly that component
    b = BranchedSurface()
    q = b._add_sector(KIND_REGION, parse_word("g1"))
    r = b._add_sector(KIND_REGION, EMPTY)
    b._add_cusp(q, q, r, PLUS, 0)
    witness = detect_disk_of_contact(b, None, budget=2)
    assert witness is not None
    assert witness.sector == b.find_sector(r)


def test_disk_of_contact_not_on_corpus_surface(pipeline_ctx):
    d, pres, oracle, cone, lab = pipeline_ctx
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    assert detect_disk_of_contact(b0, oracle, budget=2) is None


def test_product_complement_false_for_multi_deletion():
    b = BranchedSurface()
    b.deleted_regions = (0, 1)
    b.locus = ()
    rep = check_product_complement(b)
    assert not rep.is_product
