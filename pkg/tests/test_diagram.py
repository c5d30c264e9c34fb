import pytest

from heegaard2.diagram import (
    HeegaardDiagram,
    orientation_variants,
    parse_diagram,
    reorient,
    tighten,
    trace_faces,
)
from heegaard2.errors import (
    DiagramSyntaxError,
    DuplicateVertexError,
    GenusMismatchError,
    MissingVertexError,
)


# ---------------------------------------------------------------------------
# an independent face-count oracle: corner gluing
#
# Each crossing has four physical corners NE NW SW SE in the frame where the
# u-curve points east and the v-curve is vertical (north when the sign is
# positive).  Every corner receives exactly one gluing along a u-arc side
# and one along a v-arc side; faces are the cycles of the resulting
# matching.  This shares no code with the dart-orbit tracer.


def corner_faces(d):
    cx = d.complex
    u_link = {}
    v_link = {}

    def u_arcs():
        for ci, curve in enumerate((d.u1, d.u2)):
            for k in range(len(curve)):
                yield curve[k], curve[(k + 1) % len(curve)]

    def v_arcs():
        for cj, curve in enumerate((d.v1, d.v2)):
            for k in range(len(curve)):
                yield curve[k], curve[(k + 1) % len(curve)]

    for x, y in u_arcs():
        u_link[(x, "NE")] = (y, "NW")
        u_link[(y, "NW")] = (x, "NE")
        u_link[(x, "SE")] = (y, "SW")
        u_link[(y, "SW")] = (x, "SE")
    for x, y in v_arcs():
        lx = (x, "NW" if d.signs[x] > 0 else "SE")
        ly = (y, "SW" if d.signs[y] > 0 else "NE")
        v_link[lx] = ly
        v_link[ly] = lx
        rx = (x, "NE" if d.signs[x] > 0 else "SW")
        ry = (y, "SE" if d.signs[y] > 0 else "NW")
        v_link[rx] = ry
        v_link[ry] = rx

    corners = sorted(
        (x, q) for x in range(1, d.vertex_count + 1)
        for q in ("NE", "NW", "SW", "SE")
    )
    assert sorted(u_link) == corners
    assert sorted(v_link) == corners
    seen = set()
    sizes = []
    for c0 in corners:
        if c0 in seen:
            continue
        size = 0
        c = c0
        use_u = True
        while True:
            seen.add(c)
            size += 1
            c = u_link[c] if use_u else v_link[c]
            use_u = not use_u
            if c == c0 and use_u:
                break
        sizes.append(size)
    return sorted(sizes)


def test_corpus_euler_and_handshake(all_corpus):
    for entry, d in all_corpus:
        regions = trace_faces(d)
        v, e, f = d.vertex_count, d.complex.edge_count, len(regions)
        assert e == 2 * v
        assert v - e + f == -2
        assert sum(r.size for r in regions) == 4 * v


def test_corpus_faces_match_corner_oracle(all_corpus):
    for entry, d in all_corpus:
        oracle_sizes = corner_faces(d)
        traced_sizes = sorted(r.size for r in trace_faces(d))
        assert traced_sizes == oracle_sizes, entry["file"]


def test_tight_faces_alternate_families(minimal_corpus):
    for entry, d in minimal_corpus:
        for r in trace_faces(d):
            fams = [e.curve[0] for e in r.edge_cycle]
            assert all(
                fams[i] != fams[(i + 1) % len(fams)] for i in range(len(fams))
            ), (entry["file"], r.id)
            assert r.size % 2 == 0


def test_eight_crossing_member_counts(manifest, all_corpus):
    found = [d for e, d in all_corpus if e["kind"] == "minimal" and e["n"] == 8]
    assert found, "corpus must contain an 8-crossing minimal member"
    d = found[0]
    assert d.vertex_count == 8
    assert d.complex.edge_count == 16
    assert len(trace_faces(d)) == 6


def test_text_roundtrip(all_corpus):
    for entry, d in all_corpus:
        assert parse_diagram(d.to_text()) == d


def test_parse_errors():
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("nonsense")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("vertices 2\nu1: 1 2\nu2:\nv1: 1+\n")  # missing v2 line
    with pytest.raises(DiagramSyntaxError) as err:
        parse_diagram("vertices 2\nu1: 1 x\nu2:\nv1: 1+ 2-\nv2:\n")
    assert err.value.line == 2
    with pytest.raises(MissingVertexError):
        parse_diagram("vertices 0\nu1:\nu2:\nv1:\nv2:\n")
    with pytest.raises(DuplicateVertexError):
        parse_diagram("vertices 3\nu1: 1 1\nu2: 2 3\nv1: 1+ 2-\nv2: 3+\n")
    with pytest.raises(DuplicateVertexError):
        parse_diagram("vertices 3\nu1: 1\nu2: 2 3\nv1: 1+ 1-\nv2: 2+ 3+\n")
    with pytest.raises(MissingVertexError):
        # vertex 3 out of range / never used in the v family
        parse_diagram("vertices 2\nu1: 1\nu2: 2\nv1: 1+\nv2: 3-\n")


def test_genus_mismatch_on_torus_like():
    # a 2-crossing encoding where u1 meets v1 twice traces to a torus
    with pytest.raises(GenusMismatchError):
        parse_diagram("vertices 2\nu1: 1\nu2: 2\nv1: 1+\nv2: 2+\n")
    # disconnected pieces are also a genus failure
    with pytest.raises(GenusMismatchError):
        parse_diagram("vertices 4\nu1: 1 2\nu2: 3 4\nv1: 1+ 2+\nv2: 3+ 4+\n")


def test_comments_and_whitespace():
    d0 = parse_diagram(
        "# a comment\nvertices 4\nu1: 3 4   # trailing\nu2: 2 1\n"
        "v1: 4- 2-\nv2: 3- 1+\n"
    )
    assert d0.vertex_count == 4


def test_planted_bigons_detected_and_removed(bigon_corpus, manifest):
    for entry, d in bigon_corpus:
        bigons = d.find_bigons()
        assert len(bigons) >= 1
        assert not d.is_tight()
        t = tighten(d)
        assert t.is_tight()
        assert t.vertex_count == entry["tightened_n"]


def test_reorient_involution_and_validity(minimal_corpus):
    for entry, d in minimal_corpus[:3]:
        for flips, dv in orientation_variants(d):
            assert dv.vertex_count == d.vertex_count
            assert reorient(dv, flips) == d
