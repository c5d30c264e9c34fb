import pytest

from heegaard2.diagram import parse_diagram
from heegaard2.errors import EmptyClassError
from heegaard2.whitehead import (
    CUT_ALONG_U,
    CUT_ALONG_V,
    band_sum,
    parallel_arc_classes,
    plus_plus_class,
    whitehead_graph,
)


def brute_multiplicities(d, side):
    """Independent tally: walk each curve of the cut family's opposite and
    attach arc ends by the sign rules, scanning raw sequences only."""
    counts = {}
    if side == CUT_ALONG_V:
        curves = (d.u1, d.u2)
        fam_of = d.v_curve_of
        def label(x, incoming):
            name = f"v{fam_of(x) + 1}"
            return (name, d.signs[x] if incoming else -d.signs[x])
    else:
        curves = (d.v1, d.v2)
        fam_of = d.u_curve_of
        def label(x, incoming):
            name = f"u{fam_of(x) + 1}"
            return (name, -d.signs[x] if incoming else d.signs[x])
    for curve in curves:
        n = len(curve)
        for k in range(n):
            x, y = curve[k], curve[(k + 1) % n]
            pair = frozenset((label(x, False), label(y, True)))
            counts[pair] = counts.get(pair, 0) + 1
    return counts


def test_multiplicities_match_brute_tally(minimal_corpus):
    for entry, d in minimal_corpus:
        for side in (CUT_ALONG_V, CUT_ALONG_U):
            graph = whitehead_graph(d, side)
            assert graph.multiplicities == brute_multiplicities(d, side)
            assert graph.total() == d.vertex_count


def test_forms_match_manifest(minimal_corpus):
    for entry, d in minimal_corpus:
        assert whitehead_graph(d, CUT_ALONG_V).form == entry["form_v"]
        assert whitehead_graph(d, CUT_ALONG_U).form == entry["form_u"]
        assert entry["form_v"] in ("I", "II", "III")
        assert entry["form_u"] in ("I", "II", "III")


def test_all_three_forms_present_in_corpus(minimal_corpus):
    forms = {e["form_v"] for e, _ in minimal_corpus}
    forms |= {e["form_u"] for e, _ in minimal_corpus}
    assert {"I", "II", "III"} <= forms


def test_symmetric_multiplicities(minimal_corpus):
    # the plus/plus and minus/minus counts agree, likewise the diagonals
    for entry, d in minimal_corpus:
        g = whitehead_graph(d, CUT_ALONG_V)
        assert g.multiplicity(("v1", 1), ("v2", 1)) == g.multiplicity(("v1", -1), ("v2", -1))
        assert g.multiplicity(("v1", 1), ("v2", -1)) == g.multiplicity(("v1", -1), ("v2", 1))


def test_parallel_classes_partition_and_match_graph(minimal_corpus):
    for entry, d in minimal_corpus:
        for side, fam in ((CUT_ALONG_V, "u"), (CUT_ALONG_U, "v")):
            classes = parallel_arc_classes(d, side)
            total_arcs = sum(c.size for c in classes)
            assert total_arcs == d.vertex_count
            graph = whitehead_graph(d, side)
            # per endpoint pattern, class sizes add up to the multiplicity
            by_pattern = {}
            for c in classes:
                by_pattern.setdefault(c.endpoints, 0)
                by_pattern[c.endpoints] += c.size
            assert by_pattern == graph.multiplicities
            # the plus-plus and minus-minus patterns are single classes
            names = ("v1", "v2") if side == CUT_ALONG_V else ("u1", "u2")
            for s in (1, -1):
                pat = frozenset(((names[0], s), (names[1], s)))
                same = [c for c in classes if c.endpoints == pat]
                assert len(same) <= 1


def test_form_I_class_count_equals_nonzero_multiplicities(minimal_corpus):
    for entry, d in minimal_corpus:
        if entry["form_v"] != "I":
            continue
        classes = parallel_arc_classes(d, CUT_ALONG_V)
        graph = whitehead_graph(d, CUT_ALONG_V)
        nonzero = sum(1 for v in graph.multiplicities.values() if v)
        assert len(classes) == nonzero


def test_unrecognized_is_a_value_not_an_error():
    # a valid but non-minimal filling diagram may fail the classification
    import pathlib

    d = parse_diagram(pathlib.Path("tests/data/fill_00_n14.hd").read_text())
    graph = whitehead_graph(d, CUT_ALONG_V)
    assert graph.form in ("I", "II", "III", "Unrecognized")


def test_band_sum_postconditions(minimal_corpus):
    ran = 0
    for entry, d in minimal_corpus:
        cls = plus_plus_class(d)
        if not cls:
            with pytest.raises(EmptyClassError):
                band_sum(d)
            continue
        result = band_sum(d)
        ran += 1
        m = len(cls)
        assert result.crossing_count == d.vertex_count - 2 * m
        assert all(result.checks.values()), (entry["file"], result.checks)
        assert len(result.feet_u1) == m and len(result.feet_u2) == m
    assert ran >= 1, "corpus must exercise a nonempty plus-plus class"
