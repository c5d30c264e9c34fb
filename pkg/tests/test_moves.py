import pytest

from heegaard2.diagram import parse_diagram, tighten
from heegaard2.errors import NotTightError
from heegaard2.moves import (
    ComplexityTriple,
    U_SIDE,
    V_SIDE,
    complexity,
    face_same_side_revisits,
    find_all_waves,
    find_waves,
    is_wave_free,
    minimize,
    minimize_with_trace,
    wave_move,
)


class _FakeDiagram:
    """Just enough surface for the complexity arithmetic."""

    def __init__(self, matrix):
        self._m = matrix

    def require_tight(self):
        pass

    def crossing_matrix(self):
        return [list(r) for r in self._m]


def test_complexity_arithmetic_from_definition():
    # pairwise counts |v1 n u1|=3, |v1 n u2|=4, |v2 n u1|=2, |v2 n u2|=5;
    # the middle entry is the crossing count of the special u-meridian
    c = complexity(_FakeDiagram([[3, 4], [2, 5]]))
    assert c.as_tuple() == (2, 5, 14)
    assert (c.special_v, c.special_u) == ("v2", "u1")


def test_complexity_symmetric_tie_break():
    c = complexity(_FakeDiagram([[3, 3], [3, 3]]))
    assert c.as_tuple() == (3, 6, 12)
    assert (c.special_v, c.special_u) == ("v1", "u1")


def test_complexity_brute_force_on_corpus(minimal_corpus):
    for entry, d in minimal_corpus:
        counts = {}
        for name, curve in (("v1", d.v1), ("v2", d.v2)):
            for x in curve:
                u = "u1" if x in set(d.u1) else "u2"
                counts[(name, u)] = counts.get((name, u), 0) + 1
        c = complexity(d)
        brute = min(counts.get((f"v{s}", f"u{t}"), 0)
                    for s in (1, 2) for t in (1, 2))
        assert c.c1 == brute
        assert c.c3 == d.vertex_count
        assert entry["complexity"] == list(c.as_tuple())


def test_ordering_of_triples():
    assert ComplexityTriple(1, 2, 3) < ComplexityTriple(1, 2, 4)
    assert ComplexityTriple(1, 9, 9) < ComplexityTriple(2, 0, 0)


def test_wave_search_requires_tight(bigon_corpus):
    for entry, d in bigon_corpus:
        with pytest.raises(NotTightError):
            find_waves(d, U_SIDE)


def test_minimal_corpus_is_wave_free(minimal_corpus):
    for entry, d in minimal_corpus:
        assert find_waves(d, U_SIDE) == []
        assert find_waves(d, V_SIDE) == []


def test_wave_free_cross_check_with_faces(minimal_corpus):
    # every same-side revisit in a face of a wave-free diagram must fail the
    # connectivity condition, else the chord through the face were a wave
    from heegaard2.moves import _chord_waves

    for entry, d in minimal_corpus:
        for fam in ("u", "v"):
            assert _chord_waves(d, fam) == [], entry["file"]


def test_planted_waves_found_and_sided(wave_corpus):
    for entry, d in wave_corpus:
        waves = find_all_waves(d)
        assert len(waves) == entry["wave_count"] and waves
        for w in waves:
            if w.kind == "subarc":
                # same-side condition in sign form
                assert d.signs[w.start] == -d.signs[w.end]


def test_wave_move_strictly_decreases(wave_corpus):
    for entry, d in wave_corpus:
        for w in find_all_waves(d):
            succ = wave_move(d, w)
            assert succ.total_crossings() < d.total_crossings()
            # surgery preserves the surface
            assert succ.complex.euler_characteristic() == -2


def test_minimize_matches_frozen_reduction(wave_corpus):
    for entry, d in wave_corpus:
        reduced, trace = minimize_with_trace(d)
        assert is_wave_free(reduced)
        assert reduced.to_text() == entry["reduced"]
        assert list(complexity(reduced).as_tuple()) == entry["reduced_complexity"]
        # strict c3 descent at every step
        c3s = [c.c3 for c in trace]
        assert all(a > b for a, b in zip(c3s, c3s[1:]))
        assert len(trace) - 1 <= trace[0].c3


def test_minimize_fixed_point(minimal_corpus):
    for entry, d in minimal_corpus[:4]:
        assert minimize(d) == d


def test_tighten_then_minimize_on_planted_bigons(bigon_corpus):
    for entry, d in bigon_corpus:
        t = tighten(d)
        m = minimize(t)
        assert m.is_tight() and is_wave_free(m)
