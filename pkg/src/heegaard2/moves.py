"""Wave detection, wave moves, diagram complexity, and minimization.

A wave with respect to a u-curve is operationalized as an arc of the
opposite family: an arc of v1 u v2 whose two endpoint crossings lie on the
same u-curve, approached from the same side, such that cutting the surface
along the arc together with that u-curve leaves it connected.  An arc of a
v-curve departs its start crossing on the ``+sign`` side of the u-curve and
arrives at its end crossing on the ``-sign`` side, so the same-side
condition is ``sign(start) == -sign(end)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .complexes import Arc
from .diagram import HeegaardDiagram, _drop_crossings, tighten
from .errors import NotAWaveError, NotTightError

U_SIDE = "U-side"
V_SIDE = "V-side"


@dataclass(frozen=True)
class Wave:
    """A wave with respect to ``target_curve``, met same-side at both ends.

    Two kinds are detected.  A ``subarc`` wave is an arc of the opposite
    family between consecutive crossings: ``arc`` names it, ``start`` and
    ``end`` are its endpoint crossings.  A ``chord`` wave runs through the
    interior of one region between two same-side edge occurrences of the
    target curve: ``arc`` is ``(region id, position 1, position 2)`` in the
    region's boundary cycle, and ``start``/``end`` are the positions of the
    two target-curve arcs along the target curve.  ``side`` is +1 on the
    positive-normal side.  Both kinds have connected complement, checked by
    cutting the traced surface.
    """

    target_curve: str
    arc: tuple
    side: int
    start: int
    end: int
    kind: str = "subarc"


@total_ordering
@dataclass(frozen=True)
class ComplexityTriple:
    c1: int
    c2: int
    c3: int
    special_v: str = "v1"
    special_u: str = "u1"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c1, self.c2, self.c3)

    def __lt__(self, other) -> bool:
        return self.as_tuple() < other.as_tuple()

    def __eq__(self, other) -> bool:
        return self.as_tuple() == other.as_tuple()


def complexity(d: HeegaardDiagram) -> ComplexityTriple:
    """Lexicographic complexity; special pair ties broken by (s, t) indices."""
    d.require_tight()
    m = d.crossing_matrix()
    best = min((m[s][t], s, t) for s in (0, 1) for t in (0, 1))
    _, s, t = best
    c1 = m[s][t]
    c2 = m[0][t] + m[1][t]
    c3 = m[0][0] + m[0][1] + m[1][0] + m[1][1]
    return ComplexityTriple(c1, c2, c3, special_v=f"v{s + 1}", special_u=f"u{t + 1}")


def _arc_waves(d: HeegaardDiagram, fam: str) -> list[Wave]:
    """Wave arcs of family ``fam`` with respect to the opposite family."""
    cx = d.complex
    waves = []
    curves = d.complex.v_curves if fam == "v" else d.complex.u_curves
    for ci, curve in enumerate(curves):
        n = len(curve)
        for k in range(n):
            x, y = curve[k], curve[(k + 1) % n]
            if fam == "v":
                tx, ty = cx.u_at[x][0], cx.u_at[y][0]
                side = d.signs[x]
            else:
                tx, ty = cx.v_at[x][0], cx.v_at[y][0]
                side = -d.signs[x]
            if tx != ty:
                continue
            if d.signs[x] != -d.signs[y]:
                continue
            target_fam = "u" if fam == "v" else "v"
            target = d.curve_name(target_fam, tx)
            arc: Arc = (fam, ci, k)
            cut = {arc}
            tcurve = cx.curve(target_fam, tx)
            cut.update((target_fam, tx, i) for i in range(len(tcurve)))
            if len(cx.cut_components(cut)) == 1:
                waves.append(Wave(target, arc, side, x, y))
    return waves


def _chord_waves(d: HeegaardDiagram, target_fam: str) -> list[Wave]:
    """Waves running through a region between same-side target edges."""
    cx = d.complex
    waves = []
    for face in cx.faces():
        darts = face.darts
        for i in range(len(darts)):
            fam_i, ci, ki, dir_i = darts[i]
            if fam_i != target_fam:
                continue
            for j in range(i + 1, len(darts)):
                fam_j, cj, kj, dir_j = darts[j]
                if fam_j != target_fam or cj != ci:
                    continue
                if dir_i != dir_j:
                    continue  # opposite sides of the target curve
                if _chord_complement_connected(d, face.id, i, j, target_fam, ci):
                    target = d.curve_name(target_fam, ci)
                    side = dir_i  # face on the left: +1 dart means plus side
                    waves.append(
                        Wave(target, (face.id, i, j), side, ki, kj, kind="chord")
                    )
    return waves


def _chord_complement_connected(
    d: HeegaardDiagram, face_id: int, i: int, j: int, target_fam: str, ci: int
) -> bool:
    """Connectivity of the complement of (chord u target curve).

    The chord splits the face into two pieces; pieces of all other faces
    glue across every arc not on the target curve.
    """
    cx = d.complex
    faces = cx.faces()
    darts = faces[face_id].darts
    target_arcs = {
        (target_fam, ci, k) for k in range(len(cx.curve(target_fam, ci)))
    }
    # the chord splits the face: positions strictly between i and j
    # (forward) form piece a, the rest piece b
    piece_a = set()
    pos = (i + 1) % len(darts)
    while pos != j:
        piece_a.add(pos)
        pos = (pos + 1) % len(darts)

    def node_of(fid, dart_pos=None):
        if fid != face_id:
            return fid
        return ("a",) if dart_pos in piece_a else ("b",)

    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    nodes = set()
    pos_of = {}
    for fid, face in enumerate(faces):
        for pos, dart in enumerate(face.darts):
            pos_of[dart] = (fid, pos)
    for arc in cx.arcs():
        if arc in target_arcs:
            continue
        d_plus, d_minus = arc + (1,), arc + (-1,)
        fa, pa = pos_of[d_plus]
        fb, pb = pos_of[d_minus]
        na, nb = node_of(fa, pa), node_of(fb, pb)
        nodes.update((na, nb))
        union(na, nb)
    nodes.add(("a",))
    nodes.add(("b",))
    for fid in range(len(faces)):
        if fid != face_id:
            nodes.add(fid)
    roots = {find(x) for x in nodes}
    return len(roots) == 1


def find_waves(
    d: HeegaardDiagram, family: str = U_SIDE, include_chords: bool = True
) -> list[Wave]:
    """All waves with respect to the given family's curves.

    ``U-side`` searches for waves returning to a single u-curve (arcs of
    v1 u v2 and chords through regions); ``V-side`` is symmetric.  Requires
    a tight diagram.  An empty result is the no-wave certificate.
    """
    if not d.is_tight():
        raise NotTightError("wave search requires a bigon-free diagram")
    if family == U_SIDE:
        fam = "v"
    elif family == V_SIDE:
        fam = "u"
    else:
        raise ValueError(f"unknown family {family!r}")
    waves = _arc_waves(d, fam)
    if include_chords:
        waves.extend(_chord_waves(d, "u" if fam == "v" else "v"))
    return waves


def find_all_waves(d: HeegaardDiagram) -> list[Wave]:
    return find_waves(d, U_SIDE) + find_waves(d, V_SIDE)


def is_wave_free(d: HeegaardDiagram) -> bool:
    return not find_all_waves(d)


def _wave_move_candidates(d: HeegaardDiagram, w: Wave) -> list[HeegaardDiagram]:
    """The two surgery candidates for replacing the wave's target curve.

    The target curve is cut at the wave's endpoints; each candidate keeps
    the crossings of one of the two resulting arcs (pushed off to the wave's
    side along with the wave arc) and discards the rest.  For a subarc wave
    the endpoints are crossings, which die; for a chord wave they are
    interior points of two arcs, so every crossing survives on one side.
    Candidates that fail genus-2 validation are dropped.
    """
    target_fam = w.target_curve[0]
    ti = int(w.target_curve[1]) - 1
    cx = d.complex
    curve = cx.curve(target_fam, ti)
    n = len(curve)

    def interval(a: int, b: int, include_b: bool) -> list[int]:
        out = []
        i = (a + 1) % n
        while i != b:
            out.append(curve[i])
            i = (i + 1) % n
        if include_b:
            out.append(curve[b])
        return out

    if w.kind == "subarc":
        at = cx.u_at if target_fam == "u" else cx.v_at
        px, py = at[w.start][1], at[w.end][1]
        arc_a = interval(px, py, include_b=False)
        arc_b = interval(py, px, include_b=False)
    else:
        # start/end are arc indices; the cut points are inside those arcs
        arc_a = interval(w.start, w.end, include_b=True)
        arc_b = interval(w.end, w.start, include_b=True)
    results = []
    for kept in (arc_a, arc_b):
        dead = set(curve) - set(kept)
        if target_fam == "u":
            new_curve = tuple(x for x in curve if x not in dead)
            base = d.replace(**{f"u{ti + 1}": new_curve}, validate=False)
        else:
            new_curve = tuple(x for x in curve if x not in dead)
            base = d.replace(**{f"v{ti + 1}": new_curve}, validate=False)
        try:
            cand = _drop_crossings(base, dead)
        except Exception:
            continue
        if cand.total_crossings() >= d.total_crossings():
            continue
        results.append(cand)
    return results


def wave_move(d: HeegaardDiagram, w: Wave) -> HeegaardDiagram:
    """Replace the wave's target curve by the surgered curve.

    Deterministic choice between the two geometric candidates: the one with
    fewer surviving crossings wins, then the forward-arc candidate.  A
    candidate must validate as a genus-2 diagram; if neither does, the wave
    data was not a wave of this diagram.
    """
    cands = _wave_move_candidates(d, w)
    if not cands:
        raise NotAWaveError(
            f"no valid surgery for wave on {w.arc} targeting {w.target_curve}"
        )
    cands.sort(key=lambda c: c.total_crossings())
    return cands[0]


def minimize(d: HeegaardDiagram) -> HeegaardDiagram:
    """Apply wave moves until no wave remains, greedily minimizing complexity.

    At each step every available wave move is evaluated; the successor with
    the lexicographically smallest complexity triple wins (first found on
    ties, scan order: U-side waves then V-side, curve order, arc order).
    Bigons created by a move are cancelled before the successor is measured,
    so the total crossing count strictly decreases at every step.
    """
    result, _ = minimize_with_trace(d)
    return result


def minimize_with_trace(
    d: HeegaardDiagram,
) -> tuple[HeegaardDiagram, list[ComplexityTriple]]:
    """As :func:`minimize`, also returning the complexity after each step."""
    d.require_tight()
    trace: list[ComplexityTriple] = [complexity(d)]
    while True:
        waves = find_all_waves(d)
        if not waves:
            return d, trace
        best = None
        for w in waves:
            succ = tighten(wave_move(d, w))
            key = complexity(succ)
            if best is None or key < best[0]:
                best = (key, succ)
        assert best is not None
        if best[1].total_crossings() >= d.total_crossings():
            raise NotAWaveError("wave move failed to decrease total crossings")
        d = best[1]
        trace.append(best[0])


def face_same_side_revisits(d: HeegaardDiagram) -> list[tuple[int, str, str]]:
    """Faces whose boundary meets one curve twice from the same side.

    Each such revisit admits a chord through the face meeting the curve
    same-side at both ends; it is a wave exactly when the cut complement is
    connected, so on a wave-free diagram every listed revisit must fail the
    connectivity test (the cross-check with the wave scan).
    """
    hits = []
    for r in d.regions():
        seen: dict[tuple[str, str], int] = {}
        for e in r.edge_cycle:
            key = (e.curve, e.side)
            seen[key] = seen.get(key, 0) + 1
        for (curve, side), count in seen.items():
            if count >= 2:
                hits.append((r.id, curve, side))
    return hits
