"""Whitehead graphs, parallel arc classes, and band sums.

Cutting the surface along one family of curves leaves a 4-holed sphere; the
other family becomes a system of disjoint arcs.  The Whitehead graph has the
four boundary labels as vertices and the arcs as edges.  Attachment rules
for an arc of the u-family at a crossing with sign s (sides named after the
v-curve's positive normal):

* the outgoing u-arc leaves on the ``-s`` side of the v-curve,
* the incoming u-arc arrives on the ``+s`` side,

and symmetrically for v-arcs at u-curves, where the outgoing v-arc leaves
on the ``+s`` side of the u-curve and arrives on the ``-s`` side.

Two arcs are parallel when they cobound a rectangle with no arcs inside;
operationally, adjacent-parallel arcs cobound a square face and parallelism
is the transitive closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import Arc, CurveComplex
from .diagram import HeegaardDiagram
from .errors import (
    EmptyClassError,
    ParallelismViolation,
    PostconditionViolation,
)

CUT_ALONG_V = "cut-along-V"
CUT_ALONG_U = "cut-along-U"

FORM_I = "I"
FORM_II = "II"
FORM_III = "III"
UNRECOGNIZED = "Unrecognized"

BoundaryLabel = tuple[str, int]  # e.g. ("v1", +1) for the plus side of v1


@dataclass(frozen=True)
class ArcClass:
    """A parallelism class of arcs in the cut-open surface."""

    endpoints: frozenset[BoundaryLabel]
    arcs: tuple[Arc, ...]

    @property
    def size(self) -> int:
        return len(self.arcs)


@dataclass
class WhiteheadGraph:
    multiplicities: dict[frozenset[BoundaryLabel], int]
    form: str
    parameters: dict[str, int] = field(default_factory=dict)

    def multiplicity(self, a: BoundaryLabel, b: BoundaryLabel) -> int:
        return self.multiplicities.get(frozenset((a, b)), 0)

    def total(self) -> int:
        return sum(self.multiplicities.values())


def _arc_endpoints(d: HeegaardDiagram, arc: Arc, cut_family: str) -> tuple[BoundaryLabel, BoundaryLabel]:
    """Boundary labels of an arc's two endpoints in the cut surface."""
    x, y = d.complex.arc_ends(arc)
    fam = arc[0]
    if cut_family == CUT_ALONG_V:
        assert fam == "u"
        lx = (d.curve_name("v", d.v_curve_of(x)), -d.signs[x])
        ly = (d.curve_name("v", d.v_curve_of(y)), d.signs[y])
    else:
        assert fam == "v"
        lx = (d.curve_name("u", d.u_curve_of(x)), d.signs[x])
        ly = (d.curve_name("u", d.u_curve_of(y)), -d.signs[y])
    return lx, ly


def parallel_arc_classes(
    d: HeegaardDiagram, cut_family: str = CUT_ALONG_V, strict: bool = True
) -> list[ArcClass]:
    """Group the opposite family's arcs into parallelism classes.

    With ``strict`` the uniqueness of the plus-plus and minus-minus classes
    is enforced (ParallelismViolation otherwise): all arcs joining the two
    plus labels must be parallel, and likewise for the two minus labels.
    """
    fam = "u" if cut_family == CUT_ALONG_V else "v"
    arcs = [a for a in d.complex.arcs() if a[0] == fam]
    index = {a: i for i, a in enumerate(arcs)}
    parent = list(range(len(arcs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for face in d.complex.faces():
        if face.size != 4:
            continue
        members = [dart[:3] for dart in face.darts if dart[0] == fam]
        if len(members) == 2:
            union(index[members[0]], index[members[1]])

    groups: dict[int, list[Arc]] = {}
    for a in arcs:
        groups.setdefault(find(index[a]), []).append(a)

    classes = []
    for group in sorted(groups.values(), key=lambda g: min(index[a] for a in g)):
        pts = {frozenset(_arc_endpoints(d, a, cut_family)) for a in group}
        if len(pts) != 1:
            raise ParallelismViolation(
                f"arcs in one parallel class have different endpoint labels: {sorted(group)}"
            )
        endpoints = next(iter(pts))
        classes.append(ArcClass(endpoints, tuple(sorted(group))))

    if strict:
        names = ("v1", "v2") if cut_family == CUT_ALONG_V else ("u1", "u2")
        for s in (1, -1):
            pat = frozenset(((names[0], s), (names[1], s)))
            same = [c for c in classes if c.endpoints == pat]
            if len(same) > 1:
                raise ParallelismViolation(
                    f"{len(same)} distinct parallel classes join "
                    f"{names[0]}{'+' if s > 0 else '-'} to "
                    f"{names[1]}{'+' if s > 0 else '-'}; expected one"
                )
    return classes


def whitehead_graph(d: HeegaardDiagram, side: str = CUT_ALONG_V) -> WhiteheadGraph:
    """Whitehead graph with form classification against the three patterns.

    Classification uses the parallel-class structure: the four cross pairs
    must carry at most one class each with the plus/minus symmetric counts,
    and the two same-curve pairs distinguish the forms (both at most one
    class: I; two classes on the first pair and none on the second: II;
    the mirror: III).  Degenerate patterns take the first match in the
    precedence I > II > III.  Anything else is Unrecognized (a value).
    """
    mult: dict[frozenset[BoundaryLabel], int] = {}
    fam = "u" if side == CUT_ALONG_V else "v"
    for arc in d.complex.arcs():
        if arc[0] != fam:
            continue
        pair = frozenset(_arc_endpoints(d, arc, side))
        mult[pair] = mult.get(pair, 0) + 1

    try:
        classes = parallel_arc_classes(d, side, strict=False)
    except ParallelismViolation:
        return WhiteheadGraph(mult, UNRECOGNIZED)

    names = ("v1", "v2") if side == CUT_ALONG_V else ("u1", "u2")
    pp = frozenset(((names[0], 1), (names[1], 1)))
    mm = frozenset(((names[0], -1), (names[1], -1)))
    pm = frozenset(((names[0], 1), (names[1], -1)))
    mp = frozenset(((names[0], -1), (names[1], 1)))
    vert1 = frozenset(((names[0], 1), (names[0], -1)))
    vert2 = frozenset(((names[1], 1), (names[1], -1)))

    if any(len(pair) == 1 for pair in mult):
        return WhiteheadGraph(mult, UNRECOGNIZED)
    if mult.get(pp, 0) != mult.get(mm, 0) or mult.get(pm, 0) != mult.get(mp, 0):
        return WhiteheadGraph(mult, UNRECOGNIZED)

    def class_count(pair) -> int:
        return sum(1 for c in classes if c.endpoints == pair)

    for pair in (pp, mm, pm, mp):
        if class_count(pair) > 1:
            return WhiteheadGraph(mult, UNRECOGNIZED)

    n1, n2 = class_count(vert1), class_count(vert2)
    params = {
        "a": mult.get(pp, 0),
        "b": mult.get(pm, 0),
    }
    if n1 <= 1 and n2 <= 1:
        params["c"] = mult.get(vert1, 0)
        params["d"] = mult.get(vert2, 0)
        return WhiteheadGraph(mult, FORM_I, params)
    if n1 == 2 and n2 == 0:
        sizes = sorted(c.size for c in classes if c.endpoints == vert1)
        params["c"], params["d"] = sizes
        return WhiteheadGraph(mult, FORM_II, params)
    if n1 == 0 and n2 == 2:
        sizes = sorted(c.size for c in classes if c.endpoints == vert2)
        params["c"], params["d"] = sizes
        return WhiteheadGraph(mult, FORM_III, params)
    return WhiteheadGraph(mult, UNRECOGNIZED)


# ---------------------------------------------------------------------------
# band sum


@dataclass
class BandSumResult:
    """The band-summed meridian and its verified postconditions.

    ``curve`` lists tokens ``("copy", x)`` meaning the push-off copy of the
    original crossing x, in traversal order (the u1-stretch followed by the
    u2-stretch).  ``checks`` records the bigon-freeness and no-wave
    verdicts of the extended five-curve complex.
    """

    curve: tuple[tuple[str, int], ...]
    feet_u1: tuple[int, ...]
    feet_u2: tuple[int, ...]
    crossing_count: int
    checks: dict[str, bool]


def plus_plus_class(d: HeegaardDiagram) -> list[Arc]:
    """All v-arcs joining u1-plus to u2-plus in the cut-open surface."""
    out = []
    for arc in d.complex.arcs():
        if arc[0] != "v":
            continue
        la, lb = _arc_endpoints(d, arc, CUT_ALONG_U)
        if {la, lb} == {("u1", 1), ("u2", 1)}:
            out.append(arc)
    return sorted(out)


def _foot_run(d: HeegaardDiagram, curve: tuple[int, ...], feet: set[int]) -> list[int]:
    """Check the feet form one cyclic run of consecutive crossings; return it."""
    n = len(curve)
    positions = sorted(curve.index(x) for x in feet)
    if len(positions) == n:
        raise PostconditionViolation("rectangle feet exhaust the whole curve")
    # rotate so that the run is contiguous
    pos_set = set(positions)
    start = None
    for p in positions:
        if (p - 1) % n not in pos_set:
            if start is not None:
                raise PostconditionViolation(
                    "rectangle feet are not consecutive along the curve; "
                    "the arc class is not maximal"
                )
            start = p
    run = [curve[(start + i) % n] for i in range(len(positions))]
    return run


def band_sum(d: HeegaardDiagram, rect: list[Arc] | None = None) -> BandSumResult:
    """Band sum of u1 and u2 along the rectangle of all plus-plus arcs.

    ``rect`` must be exactly the parallel class of v-arcs joining u1-plus to
    u2-plus (defaults to computing it).  Returns the new meridian as a
    push-off crossing sequence and verifies both postconditions: the new
    curve is bigon-free against v1 and v2, and no subarc of v1 u v2 is a
    wave with respect to {new, u1} or {new, u2}.
    """
    d.require_tight()
    cls = plus_plus_class(d)
    if rect is None:
        rect = cls
    if not rect:
        raise EmptyClassError("no v-arcs join u1-plus to u2-plus")
    if sorted(rect) != cls:
        raise PostconditionViolation(
            "rect does not contain exactly the plus-plus arc class"
        )
    # feet: endpoint crossings of the class arcs on each u-curve
    feet1: set[int] = set()
    feet2: set[int] = set()
    for arc in rect:
        x, y = d.complex.arc_ends(arc)
        for p in (x, y):
            (feet1 if d.u_curve_of(p) == 0 else feet2).add(p)
    run1 = _foot_run(d, d.u1, feet1)
    run2 = _foot_run(d, d.u2, feet2)

    def stretch(curve: tuple[int, ...], run: list[int]) -> list[int]:
        n = len(curve)
        last = curve.index(run[-1])
        out = []
        i = (last + 1) % n
        while curve[i] != run[0]:
            out.append(curve[i])
            i = (i + 1) % n
        return out

    part1 = stretch(d.u1, run1)
    part2 = stretch(d.u2, run2)
    curve = tuple(("copy", x) for x in part1 + part2)
    m = len(rect)
    count = len(part1) + len(part2)
    expected = d.vertex_count - 2 * m
    if count != expected:
        raise PostconditionViolation(
            f"band sum produced {count} crossings, expected {expected}"
        )

    checks = _band_sum_checks(d, part1 + part2)
    if not checks["tight_v1"] or not checks["tight_v2"]:
        raise PostconditionViolation("band sum result forms a bigon with a v-curve")
    if not checks["no_wave_u1"] or not checks["no_wave_u2"]:
        raise PostconditionViolation(
            "a subarc of v1 u v2 is a wave with respect to the band sum"
        )
    return BandSumResult(
        curve=curve,
        feet_u1=tuple(run1),
        feet_u2=tuple(run2),
        crossing_count=count,
        checks=checks,
    )


def _band_sum_checks(d: HeegaardDiagram, copied: list[int]) -> dict[str, bool]:
    """Posterior checks on the five-curve complex {u1, u2, new, v1, v2}.

    The new curve is a push-off: each copied crossing x becomes a fresh
    crossing placed immediately after x along its v-curve when sign(x) is
    positive and immediately before when negative (the push-off lies on the
    plus side of the original u-curves).
    """
    n = d.vertex_count
    copy_id = {x: n + 1 + i for i, x in enumerate(copied)}
    signs = dict(d.signs)
    for x, cx in copy_id.items():
        signs[cx] = d.signs[x]

    def extend(curve: tuple[int, ...]) -> list[int]:
        out = []
        for x in curve:
            if x in copy_id and d.signs[x] == -1:
                out.append(copy_id[x])
            out.append(x)
            if x in copy_id and d.signs[x] == 1:
                out.append(copy_id[x])
        return out

    new_curve = [copy_id[x] for x in copied]
    cx = CurveComplex(
        [d.u1, d.u2, new_curve],
        [extend(d.v1), extend(d.v2)],
        signs,
    )
    checks = {}
    new_idx = 2
    for vj in (0, 1):
        checks[f"tight_v{vj + 1}"] = not _subsystem_bigon(cx, new_idx, vj)
    for ui in (0, 1):
        checks[f"no_wave_u{ui + 1}"] = not _subsystem_wave(cx, signs, {new_idx, ui})
    return checks


def _subsystem_bigon(cx: CurveComplex, ui: int, vj: int) -> bool:
    """Does u-curve ``ui`` form a bigon with v-curve ``vj``?

    A bigon is bounded by one arc of each curve; the closed curve made of a
    u-arc between consecutive crossings and the v-subarc between the same
    crossings (running through crossings with other u-curves only) must cut
    off a disk.
    """
    ucurve = cx.u_curves[ui]
    vcurve = cx.v_curves[vj]
    nu, nv = len(ucurve), len(vcurve)
    on_v = {x: k for k, x in enumerate(vcurve)}
    for k in range(nu):
        x, y = ucurve[k], ucurve[(k + 1) % nu]
        if x not in on_v or y not in on_v:
            continue
        for px, py in ((on_v[x], on_v[y]), (on_v[y], on_v[x])):
            # v-subarc forward from px to py crossing only other u-curves
            chain = []
            i = px
            ok = True
            while i != py:
                chain.append(("v", vj, i))
                nxt = vcurve[(i + 1) % nv]
                i = (i + 1) % nv
                if i != py and cx.u_at[nxt][0] == ui:
                    ok = False
                    break
            if not ok:
                continue
            gamma = set(chain)
            gamma.add(("u", ui, k))
            comps = cx.cut_components(gamma)
            if len(comps) == 2 and any(cx.piece_euler(c) == 1 for c in comps):
                return True
    return False


def _subsystem_wave(cx: CurveComplex, signs: dict[int, int], uset: set[int]) -> bool:
    """Is any v-subarc a wave with respect to the u-curves in ``uset``?

    Consecutive here means consecutive among crossings with curves of
    ``uset`` along a v-curve; crossings with other u-curves may lie between
    and become part of the cut arc chain.
    """
    for vj, vcurve in enumerate(cx.v_curves):
        nv = len(vcurve)
        marks = [k for k, x in enumerate(vcurve) if cx.u_at[x][0] in uset]
        if not marks:
            continue
        for a in range(len(marks)):
            px = marks[a]
            py = marks[(a + 1) % len(marks)]
            x, y = vcurve[px], vcurve[py]
            if px == py:
                continue
            ti = cx.u_at[x][0]
            if cx.u_at[y][0] != ti:
                continue
            if signs[x] != -signs[y]:
                continue
            chain = set()
            i = px
            while i != py:
                chain.add(("v", vj, i))
                i = (i + 1) % nv
            target_curve = cx.u_curves[ti]
            cut = set(chain)
            cut.update(("u", ti, i) for i in range(len(target_curve)))
            if len(cx.cut_components(cut)) == 1:
                return True
    return False
