"""Word-labelled branched surfaces and the order-driven splitting process.

The combinatorial shadow of the branched surface built from a diagram:

* one sector per complementary region (word = its label), plus one sector
  per compressing disk of each handlebody (words are the four generators);
* one cusp per arc of the diagram.  A cusp is an ordered triple
  ``(P, Q, R)``: the smooth sheet runs from P (behind) into Q (ahead), the
  branch direction points from P to Q, and R is the sheet that terminates
  at the cusp, attached on the plus or minus side of the P-Q sheet.

The cusp relation, with ``rho`` the recorded closure defect (a relator):

* plus-side terminator:  word(Q) = word(P) * word(R) * rho
* minus-side terminator: word(Q) = word(R) * word(P) * rho

For arcs of u_i the terminator is the u-disk sector on the plus side; for
arcs of v_j it is the v-disk sector on the minus side, which is exactly the
left-multiplication labelling rule.

Splitting sites are pairs of cusps sharing the ahead sector.  Writing
word(Q) = L * U * rho with L the sheet below the cusp and U the sheet
above, the splitting word of a site is delta = L1^-1 * L2, and the dual
computation U1 * U2^-1 agrees with it modulo the recorded defects via the
exact identity (U1 U2^-1)^-1 (L1^-1 L2) = U2 rho1 rho2^-1 U2^-1.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field, replace

from .diagram import HeegaardDiagram
from .errors import (
    CuspRelationViolation,
    HeegaardError,
    MergeWordMismatch,
    NotRemovableError,
    PositivityViolation,
    QuadViolation,
    SourceViolation,
    UndecidedSignError,
)
from .groups import RegionLabeling, TriValue, WordOracle
from .orders import NEGATIVE, POSITIVE, TRIVIAL, UNKNOWN, PartialLeftOrder
from .words import EMPTY, Word, format_word, inv, mul, reduce_word

KIND_REGION = "HeegaardSector"
KIND_UDISK = "UDisk"
KIND_VDISK = "VDisk"
KIND_SPLIT = "SplitSector"

PLUS = 1
MINUS = -1


@dataclass(frozen=True)
class Sector:
    id: int
    kind: str
    word: Word
    origin: object = None  # region id for HeegaardSector, disk index for disks


@dataclass(frozen=True)
class Cusp:
    id: int
    p: int
    q: int
    r: int
    side: int  # PLUS: terminator above the P-Q sheet, MINUS: below
    defect: Word
    arc: object = None  # source arc for built cusps, None for split cusps


@dataclass(frozen=True)
class LocusArcEntry:
    arc: object
    curve: str
    cusp_id: int
    corner_after: bool  # a corner point follows this arc along the cycle


@dataclass(frozen=True)
class LocusComponent:
    id: int
    cycle: tuple[LocusArcEntry, ...]

    @property
    def corner_count(self) -> int:
        return sum(1 for e in self.cycle if e.corner_after)


@dataclass(frozen=True)
class SplitEvent:
    site: tuple[int, int]
    split_type: int  # 1, 2, 3
    delta: Word | None
    step: int


@dataclass
class SplitTrace:
    initial_digest: str
    events: list[SplitEvent]
    final_digest: str
    halted: bool
    halt_reason: str | None
    steps_executed: int
    undecided_skips: int
    type_counts: dict[int, int]


class BranchedSurface:
    """Mutable container; public operations copy before mutating."""

    def __init__(self):
        self.sectors: dict[int, Sector] = {}
        self.cusps: dict[int, Cusp] = {}
        self._sector_parent: dict[int, int] = {}
        self._next_sector = 0
        self._next_cusp = 0
        self.deleted_regions: tuple[int, ...] = ()
        self.locus: tuple[LocusComponent, ...] = ()
        self._cusp_component: dict[int, int] = {}
        self._component_parent: dict[int, int] = {}

    # -- sector resolution (merges) -----------------------------------------

    def find_sector(self, sid: int) -> int:
        parent = self._sector_parent
        while parent[sid] != sid:
            parent[sid] = parent[parent[sid]]
            sid = parent[sid]
        return sid

    def sector(self, sid: int) -> Sector:
        return self.sectors[self.find_sector(sid)]

    def word(self, sid: int) -> Word:
        return self.sector(sid).word

    def live_sectors(self) -> list[Sector]:
        return [self.sectors[s] for s in sorted(self.sectors) if self._sector_parent[s] == s]

    def live_cusps(self) -> list[Cusp]:
        return [self.cusps[c] for c in sorted(self.cusps)]

    def component_of(self, cusp_id: int) -> int:
        c = self._cusp_component[cusp_id]
        parent = self._component_parent
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    # -- construction ---------------------------------------------------------

    def _add_sector(self, kind: str, word: Word, origin=None) -> int:
        sid = self._next_sector
        self._next_sector += 1
        self.sectors[sid] = Sector(sid, kind, word, origin)
        self._sector_parent[sid] = sid
        return sid

    def _add_cusp(self, p: int, q: int, r: int, side: int, component: int, arc=None) -> int:
        cid = self._next_cusp
        self._next_cusp += 1
        defect = self._expected_defect(p, q, r, side)
        self.cusps[cid] = Cusp(cid, p, q, r, side, defect, arc)
        self._cusp_component[cid] = component
        if component not in self._component_parent:
            self._component_parent[component] = component
        return cid

    def _expected_defect(self, p: int, q: int, r: int, side: int) -> Word:
        wp, wq, wr = self.word(p), self.word(q), self.word(r)
        expected = mul(wp, wr) if side == PLUS else mul(wr, wp)
        return mul(inv(expected), wq)

    # -- invariants -------------------------------------------------------------

    def cusp_lu(self, c: Cusp) -> tuple[Word, Word]:
        """Lower and upper sheet words at a cusp: word(Q) = L * U * defect."""
        if c.side == PLUS:
            return self.word(c.p), self.word(c.r)
        return self.word(c.r), self.word(c.p)

    def cusp_lower_sector(self, c: Cusp) -> int:
        return c.p if c.side == PLUS else c.r

    def cusp_upper_sector(self, c: Cusp) -> int:
        return c.r if c.side == PLUS else c.p

    def check_cusp_relations(self) -> None:
        """Every cusp's stored defect must match its sector words exactly."""
        for c in self.cusps.values():
            actual = self._expected_defect(c.p, c.q, c.r, c.side)
            if actual != c.defect:
                raise CuspRelationViolation(
                    f"cusp {c.id}: stored defect {format_word(c.defect)} != "
                    f"recomputed {format_word(actual)}"
                )

    def _refresh_defects(self, touched_sectors: set[int]) -> None:
        for cid, c in list(self.cusps.items()):
            if {self.find_sector(c.p), self.find_sector(c.q), self.find_sector(c.r)} & touched_sectors:
                self.cusps[cid] = replace(
                    c, defect=self._expected_defect(c.p, c.q, c.r, c.side)
                )

    def digest(self) -> str:
        blob = {
            "sectors": [
                (s.id, s.kind, list(s.word)) for s in self.live_sectors()
            ],
            "cusps": [
                (
                    c.id,
                    self.find_sector(c.p),
                    self.find_sector(c.q),
                    self.find_sector(c.r),
                    c.side,
                    list(c.defect),
                )
                for c in self.live_cusps()
            ],
            "deleted": list(self.deleted_regions),
        }
        raw = json.dumps(blob, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(raw.encode()).hexdigest()

    def copy(self) -> "BranchedSurface":
        out = BranchedSurface()
        out.sectors = dict(self.sectors)
        out.cusps = dict(self.cusps)
        out._sector_parent = dict(self._sector_parent)
        out._next_sector = self._next_sector
        out._next_cusp = self._next_cusp
        out.deleted_regions = self.deleted_regions
        out.locus = self.locus
        out._cusp_component = dict(self._cusp_component)
        out._component_parent = dict(self._component_parent)
        return out

    def describe(self) -> dict:
        return {
            "sectors": [
                {"id": s.id, "kind": s.kind, "word": format_word(s.word)}
                for s in self.live_sectors()
            ],
            "cusps": len(self.cusps),
            "locus_components": len(self.locus),
            "deleted_regions": list(self.deleted_regions),
        }


# ---------------------------------------------------------------------------
# building from a diagram


def build_branched(d: HeegaardDiagram, lab: RegionLabeling) -> BranchedSurface:
    """Assemble the branched surface of a labelled diagram.

    Sector count is the region count plus four; cusps are created per arc
    with directions read off the stored crossing signs, and every cusp's
    closure defect is the labelling defect of its arc (verified).
    """
    d.require_tight()
    b = BranchedSurface()
    b._diagram = d
    b._labeling = lab
    region_sector: dict[int, int] = {}
    for rid in sorted(lab.labels):
        region_sector[rid] = b._add_sector(KIND_REGION, lab.labels[rid], origin=rid)
    udisk = [b._add_sector(KIND_UDISK, (1,), origin=1),
             b._add_sector(KIND_UDISK, (2,), origin=2)]
    vdisk = [b._add_sector(KIND_VDISK, (3,), origin=1),
             b._add_sector(KIND_VDISK, (4,), origin=2)]
    b._region_sector = region_sector

    from .groups import arc_defect

    for arc in sorted(d.complex.arcs()):
        fam, ci, _k = arc
        plus = d.complex.face_of(arc + (1,))
        minus = d.complex.face_of(arc + (-1,))
        if fam == "u":
            component = ci  # one locus component per curve initially
            cid = b._add_cusp(
                region_sector[minus], region_sector[plus], udisk[ci],
                PLUS, component, arc,
            )
        else:
            component = 2 + ci
            cid = b._add_cusp(
                region_sector[minus], region_sector[plus], vdisk[ci],
                MINUS, component, arc,
            )
        expected = arc_defect(d, lab.labels, arc)
        if b.cusps[cid].defect != expected:
            raise CuspRelationViolation(
                f"cusp on arc {arc}: defect {format_word(b.cusps[cid].defect)} "
                f"differs from labelling defect {format_word(expected)}"
            )
    b.locus = _initial_locus(b, d)
    return b


def _initial_locus(b: BranchedSurface, d: HeegaardDiagram) -> tuple[LocusComponent, ...]:
    comps = []
    by_arc = {c.arc: c.id for c in b.cusps.values() if c.arc is not None}
    next_id = 0
    for fam, curves in (("u", (d.u1, d.u2)), ("v", (d.v1, d.v2))):
        for ci, curve in enumerate(curves):
            cycle = []
            for k in range(len(curve)):
                arc = (fam, ci, k)
                cycle.append(
                    LocusArcEntry(arc, d.curve_name(fam, ci), by_arc[arc], False)
                )
            comps.append(LocusComponent(next_id, tuple(cycle)))
            next_id += 1
    return tuple(comps)


# ---------------------------------------------------------------------------
# trivial sectors and deletion


@dataclass
class TrivialSectorReport:
    trivial_ids: tuple[int, ...]
    unknown_ids: tuple[int, ...]


def trivial_sectors(b: BranchedSurface, oracle: WordOracle) -> TrivialSectorReport:
    """Heegaard sectors certified trivial, with the source/quad lemma checks.

    Every certified sector must be a quadrilateral with its four edges on
    four distinct curves and every boundary branch direction pointing out;
    violations are hard errors since they contradict proven facts about
    the construction.
    """
    trivial: list[int] = []
    unknown: list[int] = []
    for s in b.live_sectors():
        if s.kind != KIND_REGION:
            continue
        verdict = oracle.is_trivial_word(s.word)
        if verdict.is_trivial:
            trivial.append(s.id)
        elif verdict.is_unknown:
            unknown.append(s.id)
    for sid in trivial:
        _check_deletable(b, sid)
    return TrivialSectorReport(tuple(trivial), tuple(unknown))


def _boundary_cusps(b: BranchedSurface, sid: int) -> list[Cusp]:
    sid = b.find_sector(sid)
    out = []
    for c in b.cusps.values():
        if sid in (b.find_sector(c.p), b.find_sector(c.q), b.find_sector(c.r)):
            out.append(c)
    return out


def _check_deletable(b: BranchedSurface, sid: int) -> None:
    sid = b.find_sector(sid)
    boundary = _boundary_cusps(b, sid)
    # all-outward: the sector must be the behind sheet of each boundary cusp
    for c in boundary:
        roles = {
            "p": b.find_sector(c.p) == sid,
            "q": b.find_sector(c.q) == sid,
            "r": b.find_sector(c.r) == sid,
        }
        if roles["q"] or roles["r"]:
            raise SourceViolation(
                f"sector {sid} has an inward branch direction at cusp {c.id}"
            )
    if len(boundary) != 4:
        raise QuadViolation(
            f"trivial sector {sid} has {len(boundary)} boundary edges, expected 4"
        )
    curves = set()
    for c in boundary:
        if c.arc is None:
            raise QuadViolation(f"sector {sid} borders a split cusp {c.id}")
        fam, ci, _k = c.arc
        curves.add((fam, ci))
    if len(curves) != 4:
        raise QuadViolation(
            f"trivial sector {sid} boundary edges lie on {len(curves)} distinct "
            "curves, expected 4"
        )


def delete_sectors(
    b: BranchedSurface, ids, oracle: WordOracle | None = None
) -> BranchedSurface:
    """Remove trivial quadrilateral sectors and merge the freed sheets.

    At each removed cusp the ahead sheet and the terminating sheet merge;
    their words must agree in the group (checked with the oracle when the
    free words differ).  The branch locus is recomputed with corner points
    where surviving u- and v-strands concatenate.
    """
    out = b.copy()
    out._diagram = b._diagram
    out._labeling = b._labeling
    out._region_sector = b._region_sector
    dead_sectors = {out.find_sector(s) for s in ids}
    for sid in sorted(dead_sectors):
        _check_deletable(out, sid)
    merges: list[tuple[int, int]] = []
    dead_cusps = []
    for c in list(out.cusps.values()):
        if out.find_sector(c.p) in dead_sectors:
            if out.find_sector(c.q) in dead_sectors or out.find_sector(c.r) in dead_sectors:
                raise NotRemovableError(
                    f"cusp {c.id} touches two deleted sectors"
                )
            merges.append((c.q, c.r))
            dead_cusps.append(c.id)
    for cid in dead_cusps:
        del out.cusps[cid]
        del out._cusp_component[cid]
    for a, bq in merges:
        _merge_sectors(out, a, bq, oracle)
    for sid in dead_sectors:
        del out.sectors[sid]
        del out._sector_parent[sid]
    out.deleted_regions = b.deleted_regions + tuple(
        sorted(b.sectors[s].origin for s in dead_sectors)
    )
    out.locus = _deleted_locus(out)
    out._cusp_component = {}
    out._component_parent = {}
    for comp in out.locus:
        out._component_parent[comp.id] = comp.id
        for e in comp.cycle:
            out._cusp_component[e.cusp_id] = comp.id
    return out


def _merge_sectors(b: BranchedSurface, s1: int, s2: int, oracle: WordOracle | None):
    r1, r2 = b.find_sector(s1), b.find_sector(s2)
    if r1 == r2:
        return
    w1, w2 = b.sectors[r1].word, b.sectors[r2].word
    if w1 != w2:
        if oracle is None:
            raise MergeWordMismatch(
                f"sectors {r1} and {r2} merge with different words and no oracle"
            )
        verdict = oracle.is_trivial_word(mul(w1, inv(w2)))
        if verdict.is_nontrivial:
            raise MergeWordMismatch(
                f"sectors {r1} and {r2} merge but words "
                f"{format_word(w1)} != {format_word(w2)} in the group"
            )
        # Unknown is tolerated: the merge is forced by the construction and
        # the words agree modulo the recorded defects.
    keep, drop = (r1, r2) if r1 < r2 else (r2, r1)
    # prefer a region sector's identity over a disk's for readability
    b._sector_parent[drop] = keep
    b._refresh_defects({keep, drop})


def _deleted_locus(b: BranchedSurface) -> tuple[LocusComponent, ...]:
    """Walk the surviving branch locus with corner points at deleted squares."""
    d = b._diagram
    lab_regions = b._region_sector
    deleted_regions = {
        rid for rid in b.deleted_regions
    }
    cx = d.complex

    def killer_region(arc) -> int:
        return cx.face_of(arc + (-1,))  # region on the minus side

    by_arc = {c.arc: c.id for c in b.cusps.values() if c.arc is not None}
    live = {}
    for fam, curves in (("u", (d.u1, d.u2)), ("v", (d.v1, d.v2))):
        for ci, curve in enumerate(curves):
            for k in range(len(curve)):
                arc = (fam, ci, k)
                if killer_region(arc) not in deleted_regions:
                    live[arc] = by_arc[arc]

    # slots: (arc, endpoint crossing); matching at each crossing
    match: dict[tuple, tuple] = {}

    def pair(a_slot, b_slot):
        match[a_slot] = b_slot
        match[b_slot] = a_slot

    corner_pairs = set()
    for x in range(1, d.vertex_count + 1):
        ui, up = cx.u_at[x]
        vj, vp = cx.v_at[x]
        nu, nv = len(cx.u_curves[ui]), len(cx.v_curves[vj])
        u_prev = ("u", ui, (up - 1) % nu)
        u_next = ("u", ui, up)
        v_prev = ("v", vj, (vp - 1) % nv)
        v_next = ("v", vj, vp)
        local = [u_prev, u_next, v_prev, v_next]
        dead = [a for a in local if a not in live]
        if not dead:
            pair((u_prev, x), (u_next, x))
            pair((v_prev, x), (v_next, x))
        elif len(dead) == 2 and len({a[0] for a in dead}) == 2:
            alive = [a for a in local if a in live]
            if len(alive) != 2:
                raise CuspRelationViolation(f"degenerate deletion at crossing {x}")
            pair((alive[0], x), (alive[1], x))
            corner_pairs.add(frozenset(((alive[0], x), (alive[1], x))))
        else:
            raise CuspRelationViolation(
                f"crossing {x} has {len(dead)} dead arcs; deletion inconsistent"
            )

    comps = []
    seen_arcs: set = set()
    next_id = 0
    for arc in sorted(live):
        if arc in seen_arcs:
            continue
        cycle_entries = []
        cur = arc
        # traverse: enter cur at its start crossing, exit at its end
        while True:
            seen_arcs.add(cur)
            x_end = cx.arc_ends(cur)[1]
            nxt_slot = match[(cur, x_end)]
            nxt_arc = nxt_slot[0]
            corner = frozenset(((cur, x_end), nxt_slot)) in corner_pairs
            cycle_entries.append(
                LocusArcEntry(cur, d.curve_name(cur[0], cur[1]), live[cur], corner)
            )
            if nxt_arc == arc and nxt_slot[1] == cx.arc_ends(arc)[0]:
                break
            cur = nxt_arc
            if cur in seen_arcs and cur != arc:
                # safety: should not happen on a consistent matching
                break
        comps.append(LocusComponent(next_id, tuple(cycle_entries)))
        next_id += 1
    return tuple(comps)


# ---------------------------------------------------------------------------
# splitting


def splittable_sites(b: BranchedSurface) -> list[tuple[int, int]]:
    """Unordered cusp pairs sharing the ahead sector, canonical order."""
    by_q: dict[int, list[int]] = {}
    for c in b.live_cusps():
        by_q.setdefault(b.find_sector(c.q), []).append(c.id)
    sites = []
    for q in sorted(by_q):
        group = sorted(by_q[q])
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                sites.append((group[i], group[j]))
    return sites


def site_delta(b: BranchedSurface, site: tuple[int, int]) -> tuple[Word, Word]:
    """(delta_lower, delta_upper) for a site, with the exact cross-check."""
    c1, c2 = b.cusps[site[0]], b.cusps[site[1]]
    if b.find_sector(c1.q) != b.find_sector(c2.q):
        raise CuspRelationViolation(f"site {site} cusps do not share a sector")
    l1, u1 = b.cusp_lu(c1)
    l2, u2 = b.cusp_lu(c2)
    d_low = mul(inv(l1), l2)
    d_up = mul(u1, inv(u2))
    check = mul(u2, c1.defect, inv(c2.defect), inv(u2))
    if mul(inv(d_up), d_low) != check:
        raise CuspRelationViolation(
            f"dual splitting computations disagree at site {site}"
        )
    return d_low, d_up


def split_step(
    b: BranchedSurface,
    site: tuple[int, int],
    order: PartialLeftOrder,
    oracle: WordOracle | None = None,
    _in_place: bool = False,
    _step: int = 0,
) -> tuple[BranchedSurface, SplitEvent]:
    """One local splitting at the site, typed by the sign of delta."""
    out = b if _in_place else b.copy()
    if not _in_place:
        for attr in ("_diagram", "_labeling", "_region_sector"):
            if hasattr(b, attr):
                setattr(out, attr, getattr(b, attr))
    d_low, _d_up = site_delta(out, site)
    sign = order.sign(d_low)
    if sign == UNKNOWN:
        raise UndecidedSignError(
            f"splitting word sign undecided at site {site}"
        )
    if sign == POSITIVE:
        _apply_type1(out, site[0], site[1], d_low)
        event = SplitEvent(site, 1, d_low, _step)
    elif sign == TRIVIAL:
        _apply_type2(out, site[0], site[1], oracle)
        event = SplitEvent(site, 2, None, _step)
    else:
        _apply_type1(out, site[1], site[0], inv(d_low))
        event = SplitEvent(site, 3, inv(d_low), _step)
    return out, event


def _merge_components(b: BranchedSurface, c1: int, c2: int) -> int:
    parent = b._component_parent

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    r1, r2 = find(c1), find(c2)
    if r1 != r2:
        if r1 > r2:
            r1, r2 = r2, r1
        parent[r2] = r1
    return r1


def _apply_type1(b: BranchedSurface, cid1: int, cid2: int, delta: Word) -> None:
    c1, c2 = b.cusps[cid1], b.cusps[cid2]
    e = b.find_sector(c1.q)
    lower1, upper1 = b.cusp_lower_sector(c1), b.cusp_upper_sector(c1)
    lower2, upper2 = b.cusp_lower_sector(c2), b.cusp_upper_sector(c2)
    comp = _merge_components(b, b.component_of(cid1), b.component_of(cid2))
    s_delta = b._add_sector(KIND_SPLIT, delta)
    del b.cusps[cid1]
    del b.cusps[cid2]
    del b._cusp_component[cid1]
    del b._cusp_component[cid2]
    psi1 = b._add_cusp(lower1, lower2, s_delta, PLUS, comp)
    psi2 = b._add_cusp(s_delta, upper1, upper2, PLUS, comp)
    # exactness checks: psi1 is defect-free by construction of delta,
    # psi2's defect must be rho2 * rho1^-1
    if b.cusps[psi1].defect != EMPTY:
        raise CuspRelationViolation("type-1 split produced a lower defect")
    if b.cusps[psi2].defect != mul(c2.defect, inv(c1.defect)):
        raise CuspRelationViolation("type-1 split produced a wrong upper defect")
    _drop_if_orphaned(b, e)


def _apply_type2(b: BranchedSurface, cid1: int, cid2: int, oracle: WordOracle | None) -> None:
    c1, c2 = b.cusps[cid1], b.cusps[cid2]
    e = b.find_sector(c1.q)
    lower1, upper1 = b.cusp_lower_sector(c1), b.cusp_upper_sector(c1)
    lower2, upper2 = b.cusp_lower_sector(c2), b.cusp_upper_sector(c2)
    _merge_components(b, b.component_of(cid1), b.component_of(cid2))
    del b.cusps[cid1]
    del b.cusps[cid2]
    del b._cusp_component[cid1]
    del b._cusp_component[cid2]
    _merge_sectors(b, lower1, lower2, oracle)
    _merge_sectors(b, upper1, upper2, oracle)
    _drop_if_orphaned(b, e)


def _drop_if_orphaned(b: BranchedSurface, sid: int) -> None:
    sid = b.find_sector(sid)
    for c in b.cusps.values():
        if sid in (b.find_sector(c.p), b.find_sector(c.q), b.find_sector(c.r)):
            return
    # the remnant sector persists in the surface; it is removed only when
    # nothing references it and it came from a split
    if b.sectors[sid].kind == KIND_SPLIT:
        del b.sectors[sid]
        del b._sector_parent[sid]


# ---------------------------------------------------------------------------
# positivity / twisted disks / disks of contact


@dataclass
class PositivityReport:
    passed: bool
    violations: tuple[tuple[int, str], ...]
    unknowns: tuple[int, ...]


def detect_twisted_disk(
    b: BranchedSurface, order: PartialLeftOrder
) -> PositivityReport:
    """Certify absence of twisted disks of contact by sign arithmetic.

    A twisted disk forces the product of the attached sector words to be
    trivial; with every sector word positive that is impossible, so the scan
    verifies positivity of every live sector word and reports any failure.
    """
    violations = []
    unknowns = []
    for s in b.live_sectors():
        sign = order.sign(s.word)
        if sign in (NEGATIVE, TRIVIAL):
            violations.append((s.id, sign))
        elif sign == UNKNOWN:
            unknowns.append(s.id)
    if violations:
        raise PositivityViolation(
            "sector words not positive: "
            + ", ".join(f"{sid}:{sign}" for sid, sign in violations)
        )
    return PositivityReport(True, tuple(violations), tuple(unknowns))


@dataclass
class ContactWitness:
    component: int
    sector: int
    reason: str


def detect_disk_of_contact(
    b: BranchedSurface, oracle: WordOracle | None = None, budget: int = 2
) -> ContactWitness | None:
    """Bounded search for a simple disk of contact (weight-2 local pattern).

    Looks for a locus component all of whose cusps share one terminating
    sector R, with R's cusps exactly that component and word(R) certified
    trivial: the pinched double-disk pattern.  Finding nothing at this
    budget is not a proof of absence.
    """
    if budget < 2:
        return None
    comp_cusps: dict[int, list[Cusp]] = {}
    for c in b.live_cusps():
        comp_cusps.setdefault(b.component_of(c.id), []).append(c)
    for comp_id in sorted(comp_cusps):
        cusps = comp_cusps[comp_id]
        terms = {b.find_sector(b.cusp_upper_sector(c)) for c in cusps}
        if len(terms) != 1:
            continue
        r = next(iter(terms))
        r_cusps = {
            c.id
            for c in b.live_cusps()
            if b.find_sector(b.cusp_upper_sector(c)) == r
        }
        if r_cusps != {c.id for c in cusps}:
            continue
        w = b.word(r)
        trivial = not w or (oracle is not None and oracle.quick_is_trivial(w).is_trivial)
        if trivial:
            return ContactWitness(comp_id, r, "pinched double-disk pattern")
    return None


# ---------------------------------------------------------------------------
# the splitting run


def run_splitting(
    b: BranchedSurface,
    order: PartialLeftOrder,
    steps: int,
    seed: int = 0,
    oracle: WordOracle | None = None,
    check_every: int = 250,
) -> tuple[BranchedSurface, SplitTrace]:
    """Drive the splitting process for ``steps`` steps.

    Scheduler: among sites whose splitting word has a decided sign, pick the
    least recently created or used one (round robin); ties are broken with
    the seeded generator.  Sites with undecided signs are skipped and
    counted.  Positivity of all sector words is asserted after every step,
    full cusp-relation sweeps every ``check_every`` steps and at the end.
    """
    rng = random.Random(seed)
    work = b.copy()
    for attr in ("_diagram", "_labeling", "_region_sector"):
        if hasattr(b, attr):
            setattr(work, attr, getattr(b, attr))
    initial_digest = work.digest()
    events: list[SplitEvent] = []
    age: dict[tuple[int, int], int] = {}
    undecided_skips = 0
    halted = False
    halt_reason = None
    type_counts = {1: 0, 2: 0, 3: 0}
    sign_cache: dict[tuple[int, int], str] = {}

    detect_twisted_disk(work, order)
    work.check_cusp_relations()

    step = 0
    while step < steps:
        sites = splittable_sites(work)
        if not work.cusps:
            halted, halt_reason = True, "ClosedSurfaceCarried"
            break
        if not sites:
            halted, halt_reason = True, "NoSplittableSite"
            break
        decided = []
        for site in sites:
            verdict = sign_cache.get(site)
            if verdict is None:
                d_low, _ = site_delta(work, site)
                verdict = order.sign(d_low)
                sign_cache[site] = verdict
            if verdict == UNKNOWN:
                undecided_skips += 1
                continue
            decided.append(site)
        if not decided:
            halted, halt_reason = True, "AllSitesUndecided"
            break
        best_age = min(age.get(s, -1) for s in decided)
        pool = [s for s in decided if age.get(s, -1) == best_age]
        site = pool[rng.randrange(len(pool))] if len(pool) > 1 else pool[0]
        work, event = split_step(
            work, site, order, oracle, _in_place=True, _step=step
        )
        events.append(event)
        type_counts[event.split_type] += 1
        age[site] = step
        # site cache entries touching removed cusps are stale
        removed = set(site)
        for key in [k for k in sign_cache if removed & set(k)]:
            del sign_cache[key]
        if event.split_type == 2:
            sign_cache.clear()
        detect_twisted_disk(work, order)
        if check_every and (step + 1) % check_every == 0:
            work.check_cusp_relations()
        step += 1

    work.check_cusp_relations()
    trace = SplitTrace(
        initial_digest=initial_digest,
        events=events,
        final_digest=work.digest(),
        halted=halted,
        halt_reason=halt_reason,
        steps_executed=len(events),
        undecided_skips=undecided_skips,
        type_counts=type_counts,
    )
    return work, trace


def replay_events(
    b: BranchedSurface, events: list[SplitEvent], order: PartialLeftOrder,
    oracle: WordOracle | None = None,
) -> BranchedSurface:
    """Re-apply a recorded event list; used for replay determinism checks."""
    work = b.copy()
    for attr in ("_diagram", "_labeling", "_region_sector"):
        if hasattr(b, attr):
            setattr(work, attr, getattr(b, attr))
    for e in events:
        work, got = split_step(
            work, e.site, order, oracle, _in_place=True, _step=e.step
        )
        if got.split_type != e.split_type or got.delta != e.delta:
            raise CuspRelationViolation(
                f"replay diverged at step {e.step}: {got} != {e}"
            )
    return work


def trace_to_jsonl(trace: SplitTrace) -> str:
    lines = [json.dumps({
        "initial_digest": trace.initial_digest,
        "final_digest": trace.final_digest,
        "halted": trace.halted,
        "halt_reason": trace.halt_reason,
        "steps": trace.steps_executed,
        "undecided_skips": trace.undecided_skips,
        "type_counts": trace.type_counts,
    }, sort_keys=True)]
    for e in trace.events:
        lines.append(json.dumps({
            "step": e.step,
            "site": list(e.site),
            "type": e.split_type,
            "delta": format_word(e.delta) if e.delta is not None else None,
        }, sort_keys=True))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# product complement


@dataclass
class ProductComplementReport:
    is_product: bool
    deleted_count: int
    locus_components: int
    conclusion: str


def check_product_complement(b0: BranchedSurface) -> ProductComplementReport:
    """The combinatorial hypothesis for extending the lamination directly.

    True exactly when a single trivial sector was deleted and the branch
    locus is one component: the complement is then a product region and a
    fully carried lamination extends to a co-orientable taut foliation.
    """
    deleted = len(b0.deleted_regions)
    comps = len(b0.locus)
    ok = deleted == 1 and comps == 1
    conclusion = (
        "complement is a product; a fully carried lamination extends to a "
        "co-orientable taut foliation"
        if ok
        else "product criterion not met; further contact analysis applies"
    )
    return ProductComplementReport(ok, deleted, comps, conclusion)
