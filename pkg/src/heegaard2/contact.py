"""Corner accounting, contact bounds, and outermost-arc counting checks.

Deleting m+1 trivial quadrilaterals creates four corner points per square,
so the branch locus carries exactly 4(m+1) corners, spread over components
in even counts of at least two.  The disk-of-contact count q obeys q <= m,
and at least one component carries no disk of contact; detection being
incomplete, a pass is "consistent with" these facts while an explicit
violation is a hypothesis-violation diagnostic.

Shadow-arc families on the annulus of a v-curve are modelled by footprints:
cyclic intervals of the curve's crossing slots.  An arc is outermost when
its footprint contains no other arc's endpoint, and the counting bound says
the number of outermost arcs is at most the smaller of the v-curve's
crossing counts with the two u-curves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branched import BranchedSurface, ContactWitness
from .diagram import HeegaardDiagram
from .errors import CountMismatchError, WaveDetectedError


@dataclass
class CornerReport:
    m: int
    total_corners: int
    per_component: dict[int, int]
    components_with_2: tuple[int, ...]

    def describe(self) -> dict:
        return {
            "deleted_quadrilaterals": self.m + 1,
            "total_corners": self.total_corners,
            "per_component": {str(k): v for k, v in sorted(self.per_component.items())},
            "components_with_2_corners": list(self.components_with_2),
        }


def corner_report(b: BranchedSurface) -> CornerReport:
    """Count corner points per locus component after sector deletion."""
    deleted = len(b.deleted_regions)
    if deleted == 0:
        raise CountMismatchError("corner report requires at least one deletion")
    m = deleted - 1
    per: dict[int, int] = {}
    for comp in b.locus:
        per[comp.id] = comp.corner_count
    total = sum(per.values())
    if total != 4 * (m + 1):
        raise CountMismatchError(
            f"total corners {total} != 4*(m+1) = {4 * (m + 1)}"
        )
    for cid, count in per.items():
        if count % 2 != 0 or count < 2:
            raise CountMismatchError(
                f"locus component {cid} has {count} corners; expected an even "
                "count of at least 2"
            )
    with2 = tuple(sorted(cid for cid, count in per.items() if count == 2))
    return CornerReport(m, total, per, with2)


@dataclass
class ContactBoundReport:
    q: int
    m: int
    consistent: bool
    flagged_components: tuple[int, ...]
    clean_components: tuple[int, ...]
    note: str

    def describe(self) -> dict:
        return {
            "detected_disks": self.q,
            "bound": self.m,
            "consistent": self.consistent,
            "flagged_components": list(self.flagged_components),
            "clean_components": list(self.clean_components),
            "note": self.note,
        }


def contact_bound_check(
    b: BranchedSurface, detected: list[ContactWitness]
) -> ContactBoundReport:
    """Verify q <= m and that some component has no detected disk.

    Detection is bounded and incomplete, so a pass means "consistent with
    the counting facts"; an explicit excess of witnesses is a hypothesis
    violation surfaced in the report, never silently dropped.
    """
    m = len(b.deleted_regions) - 1
    flagged = tuple(sorted({w.component for w in detected}))
    all_comps = {comp.id for comp in b.locus}
    clean = tuple(sorted(all_comps - set(flagged)))
    q = len(flagged)
    consistent = q <= m and (not all_comps or bool(clean))
    if consistent:
        note = "consistent with the contact bounds (detection is bounded)"
    elif q > m:
        note = f"{q} disk-of-contact witnesses exceed the bound m = {m}"
    else:
        note = "every component carries a witness; contradicts the locus fact"
    return ContactBoundReport(q, m, consistent, flagged, clean, note)


# ---------------------------------------------------------------------------
# shadow arc families


@dataclass(frozen=True)
class ShadowArc:
    """An arc on a v-curve annulus, recorded by its footprint interval.

    ``start`` and ``end`` are crossing slots (positions along the v-curve);
    the footprint is the set of slots strictly between them going forward
    from start, which is the shadow bigon's trace on the curve.
    """

    start: int
    end: int

    def footprint(self, n: int) -> tuple[int, ...]:
        out = []
        i = (self.start + 1) % n
        while i != self.end:
            out.append(i)
            i = (i + 1) % n
        return tuple(out)


@dataclass
class OutermostReport:
    v_curve: str
    arc_count: int
    outermost_count: int
    bound: int
    per_tail_counts: tuple[int, int]

    def describe(self) -> dict:
        return {
            "v_curve": self.v_curve,
            "arcs": self.arc_count,
            "outermost": self.outermost_count,
            "bound": self.bound,
            "u1_crossings": self.per_tail_counts[0],
            "u2_crossings": self.per_tail_counts[1],
        }


def _validate_family(arcs: list[ShadowArc], n: int) -> None:
    ends: list[int] = []
    for a in arcs:
        if not (0 <= a.start < n and 0 <= a.end < n) or a.start == a.end:
            raise ValueError(f"bad arc {a} on a curve with {n} slots")
        ends.extend((a.start, a.end))
    if len(set(ends)) != len(ends):
        raise ValueError("arc endpoints must use distinct slots")
    # laminar: no two chords interleave (exactly one endpoint inside the
    # other's footprint means a crossing)
    for i, a in enumerate(arcs):
        fa = set(a.footprint(n))
        for bb in arcs[i + 1:]:
            inside = sum(1 for p in (bb.start, bb.end) if p in fa)
            if inside == 1:
                raise ValueError(f"arcs {a} and {bb} cross")


def outermost_arcs(arcs: list[ShadowArc], n: int) -> list[ShadowArc]:
    ends = set()
    for a in arcs:
        ends.add(a.start)
        ends.add(a.end)
    out = []
    for a in arcs:
        if not (set(a.footprint(n)) & ends):
            out.append(a)
    return out


def outermost_count_check(
    d: HeegaardDiagram, v_curve: str, arcs: list[ShadowArc]
) -> OutermostReport:
    """Counting bound and tail alternation for an arc family on an annulus.

    The number of outermost arcs is at most min(|v n u1|, |v n u2|).  The
    alternation check walks consecutive outermost endpoints along the curve:
    two adjacent endpoints in tails of the same u-curve with no crossing of
    the other u-curve between them would exhibit a wave, contradicting the
    wave-free hypothesis (WaveDetected).
    """
    vj = {"v1": 0, "v2": 1}[v_curve]
    curve = d.v1 if vj == 0 else d.v2
    n = len(curve)
    tails = [d.u_curve_of(x) for x in curve]  # 0 or 1 per slot
    _validate_family(arcs, n)
    outer = outermost_arcs(arcs, n)
    k = len(outer)
    count_u1 = sum(1 for t in tails if t == 0)
    count_u2 = n - count_u1
    bound = min(count_u1, count_u2)
    if k > bound:
        raise WaveDetectedError(
            f"{k} outermost arcs exceed the bound min({count_u1}, {count_u2})"
        )
    # tail alternation between consecutive outermost endpoints
    ends = sorted({a.start for a in outer} | {a.end for a in outer})
    if len(ends) >= 2:
        for idx, x in enumerate(ends):
            y = ends[(idx + 1) % len(ends)]
            tx, ty = tails[x], tails[y]
            if tx != ty:
                continue
            other = 1 - tx
            i = (x + 1) % n
            has_other = False
            while i != y:
                if tails[i] == other:
                    has_other = True
                    break
                i = (i + 1) % n
            if not has_other:
                raise WaveDetectedError(
                    f"adjacent outermost endpoints at slots {x} and {y} lie in "
                    f"u{tx + 1}-tails with no u{other + 1} crossing between: "
                    "a wave with respect to that meridian"
                )
    return OutermostReport(v_curve, len(arcs), k, bound, (count_u1, count_u2))
