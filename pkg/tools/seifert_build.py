"""Construct genus-2 diagrams of trefoil-surgery manifolds.

The (2,3) torus knot K lies on the standard torus T; together with a
spanning arc tau of T cut along K it forms a spine whose thickened
neighborhood is one Heegaard handlebody of any surgery on K.  The genus-2
surface is the double (plus and minus sheets) of the spine neighborhood:

* u1 = surgery slope on the K-band: one longitudinal mid-band run (on a
  chosen sheet) plus m meridian loops concentrated at a point c* of K;
* u2 = meridian of the tau-band;
* v1 = torus meridian mu isotoped into the neighborhood, on the minus
  sheet (bounds in the inner solid torus);
* v2 = torus longitude lambda on the plus sheet (bounds outside).

T cut along the spine is a hexagon with boundary word
Ka+ tau+ Kb- Ka- tau- Kb+.  The mu/lambda arcs are chords; isotoping them
off the hexagon turns each chord into a boundary-parallel run (two choices
each).  Crossings on the doubled surface are exactly:

* a v-transit across the K-band meets the u1 run iff it lives on the
  run's sheet;
* a v-run passing the point c* on either K-band side meets each of the m
  loops once (loop order depends on the passage direction);
* a v-run passing a tau-side meets u2 once.

Within-curve embeddedness forces the run system of each torus curve to be
laminar and to avoid covering its own transit positions.  Remaining local
orientation conventions are a handful of global sign bits, resolved by
validation; the homology signature |H1| = |m - 6| over the winding m
identifies the correct variant family (the trefoil surgery signature), and
m = 5, 7 are then the two +-1 surgeries (one finite, one infinite group).
"""

import itertools
import json
import sys
from fractions import Fraction

sys.path.insert(0, "src")

from heegaard2.diagram import HeegaardDiagram
from heegaard2.errors import HeegaardError

HEX = [
    ("Ka", 1, 1),
    ("tau", 1, 1),
    ("Kb", -1, -1),
    ("Ka", -1, -1),
    ("tau", -1, -1),
    ("Kb", 1, 1),
]

EDGE_RANGE = {
    "Ka": (Fraction(1, 4), Fraction(3, 4)),
    "Kb": (Fraction(3, 4), Fraction(5, 4)),
    "tau": (Fraction(1, 4), Fraction(3, 4)),
}

M1 = ("Ka", Fraction(9, 20))
M2 = ("Kb", Fraction(19, 20))
L1 = ("Ka", Fraction(19, 60))
L2 = ("Ka", Fraction(13, 20))
L3 = ("Kb", Fraction(59, 60))

CSTAR = ("Kb", Fraction(11, 10))

MU_STRUCTURE = [(M1, 1), (M2, 1)]
LAMBDA_STRUCTURE = [(L2, -1), (L1, -1), (L3, -1)]

TAU_SIDES = {1, 4}  # hexagon indices of tau+ and tau-


def side_index(edge, side):
    for idx, (e, s, _d) in enumerate(HEX):
        if e == edge and s == side:
            return idx
    raise AssertionError


def side_pos(edge, side, pos):
    idx = side_index(edge, side)
    lo, hi = EDGE_RANGE[edge]
    t = (pos - lo) / (hi - lo)
    if HEX[idx][2] < 0:
        t = 1 - t
    return (idx, t)


def run_coverage(start, end, way):
    (si, sp), (ei, ep) = start, end
    out = []
    if way == 1:
        if si == ei and sp <= ep:
            out = [(si, sp, ep, 1)]
        else:
            out = [(si, sp, Fraction(1), 1)]
            i = (si + 1) % 6
            while i != ei:
                out.append((i, Fraction(0), Fraction(1), 1))
                i = (i + 1) % 6
            out.append((ei, Fraction(0), ep, 1))
    else:
        if si == ei and sp >= ep:
            out = [(si, ep, sp, -1)]
        else:
            out = [(si, Fraction(0), sp, -1)]
            i = (si - 1) % 6
            while i != ei:
                out.append((i, Fraction(0), Fraction(1), -1))
                i = (i - 1) % 6
            out.append((ei, ep, Fraction(1), -1))
    return [seg for seg in out if seg[1] != seg[2]]


def build_curve_runs(structure, ways):
    transits = []
    runs = []
    n = len(structure)
    for k, ((edge, pos), exit_side) in enumerate(structure):
        transits.append((edge, pos, exit_side))
        (nedge, npos), nexit = structure[(k + 1) % n]
        start = side_pos(edge, exit_side, pos)
        end = side_pos(nedge, -nexit, npos)
        runs.append(run_coverage(start, end, ways[k]))
    return transits, runs


def run_interval(segs):
    """Coverage as a set of exact boundary-circle points for containment."""
    return [(i, lo, hi) for i, lo, hi, _d in segs]


def covers_point(segs, side_idx, walk_pos, closed=False):
    for i, lo, hi, d in segs:
        if i == side_idx and (lo < walk_pos < hi or (closed and lo <= walk_pos <= hi)):
            return d
    return 0


def self_consistent(transits, runs):
    """No run may cover a same-curve transit position; runs laminar."""
    for edge, pos, _side in transits:
        for s in (1, -1):
            idx, walk = side_pos(edge, s, pos)
            for segs in runs:
                if covers_point(segs, idx, walk):
                    return False
    # laminar check on endpoints
    ends = []
    for segs in runs:
        first, last = segs[0], segs[-1]
        a = (first[0], first[1] if first[3] == 1 else first[2])
        b = (last[0], last[2] if last[3] == 1 else last[1])
        ends.append((a, b))
    for r1, r2 in itertools.combinations(range(len(runs)), 2):
        inside = 0
        for pt in ends[r2]:
            if covers_point(runs[r1], pt[0], pt[1]):
                inside += 1
        if inside == 1:
            return False
    return True


def nesting_size(segs):
    total = Fraction(0)
    for _i, lo, hi, _d in segs:
        total += hi - lo
    return total


def assemble(m, mu_ways, la_ways, bits, run_sheet):
    (b_mu_t, b_la_t, b_mu_tau, b_la_tau, b_mu_loop, b_la_loop) = bits
    mu_transits, mu_runs = build_curve_runs(MU_STRUCTURE, mu_ways)
    la_transits, la_runs = build_curve_runs(LAMBDA_STRUCTURE, la_ways)
    if not self_consistent(mu_transits, mu_runs):
        return None
    if not self_consistent(la_transits, la_runs):
        return None

    cs_edge, cs_pos = CSTAR
    cs_plus = side_pos(cs_edge, 1, cs_pos)
    cs_minus = side_pos(cs_edge, -1, cs_pos)

    next_id = [1]
    v_seqs = {"v1": [], "v2": []}
    signs = {}
    u1_events = []
    u2_events = []

    def emit(vname, sign, u1_key=None, u2_key=None):
        x = next_id[0]
        next_id[0] += 1
        v_seqs[vname].append(x)
        signs[x] = int(sign)
        if u1_key is not None:
            u1_events.append((u1_key, x))
        if u2_key is not None:
            u2_events.append((u2_key, x))

    def k_param_delta(edge, pos):
        return (pos - CSTAR[1]) % 1

    def meridian_station(sheet, side_idx, size):
        """Sort key around a band meridian: from the plus edge on the plus
        sheet, across to the minus edge, then back along the minus sheet."""
        edge_side = HEX[side_idx][1]
        if sheet == 1 and edge_side == 1:
            return (0, size)        # plus sheet, hugging plus edge: by size
        if sheet == 1 and edge_side == -1:
            return (1, -size)
        if sheet == -1 and edge_side == -1:
            return (2, size)
        return (3, -size)

    def walk_curve(vname, transits, runs, sheet, b_t, b_tau, b_loop):
        n = len(transits)
        for k in range(n):
            edge, pos, exit_side = transits[k]
            if sheet == run_sheet:
                emit(vname, b_t * exit_side,
                     u1_key=(1, k_param_delta(edge, pos)))
            segs = runs[k]
            size = nesting_size(segs)
            for side_idx, lo, hi, direction in segs:
                if side_idx in TAU_SIDES:
                    u2key = meridian_station(sheet, side_idx, size)
                    emit(vname, b_tau * direction,
                         u2_key=u2key + (len(v_seqs[vname]),))
                    continue
                for cs in (cs_plus, cs_minus):
                    if side_idx == cs[0] and lo < cs[1] < hi:
                        k_dir = HEX[side_idx][2] * direction
                        loop_order = range(m) if k_dir > 0 else range(m - 1, -1, -1)
                        for loop in loop_order:
                            u1key = (0, loop) + meridian_station(sheet, side_idx, size)
                            emit(vname, b_loop * direction,
                                 u1_key=u1key + (len(v_seqs[vname]),))

    walk_curve("v1", mu_transits, mu_runs, -1, b_mu_t, b_mu_tau, b_mu_loop)
    walk_curve("v2", la_transits, la_runs, 1, b_la_t, b_la_tau, b_la_loop)

    u1_seq = [x for _k, x in sorted(u1_events, key=lambda kv: kv[0])]
    u2_seq = [x for _k, x in sorted(u2_events, key=lambda kv: kv[0])]
    if not u1_seq or not u2_seq or not v_seqs["v1"] or not v_seqs["v2"]:
        return None
    n_total = next_id[0] - 1
    if len(u1_seq) + len(u2_seq) != n_total:
        return None
    try:
        return HeegaardDiagram(n_total, u1_seq, u2_seq, v_seqs["v1"],
                               v_seqs["v2"], signs)
    except HeegaardError:
        return None


def homology_det(d):
    A = [[0, 0], [0, 0]]
    for j, curve in enumerate((d.v1, d.v2)):
        for x in curve:
            A[j][d.u_curve_of(x)] += d.signs[x]
    return abs(A[0][0] * A[1][1] - A[0][1] * A[1][0])


def search(ms=(4, 5, 6, 7, 8)):
    results = {}
    for run_sheet in (1, -1):
        for mu_ways in itertools.product((1, -1), repeat=2):
            for la_ways in itertools.product((1, -1), repeat=3):
                for bits in itertools.product((1, -1), repeat=6):
                    dets = []
                    for m in ms:
                        d = assemble(m, mu_ways, la_ways, bits, run_sheet)
                        if d is None:
                            dets = None
                            break
                        dets.append(homology_det(d))
                    if dets is None:
                        continue
                    key = tuple(dets)
                    results.setdefault(key, []).append(
                        (run_sheet, mu_ways, la_ways, bits)
                    )
    return results


if __name__ == "__main__":
    res = search()
    print("distinct |H1| signatures over m=4..8:", len(res))
    for dets, variants in sorted(res.items()):
        print(dets, "x", len(variants), "e.g.", variants[0])
