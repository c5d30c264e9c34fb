"""Search for diagrams that drive long splitting runs.

Modes:
  random     - rejection sampling (good for n <= 9)
  hill       - hill-climb the rotation data to Euler characteristic -2
  sphere     - hill-climb with |det A| = 1 as a secondary objective
               (homology spheres: the paper's own setting)
"""
import json
import random
import sys
import time

sys.path.insert(0, "src")
from heegaard2.complexes import CurveComplex
from heegaard2.diagram import HeegaardDiagram, orientation_variants
from heegaard2.moves import is_wave_free
from heegaard2.whitehead import CUT_ALONG_U, CUT_ALONG_V, whitehead_graph
from heegaard2.groups import presentation, region_words, rebase, WordOracle, Budget, homology_order
from heegaard2.orders import search_positive_cone, minimal_region
from heegaard2.branched import (build_branched, trivial_sectors, delete_sectors,
    run_splitting, check_product_complement)
from heegaard2.errors import HeegaardError


def random_state(n, rng):
    ids = list(range(1, n + 1)); rng.shuffle(ids)
    k = rng.randint(max(1, n // 3), min(n - 1, 2 * n // 3))
    ids2 = list(range(1, n + 1)); rng.shuffle(ids2)
    l = rng.randint(max(1, n // 3), min(n - 1, 2 * n // 3))
    signs = {x: rng.choice([1, -1]) for x in range(1, n + 1)}
    return [ids[:k], ids[k:], ids2[:l], ids2[l:], signs]


def state_diagram(n, st):
    try:
        return HeegaardDiagram(n, st[0], st[1], st[2], st[3], st[4])
    except HeegaardError:
        return None


def chi_det(n, st):
    try:
        cx = CurveComplex([st[0], st[1]], [st[2], st[3]], st[4])
    except Exception:
        return None, None
    if not cx.is_connected():
        return None, None
    chi = cx.euler_characteristic()
    A = [[0, 0], [0, 0]]
    u1 = set(st[0])
    for j, curve in enumerate((st[2], st[3])):
        for x in curve:
            A[j][0 if x in u1 else 1] += st[4][x]
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return chi, det


def hill_climb(n, rng, want_sphere, iters=6000):
    st = random_state(n, rng)

    def score(s):
        chi, det = chi_det(n, s)
        if chi is None:
            return 10_000
        base = abs(chi + 2) * 10
        if want_sphere and det is not None:
            base += abs(abs(det) - 1)
        return base

    cur = score(st)
    for _ in range(iters):
        if cur == 0:
            break
        s2 = [list(st[0]), list(st[1]), list(st[2]), list(st[3]), dict(st[4])]
        op = rng.randrange(3)
        if op == 0:
            x = rng.randint(1, n)
            s2[4][x] = -s2[4][x]
        else:
            c = s2[rng.randrange(4)]
            if len(c) >= 2:
                i, j = rng.randrange(len(c)), rng.randrange(len(c))
                if op == 1:
                    c[i], c[j] = c[j], c[i]
                else:
                    x = c.pop(i)
                    c.insert(rng.randrange(len(c) + 1), x)
        v2 = score(s2)
        if v2 <= cur:
            st, cur = s2, v2
    if cur != 0:
        return None
    return state_diagram(n, st)


def winding_diagram(n, rng):
    """Band-monotone interleavings: Seifert-like curve systems."""
    a = rng.randint(2, n - 2)
    u1 = list(range(1, a + 1))
    u2 = list(range(a + 1, n + 1))

    def runs(ids, k):
        cuts = sorted(rng.sample(range(1, len(ids)), k - 1)) if k > 1 else []
        out = []
        prev = 0
        for c in cuts + [len(ids)]:
            out.append(ids[prev:c])
            prev = c
        return out

    k1 = rng.randint(1, min(5, a))
    k2 = rng.randint(1, min(5, n - a))
    blocks = [("u1", r) for r in runs(u1, k1)] + [("u2", r) for r in runs(u2, k2)]
    rng.shuffle(blocks)
    m = rng.randint(1, len(blocks) - 1)
    signs = {}

    def assemble(bs):
        seq = []
        for fam, r in bs:
            s = rng.choice([1, -1])
            if rng.random() < 0.5:
                r = list(reversed(r))
            for x in r:
                seq.append(x)
                signs[x] = s
        return seq

    v1 = assemble(blocks[:m])
    v2 = assemble(blocks[m:])
    if not v1 or not v2:
        return None
    try:
        return HeegaardDiagram(n, u1, u2, v1, v2, signs)
    except HeegaardError:
        return None


def minimal_quality(d):
    # forms are not required for splitting-run members, only tightness,
    # wave-freeness, and crossing pairs
    if not d.is_tight():
        return False
    m = d.crossing_matrix()
    if min(m[0][0], m[0][1], m[1][0], m[1][1]) < 1:
        return False
    if not is_wave_free(d):
        return False
    return True


def chain(dv, depth, steps):
    p = presentation(dv)
    oracle = WordOracle(p, Budget(max_coset_rows=3000))
    cone = search_positive_cone(p, depth, oracle=oracle, node_budget=200000)
    lab = region_words(dv, 0)
    m = minimal_region(lab, cone)
    lab = rebase(lab, m)
    b = build_branched(dv, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    pc = check_product_complement(b0)
    final, trace = run_splitting(b0, cone, steps=steps, seed=11, oracle=oracle)
    if trace.halted:
        raise HeegaardError("halted:" + str(trace.halt_reason))
    return {"trivial": len(rep.trivial_ids), "unknown": len(rep.unknown_ids),
            "product": pc.is_product,
            "types": {str(k): v for k, v in trace.type_counts.items()},
            "skips": trace.undecided_skips}


def main():
    seed = int(sys.argv[1])
    budget = float(sys.argv[2])
    mode = sys.argv[3] if len(sys.argv) > 3 else "hill"
    rng = random.Random(seed)
    out = open(f"tools/pipeline_found_{seed}.jsonl", "a")
    stats = {"made": 0, "quality": 0, "infinite": 0, "ok": 0}
    t0 = time.time()
    while time.time() - t0 < budget:
        if mode == "random":
            n = rng.choice([8, 9, 10, 11, 12])
            d = state_diagram(n, random_state(n, rng))
        elif mode == "winding":
            n = rng.choice([8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 20, 22, 24])
            d = winding_diagram(n, rng)
        else:
            n = rng.choice([10, 11, 12, 13, 14, 15, 16, 18])
            d = hill_climb(n, rng, want_sphere=(mode == "sphere"))
        if d is None:
            continue
        stats["made"] += 1
        try:
            if not minimal_quality(d):
                continue
        except HeegaardError:
            continue
        stats["quality"] += 1
        p = presentation(d)
        oracle = WordOracle(p, Budget(max_coset_rows=3000))
        if oracle.group_order_if_finite() is not None:
            continue
        stats["infinite"] += 1
        h1 = homology_order(p)
        if stats["infinite"] % 5 == 0:
            print("progress", stats, f"{time.time()-t0:.0f}s", flush=True)
        for flips, dv in orientation_variants(d):
            try:
                info = chain(dv, 2, 2500)
            except HeegaardError:
                continue
            except Exception:
                continue
            stats["ok"] += 1
            out.write(json.dumps({"n": n, "h1": h1, "flips": list(flips),
                                  "text": dv.to_text(), **info}) + "\n")
            out.flush()
            print("FOUND", n, "h1:", h1, stats, flush=True)
            break
    print("DONE", stats, flush=True)


if __name__ == "__main__":
    main()
