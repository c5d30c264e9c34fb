import random, time, sys, json
sys.path.insert(0, "src")
from heegaard2.diagram import HeegaardDiagram
from heegaard2.moves import is_wave_free
from heegaard2.whitehead import whitehead_graph, CUT_ALONG_U, CUT_ALONG_V
from heegaard2.groups import presentation, WordOracle, Budget, homology_order
from heegaard2.errors import HeegaardError

def winding_diagram(n, rng):
    a = rng.randint(2, n - 2)
    u1 = list(range(1, a + 1)); u2 = list(range(a + 1, n + 1))
    def runs(ids, k):
        cuts = sorted(rng.sample(range(1, len(ids)), k - 1)) if k > 1 else []
        out = []; prev = 0
        for c in cuts + [len(ids)]:
            out.append(ids[prev:c]); prev = c
        return out
    k1 = rng.randint(1, min(4, a)); k2 = rng.randint(1, min(4, n - a))
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
                seq.append(x); signs[x] = s
        return seq
    v1 = assemble(blocks[:m]); v2 = assemble(blocks[m:])
    if not v1 or not v2: return None
    try:
        return HeegaardDiagram(n, u1, u2, v1, v2, signs)
    except HeegaardError:
        return None

def main():
    rng = random.Random(int(sys.argv[1]))
    budget = float(sys.argv[2])
    t0 = time.time()
    stats = {"made": 0, "valid": 0, "quality": 0, "infinite": 0}
    out = open(f"tools/winding_{sys.argv[1]}.jsonl", "a")
    while time.time() - t0 < budget:
        n = rng.randint(8, 18)
        d = winding_diagram(n, rng)
        stats["made"] += 1
        if d is None: continue
        stats["valid"] += 1
        try:
            if not d.is_tight(): continue
            m = d.crossing_matrix()
            if min(m[0][0], m[0][1], m[1][0], m[1][1]) < 1: continue
            if not is_wave_free(d): continue
            if whitehead_graph(d, CUT_ALONG_V).form == "Unrecognized": continue
            if whitehead_graph(d, CUT_ALONG_U).form == "Unrecognized": continue
        except HeegaardError:
            continue
        stats["quality"] += 1
        p = presentation(d)
        oracle = WordOracle(p, Budget(max_coset_rows=2500))
        if oracle.group_order_if_finite() is not None: continue
        stats["infinite"] += 1
        h1 = homology_order(p)
        out.write(json.dumps({"n": n, "h1": h1, "text": d.to_text()}) + "\n")
        out.flush()
    print("DONE", stats, flush=True)

main()
