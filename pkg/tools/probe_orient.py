import json, sys, time
sys.path.insert(0, "src")
from heegaard2.diagram import HeegaardDiagram, orientation_variants
from heegaard2.groups import presentation, region_words, rebase, WordOracle, Budget, homology_order
from heegaard2.orders import search_positive_cone, minimal_region
from heegaard2.branched import (build_branched, trivial_sectors, delete_sectors,
    run_splitting, check_product_complement)
from heegaard2.errors import HeegaardError

def chain_once(d, depth=2, steps=1500):
    p = presentation(d)
    oracle = WordOracle(p, Budget(max_coset_rows=3000))
    cone = search_positive_cone(p, depth, oracle=oracle, node_budget=150000)
    lab = region_words(d, 0)
    m = minimal_region(lab, cone)
    lab = rebase(lab, m)
    b = build_branched(d, lab)
    rep = trivial_sectors(b, oracle)
    b0 = delete_sectors(b, rep.trivial_ids, oracle)
    pc = check_product_complement(b0)
    final, trace = run_splitting(b0, cone, steps=steps, seed=11, oracle=oracle)
    if trace.halted:
        raise HeegaardError("halted:" + str(trace.halt_reason))
    return {
        "h1": homology_order(p),
        "trivial": len(rep.trivial_ids),
        "unknown": len(rep.unknown_ids),
        "product": pc.is_product,
        "types": trace.type_counts,
        "skips": trace.undecided_skips,
    }

start = int(sys.argv[1]); stride = int(sys.argv[2]); budget = float(sys.argv[3])
rows = [json.loads(l) for l in open("tools/corpus_raw.jsonl")]
seen = set(); uniq = []
for r in rows:
    if r["text"] not in seen:
        seen.add(r["text"]); uniq.append(r)
cands = [r for r in uniq if r["kind"] == "minimal"]
cands.sort(key=lambda r: (-r["n"], r["text"]))
out = open(f"tools/orient_ok_{start}.jsonl", "w")
stats = {}
t0 = time.time()
for i in range(start, len(cands), stride):
    if time.time() - t0 > budget:
        break
    r = cands[i]
    d0 = HeegaardDiagram.parse(r["text"])
    p = presentation(d0)
    oracle = WordOracle(p, Budget(max_coset_rows=3000))
    if oracle.group_order_if_finite() is not None:
        stats["finite"] = stats.get("finite", 0) + 1
        continue
    got = None
    fails = {}
    for flips, dv in orientation_variants(d0):
        try:
            info = chain_once(dv)
            got = (flips, info)
            break
        except HeegaardError as e:
            key = getattr(e, "code", str(e)) or str(e)
            fails[str(key)] = fails.get(str(key), 0) + 1
        except Exception as e:
            fails["other:" + type(e).__name__] = fails.get("other:" + type(e).__name__, 0) + 1
    if got is None:
        stats["no_variant"] = stats.get("no_variant", 0) + 1
    else:
        stats["ok"] = stats.get("ok", 0) + 1
        out.write(json.dumps({"n": r["n"], "text": r["text"],
                              "flips": list(got[0]), **got[1]}) + "\n")
        out.flush()
    if (i - start) % (20 * stride) == 0:
        print(i, stats, f"{time.time()-t0:.0f}s", flush=True)
print("DONE", stats)
